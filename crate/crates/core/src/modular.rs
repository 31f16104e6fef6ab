//! Modular data `(fusion ring, S, T)` and the operations on it: Verlinde
//! fusion, the balancing identity, Gauss sums and central charge, reversed
//! braiding, Deligne products and the modularity axiom suite.
//!
//! Conventions: `T = diag(exp(2 pi i theta))` and the modular relation is
//! `(S T)^3 = exp(2 pi i c / 8) S^2`, with `c` read off the Gauss sum
//! `sum_i d_i^2 theta_i`. The balancing identity consistent with these is
//! `S_ij = D^-1 sum_k N[dual i][j][k] theta_i theta_j / theta_k d_k`.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::fusion::{pf_dimensions, FusionRing};
use crate::phase::RationalPhase;

pub type CMatrix = DMatrix<Complex64>;

/// Numerical guards. Defaults: 1e-6 for Verlinde rounding, 1e-9 for exact
/// linear-algebra identities, 1e-8 for the verification report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub verlinde: f64,
    pub identity: f64,
    pub report: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { verlinde: 1e-6, identity: 1e-9, report: 1e-8 }
    }
}

/// Fusion ring together with its S-matrix, exact twists and dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularData {
    ring: FusionRing,
    s: CMatrix,
    twists: Vec<RationalPhase>,
    dims: Vec<f64>,
    total_dim: f64,
}

impl ModularData {
    /// Assembles modular data without verifying it (see [`verify_modular`]).
    pub fn from_parts(ring: FusionRing, s: CMatrix, twists: Vec<RationalPhase>, dims: Vec<f64>) -> Result<Self> {
        let r = ring.rank();
        if s.nrows() != r || s.ncols() != r {
            return Err(Error::Shape(format!("S is {}x{} but rank is {r}", s.nrows(), s.ncols())));
        }
        if twists.len() != r || dims.len() != r {
            return Err(Error::Shape("twists and dims must have one entry per label".into()));
        }
        let total_dim = dims.iter().map(|d| d * d).sum::<f64>().sqrt();
        Ok(ModularData { ring, s, twists, dims, total_dim })
    }

    /// Like [`from_parts`](Self::from_parts), reading dimensions off the first row of `S`.
    pub fn from_s(ring: FusionRing, s: CMatrix, twists: Vec<RationalPhase>) -> Result<Self> {
        let s00 = s[(0, 0)].re;
        if s00 <= 0.0 {
            return Err(Error::Shape("S[0][0] must be positive".into()));
        }
        let dims = (0..s.ncols()).map(|j| s[(0, j)].re / s00).collect();
        Self::from_parts(ring, s, twists, dims)
    }

    pub fn trivial() -> Self {
        Self::from_parts(
            FusionRing::trivial(),
            CMatrix::from_element(1, 1, Complex64::new(1.0, 0.0)),
            vec![RationalPhase::zero()],
            vec![1.0],
        )
        .expect("trivial data")
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn s(&self) -> &CMatrix {
        &self.s
    }

    pub fn twists(&self) -> &[RationalPhase] {
        &self.twists
    }

    pub fn twist(&self, i: usize) -> RationalPhase {
        self.twists[i]
    }

    pub fn dims(&self) -> &[f64] {
        &self.dims
    }

    /// `D = sqrt(sum d_i^2)`.
    pub fn total_dim(&self) -> f64 {
        self.total_dim
    }

    pub fn global_dimension(&self) -> f64 {
        self.total_dim * self.total_dim
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn names(&self) -> &[String] {
        self.ring.names()
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.ring.label_index(name)
    }

    /// Diagonal of `T`.
    pub fn t_diagonal(&self) -> Vec<Complex64> {
        self.twists.iter().map(RationalPhase::to_complex).collect()
    }

    pub fn t_matrix(&self) -> CMatrix {
        CMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.t_diagonal()))
    }

    /// Same data under new display names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        Ok(ModularData { ring: self.ring.renamed(names)?, ..self.clone() })
    }
}

/// Fusion ring from `S` by the Verlinde formula, rounded with guard `guard`.
pub fn verlinde(md: &ModularData, guard: f64) -> Result<FusionRing> {
    verlinde_from_s(md.s(), md.names(), guard)
}

/// Verlinde formula on a bare S-matrix; `names` label the result.
pub fn verlinde_from_s(s: &CMatrix, names: &[String], guard: f64) -> Result<FusionRing> {
    let r = s.nrows();
    if names.len() != r {
        return Err(Error::Shape("one name per row of S required".into()));
    }
    let sums = VerlindeSums::new(s)?;
    let mut table = vec![0u32; r * r * r];
    for i in 0..r {
        let slice = sums.slice(i);
        for j in 0..r {
            for k in 0..r {
                let z = slice[(j, k)];
                let rounded = z.re.round();
                if (z.re - rounded).abs() > guard || z.im.abs() > guard {
                    return Err(Error::NonIntegral { i, j, k, value: z.re });
                }
                if rounded < 0.0 {
                    return Err(Error::NegativeCoefficient { i, j, k, value: z.re });
                }
                if rounded > f64::from(u32::MAX) {
                    return Err(Error::Overflow);
                }
                table[(i * r + j) * r + k] = rounded as u32;
            }
        }
    }
    let dual = (0..r).map(|i| (0..r).find(|&j| table[(i * r + j) * r] == 1).unwrap_or(i)).collect();
    FusionRing::from_fn(names.to_vec(), dual, |i, j, k| table[(i * r + j) * r + k])
}

/// Unrounded Verlinde sums for a fixed first label `i`: entry `(j, k)` is
/// `sum_m S_im S_jm conj(S_km) / S_0m`.
struct VerlindeSums<'a> {
    s: &'a CMatrix,
    adjoint: CMatrix,
}

impl<'a> VerlindeSums<'a> {
    fn new(s: &'a CMatrix) -> Result<Self> {
        if (0..s.nrows()).any(|m| s[(0, m)].norm() < 1e-300) {
            return Err(Error::Shape("S has a vanishing entry in its first row".into()));
        }
        Ok(VerlindeSums { s, adjoint: s.adjoint() })
    }

    fn slice(&self, i: usize) -> CMatrix {
        let s = self.s;
        let mut scaled = s.clone();
        for m in 0..s.ncols() {
            let c = s[(i, m)] / s[(0, m)];
            scaled.column_mut(m).iter_mut().for_each(|z| *z *= c);
        }
        &scaled * &self.adjoint
    }
}

/// S-matrix determined by the fusion rules and twists through the balancing
/// identity, using Perron-Frobenius dimensions.
pub fn s_from_fusion_and_twists(ring: &FusionRing, twists: &[RationalPhase]) -> Result<CMatrix> {
    if twists.len() != ring.rank() {
        return Err(Error::Shape("one twist per label required".into()));
    }
    let dims = pf_dimensions(ring)?;
    Ok(balancing_matrix(ring, twists, &dims))
}

pub(crate) fn balancing_matrix(ring: &FusionRing, twists: &[RationalPhase], dims: &[f64]) -> CMatrix {
    let r = ring.rank();
    let total = dims.iter().map(|d| d * d).sum::<f64>().sqrt();
    CMatrix::from_fn(r, r, |i, j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, m) in ring.product(i, j) {
            let phase = twists[i] + twists[j] - twists[k];
            acc += phase.to_complex() * (f64::from(m) * dims[k]);
        }
        acc / total
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `sum_i d_i^2 exp(+-2 pi i theta_i)`.
pub fn gauss_sum(md: &ModularData, sign: Sign) -> Complex64 {
    md.twists()
        .iter()
        .zip(md.dims())
        .map(|(t, d)| {
            let z = t.to_complex();
            let z = if sign == Sign::Plus { z } else { z.conj() };
            z * (d * d)
        })
        .sum()
}

/// Largest denominator used when recognizing `c` as a rational number.
pub const CENTRAL_CHARGE_MAX_DENOMINATOR: i64 = 240;

/// Central charge modulo 8.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralCharge {
    /// `c / 8` as a phase.
    pub c_over_8: RationalPhase,
    /// Real representative of `c` in `[0, 8)` taken from the Gauss sum.
    pub value: f64,
}

impl CentralCharge {
    /// Exact representative of `c` in `[0, 8)`.
    pub fn rational(&self) -> Rational64 {
        self.c_over_8.as_ratio() * 8
    }

    /// Distance of `c` from `0 mod 8`.
    pub fn distance_from_zero(&self) -> f64 {
        self.value.min(8.0 - self.value)
    }
}

impl fmt::Display for CentralCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.rational();
        if *c.denom() == 1 {
            write!(f, "{}", c.numer())
        } else {
            write!(f, "{}/{}", c.numer(), c.denom())
        }
    }
}

/// `c mod 8` with `exp(2 pi i c / 8) = gauss_sum(+) / D`.
pub fn central_charge_mod8(md: &ModularData) -> Result<CentralCharge> {
    let tol = Tolerances::default().identity;
    let g = gauss_sum(md, Sign::Plus);
    let total = md.total_dim();
    if (g.norm() - total).abs() > tol * total.max(1.0) {
        return Err(Error::NonModular { gauss: g.norm(), total });
    }
    let turns = (g.arg() / (2.0 * std::f64::consts::PI)).rem_euclid(1.0);
    let value = (8.0 * turns).rem_euclid(8.0);

    let mut found: Vec<Rational64> = Vec::new();
    for q in 1..=CENTRAL_CHARGE_MAX_DENOMINATOR {
        for shift in [0.0, 8.0] {
            let x = value - shift;
            let p = (x * q as f64).round() as i64;
            if (x - p as f64 / q as f64).abs() < tol {
                let c = Rational64::new(p.mod_floor(&(8 * q)), q);
                if !found.contains(&c) {
                    found.push(c);
                }
            }
        }
    }
    match found.len() {
        0 => Err(Error::NoRationalMatch { value, max_denominator: CENTRAL_CHARGE_MAX_DENOMINATOR as u64 }),
        1 => {
            let value = if value > 8.0 - tol { value - 8.0 } else { value };
            Ok(CentralCharge { c_over_8: RationalPhase::from_ratio(found[0] / 8), value: value.max(0.0) })
        }
        _ => Err(Error::AmbiguousCentralCharge { value, candidates: found.iter().map(|c| c.to_string()).collect() }),
    }
}

/// Opposite braiding: conjugate `S`, negate twists.
pub fn reverse(md: &ModularData) -> ModularData {
    ModularData {
        ring: md.ring.clone(),
        s: md.s.map(|z| z.conj()),
        twists: md.twists.iter().map(|t| -*t).collect(),
        dims: md.dims.clone(),
        total_dim: md.total_dim,
    }
}

/// Deligne product; label `(i, j)` sits at index `i * rank(b) + j` and is named `"{a_i},{b_j}"`.
pub fn deligne_product(a: &ModularData, b: &ModularData) -> Result<ModularData> {
    let (ra, rb) = (a.rank(), b.rank());
    let names = a.names().iter().flat_map(|x| b.names().iter().map(move |y| format!("{x},{y}"))).collect();
    let dual = (0..ra * rb).map(|p| a.ring.dual(p / rb) * rb + b.ring.dual(p % rb)).collect();
    let mut overflow = false;
    let ring = FusionRing::from_products(names, dual, |p, q| {
        let (i1, i2) = (p / rb, p % rb);
        let (j1, j2) = (q / rb, q % rb);
        let mut out = Vec::new();
        for (k1, m1) in a.ring.product(i1, j1) {
            for (k2, m2) in b.ring.product(i2, j2) {
                match m1.checked_mul(m2) {
                    Some(m) => out.push((k1 * rb + k2, m)),
                    None => overflow = true,
                }
            }
        }
        out
    })?;
    if overflow {
        return Err(Error::Overflow);
    }
    let s = a.s.kronecker(&b.s);
    let twists = (0..ra * rb).map(|p| a.twists[p / rb] + b.twists[p % rb]).collect();
    let dims = (0..ra * rb).map(|p| a.dims[p / rb] * b.dims[p % rb]).collect();
    ModularData::from_parts(ring, s, twists, dims)
}

/// One named check with its worst deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Check { name: name.into(), passed: deviation.is_finite() && deviation <= tolerance, deviation, tolerance }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.deviation).fold(0.0, f64::max)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:<20} {:<4} deviation {:.3e} (tolerance {:.0e})",
                c.name,
                if c.passed { "ok" } else { "FAIL" },
                c.deviation,
                c.tolerance
            )?;
        }
        Ok(())
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Runs the full modularity axiom suite. Never fails; failures are data.
pub fn verify_modular(md: &ModularData, tol: &Tolerances) -> VerificationReport {
    let r = md.rank();
    let s = md.s();
    let mut checks = Vec::new();

    checks.push(Check::new("s_symmetric", max_abs(&(s - s.transpose())), tol.report));

    let id = CMatrix::identity(r, r);
    checks.push(Check::new("s_unitary", max_abs(&(s * s.adjoint() - &id)), tol.report));

    let s2 = s * s;
    let charge = CMatrix::from_fn(r, r, |i, j| Complex64::new(if md.ring().dual(i) == j { 1.0 } else { 0.0 }, 0.0));
    checks.push(Check::new("charge_conjugation", max_abs(&(&s2 - &charge)), tol.report));

    let g = gauss_sum(md, Sign::Plus);
    let modular_dev = if g.norm() < 1e-12 {
        f64::INFINITY
    } else {
        let p = g / g.norm();
        let st = s * md.t_matrix();
        let st3 = &st * &st * &st;
        max_abs(&(st3 - s2.map(|z| z * p)))
    };
    checks.push(Check::new("modular_relation", modular_dev, tol.report));

    let total = md.total_dim();
    let first_row = (0..r)
        .map(|j| {
            let z = s[(0, j)];
            if z.re <= 0.0 || md.dims()[j] <= 0.0 {
                f64::INFINITY
            } else {
                (z - Complex64::new(md.dims()[j] / total, 0.0)).norm()
            }
        })
        .fold(0.0, f64::max);
    checks.push(Check::new("first_row", first_row, tol.report));

    let t0 = md.twist(0).turns();
    checks.push(Check::new("unit_twist", t0.min(1.0 - t0), tol.report));

    let verlinde_dev = match VerlindeSums::new(s) {
        Ok(sums) => {
            let mut dev: f64 = 0.0;
            for i in 0..r {
                let ci = sums.slice(i);
                for j in 0..r {
                    for k in 0..r {
                        let exact = f64::from(md.ring().n(i, j, k));
                        dev = dev.max((ci[(j, k)] - Complex64::new(exact, 0.0)).norm());
                    }
                }
            }
            dev
        }
        Err(_) => f64::INFINITY,
    };
    checks.push(Check::new("verlinde", verlinde_dev, tol.verlinde));

    let balancing = balancing_matrix(md.ring(), md.twists(), md.dims());
    checks.push(Check::new("balancing", max_abs(&(s - balancing)), tol.report));

    VerificationReport { checks }
}

/// Finds a label bijection `pi` with `b` at `pi[i]` matching `a` at `i`:
/// equal twists, dimensions and S-entries within `tol`. The unit maps to the unit.
pub fn find_label_bijection(a: &ModularData, b: &ModularData, tol: f64) -> Option<Vec<usize>> {
    let r = a.rank();
    if b.rank() != r {
        return None;
    }
    let compatible = |i: usize, j: usize| a.twist(i) == b.twist(j) && (a.dims()[i] - b.dims()[j]).abs() <= tol;
    let mut assignment: Vec<usize> = Vec::with_capacity(r);
    let mut used = vec![false; r];

    fn extend(
        a: &ModularData,
        b: &ModularData,
        tol: f64,
        assignment: &mut Vec<usize>,
        used: &mut [bool],
        compatible: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let i = assignment.len();
        if i == a.rank() {
            return true;
        }
        let candidates: Vec<usize> = if i == 0 { vec![0] } else { (0..b.rank()).collect() };
        for j in candidates {
            if used[j] || !compatible(i, j) {
                continue;
            }
            if (a.s()[(i, i)] - b.s()[(j, j)]).norm() > tol {
                continue;
            }
            let consistent =
                assignment.iter().enumerate().all(|(i2, &j2)| (a.s()[(i, i2)] - b.s()[(j, j2)]).norm() <= tol);
            if !consistent {
                continue;
            }
            used[j] = true;
            assignment.push(j);
            if extend(a, b, tol, assignment, used, compatible) {
                return true;
            }
            assignment.pop();
            used[j] = false;
        }
        false
    }

    if extend(a, b, tol, &mut assignment, &mut used, &compatible) {
        Some(assignment)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{fibonacci, ising_like, su2, FibonacciVariant};
    use crate::fusion::su2_fusion;

    #[test]
    fn verlinde_recovers_su2_fusion() {
        for k in 1..=16 {
            let ring = verlinde(&su2(k).unwrap(), 1e-6).unwrap();
            assert_eq!(ring, su2_fusion(k), "k = {k}");
        }
    }

    #[test]
    fn verlinde_on_trivial_data() {
        assert_eq!(verlinde(&ModularData::trivial(), 1e-6).unwrap(), FusionRing::trivial());
    }

    #[test]
    fn verlinde_gives_ising_rules() {
        let ring = verlinde(&ising_like(11).unwrap(), 1e-6).unwrap();
        assert_eq!(ring.product(1, 1).collect::<Vec<_>>(), vec![(0, 1), (2, 1)]);
        assert_eq!(ring.product(2, 2).collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(ring.product(2, 1).collect::<Vec<_>>(), vec![(1, 1)]);
    }

    #[test]
    fn verlinde_rejects_inconsistent_s() {
        let md = su2(3).unwrap();
        let mut s = md.s().clone();
        s[(1, 2)] *= 0.9;
        s[(2, 1)] *= 0.9;
        let bad = ModularData::from_parts(md.ring().clone(), s, md.twists().to_vec(), md.dims().to_vec()).unwrap();
        assert!(matches!(verlinde(&bad, 1e-6), Err(Error::NonIntegral { .. })));
    }

    #[test]
    fn balancing_reproduces_catalog_s() {
        let md = su2(10).unwrap();
        let s = s_from_fusion_and_twists(md.ring(), md.twists()).unwrap();
        assert!(max_abs(&(s - md.s())) < 1e-9);

        let ising = ising_like(11).unwrap();
        let s = s_from_fusion_and_twists(ising.ring(), ising.twists()).unwrap();
        assert!(max_abs(&(s - ising.s())) < 1e-9);

        let s = s_from_fusion_and_twists(&FusionRing::trivial(), &[RationalPhase::zero()]).unwrap();
        assert!((s[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn gauss_sums() {
        let md = su2(10).unwrap();
        let g = gauss_sum(&md, Sign::Plus) / md.total_dim();
        let expected = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 2.5 / 8.0);
        assert!((g - expected).norm() < 1e-12);

        assert_eq!(gauss_sum(&ModularData::trivial(), Sign::Plus), Complex64::new(1.0, 0.0));

        // 1 + 2 e^{2 pi i 11/16} + 1 * (-1)
        let ising = ising_like(11).unwrap();
        let expected = Complex64::from_polar(2.0, 2.0 * std::f64::consts::PI * 11.0 / 16.0);
        assert!((gauss_sum(&ising, Sign::Plus) - expected).norm() < 1e-12);
    }

    #[test]
    fn central_charges() {
        for k in 1..=16u32 {
            let c = central_charge_mod8(&su2(k).unwrap()).unwrap();
            assert_eq!(c.rational(), Rational64::new(3 * i64::from(k), i64::from(k) + 2));
        }
        let prod = deligne_product(&su2(10).unwrap(), &ising_like(11).unwrap()).unwrap();
        let c = central_charge_mod8(&prod).unwrap();
        assert_eq!(c.rational(), Rational64::from_integer(0));
        assert!(c.distance_from_zero() < 1e-9);
        assert_eq!(central_charge_mod8(&ModularData::trivial()).unwrap().rational(), Rational64::from_integer(0));
        let big = deligne_product(&su2(28).unwrap(), &fibonacci(FibonacciVariant::F4)).unwrap();
        assert_eq!(central_charge_mod8(&big).unwrap().rational(), Rational64::from_integer(0));
    }

    #[test]
    fn reverse_is_an_involution() {
        let md = su2(10).unwrap();
        assert_eq!(reverse(&reverse(&md)), md);
        let c = central_charge_mod8(&reverse(&md)).unwrap();
        assert_eq!(c.rational(), Rational64::new(11, 2));
        assert_eq!(verlinde(&reverse(&md), 1e-6).unwrap(), *md.ring());
    }

    #[test]
    fn deligne_product_shapes() {
        let prod = deligne_product(&su2(10).unwrap(), &ising_like(11).unwrap()).unwrap();
        assert_eq!(prod.rank(), 33);
        assert_eq!(prod.names()[3 * 5 + 1], "5,1");
        let md = su2(3).unwrap();
        let with_unit = deligne_product(&md, &ModularData::trivial()).unwrap();
        assert_eq!(with_unit.s(), md.s());
        assert_eq!(with_unit.twists(), md.twists());
        assert_eq!(with_unit.ring().nonzero_entries(), md.ring().nonzero_entries());
    }

    #[test]
    fn verify_modular_accepts_catalog() {
        let tol = Tolerances::default();
        for k in 1..=16 {
            let report = verify_modular(&su2(k).unwrap(), &tol);
            assert!(report.all_passed(), "k = {k}\n{report}");
        }
        let md = su2(10).unwrap();
        let double = deligne_product(&md, &reverse(&md)).unwrap();
        assert!(verify_modular(&double, &tol).all_passed());
    }

    #[test]
    fn perturbed_twist_breaks_modular_relation() {
        let md = su2(5).unwrap();
        let mut twists = md.twists().to_vec();
        twists[2] += RationalPhase::new(1, 1000);
        let bad = ModularData::from_parts(md.ring().clone(), md.s().clone(), twists, md.dims().to_vec()).unwrap();
        let report = verify_modular(&bad, &Tolerances::default());
        assert!(!report.get("modular_relation").unwrap().passed);
    }

    #[test]
    fn bijection_finds_relabeling() {
        let md = deligne_product(&su2(2).unwrap(), &su2(3).unwrap()).unwrap();
        let swapped = deligne_product(&su2(3).unwrap(), &su2(2).unwrap()).unwrap();
        let pi = find_label_bijection(&md, &swapped, 1e-9).unwrap();
        assert_eq!(pi[0], 0);
        assert_eq!(pi[1], 3);
        assert!(find_label_bijection(&md, &reverse(&swapped), 1e-9).is_none());
    }
}
