//! Fusion rings: exact integer structure constants, axiom checks, and
//! Perron-Frobenius dimensions.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A simple object, identified by its position in the ring's label list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Label {
    pub index: usize,
    pub name: String,
}

/// A formal nonnegative combination of simple objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectVector(pub Vec<u32>);

impl ObjectVector {
    pub fn simple(rank: usize, index: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[index] = 1;
        ObjectVector(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// Grothendieck ring of a fusion category.
///
/// `N[i][j][k]` is stored sparsely: for every ordered pair `(i, j)` the
/// nonzero `(k, N[i][j][k])` entries, sorted by `k`. Label 0 is the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    names: Vec<String>,
    dual: Vec<usize>,
    offsets: Vec<usize>,
    entries: Vec<(u32, u32)>,
}

impl FusionRing {
    /// Builds a ring from a product rule. `products(i, j)` lists `(k, multiplicity)`
    /// pairs; repeated `k` are summed and zero multiplicities dropped.
    pub fn from_products<F>(names: Vec<String>, dual: Vec<usize>, mut products: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Vec<(usize, u32)>,
    {
        let rank = names.len();
        if rank == 0 {
            return Err(Error::Shape("a fusion ring needs at least one label".into()));
        }
        if dual.len() != rank {
            return Err(Error::Shape(format!("dual has length {} but rank is {rank}", dual.len())));
        }
        if let Some(&d) = dual.iter().find(|&&d| d >= rank) {
            return Err(Error::Shape(format!("dual label {d} out of range")));
        }
        let mut seen = HashMap::with_capacity(rank);
        for (i, name) in names.iter().enumerate() {
            if let Some(prev) = seen.insert(name.as_str(), i) {
                return Err(Error::Shape(format!("labels {prev} and {i} share the name `{name}`")));
            }
        }

        let mut offsets = Vec::with_capacity(rank * rank + 1);
        let mut entries: Vec<(u32, u32)> = Vec::new();
        offsets.push(0);
        for i in 0..rank {
            for j in 0..rank {
                let mut terms = products(i, j);
                terms.sort_unstable_by_key(|t| t.0);
                let start = entries.len();
                for (k, m) in terms {
                    if k >= rank {
                        return Err(Error::Shape(format!("product {i}x{j} names label {k} >= rank {rank}")));
                    }
                    if m == 0 {
                        continue;
                    }
                    match entries[start..].last_mut() {
                        Some((last, acc)) if *last as usize == k => {
                            *acc = acc.checked_add(m).ok_or(Error::Overflow)?;
                        }
                        _ => entries.push((k as u32, m)),
                    }
                }
                offsets.push(entries.len());
            }
        }
        Ok(FusionRing { names, dual, offsets, entries })
    }

    /// Builds a ring from a dense coefficient function.
    pub fn from_fn<F>(names: Vec<String>, dual: Vec<usize>, mut n: F) -> Result<Self>
    where
        F: FnMut(usize, usize, usize) -> u32,
    {
        let rank = names.len();
        Self::from_products(names, dual, |i, j| (0..rank).map(|k| (k, n(i, j, k))).collect())
    }

    /// The rank-one ring with only the unit.
    pub fn trivial() -> Self {
        Self::from_products(vec!["0".into()], vec![0], |_, _| vec![(0, 1)]).expect("trivial ring")
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn label(&self, i: usize) -> Label {
        Label { index: i, name: self.names[i].clone() }
    }

    pub fn labels(&self) -> Vec<Label> {
        (0..self.rank()).map(|i| self.label(i)).collect()
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    /// Nonzero `(k, N[i][j][k])` entries of `i x j`.
    pub fn product(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        let r = self.rank();
        let at = i * r + j;
        self.entries[self.offsets[at]..self.offsets[at + 1]].iter().map(|&(k, m)| (k as usize, m))
    }

    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.rank();
        let at = i * r + j;
        let slice = &self.entries[self.offsets[at]..self.offsets[at + 1]];
        match slice.binary_search_by_key(&(k as u32), |e| e.0) {
            Ok(pos) => slice[pos].1,
            Err(_) => 0,
        }
    }

    /// All nonzero entries as `(i, j, k, N[i][j][k])`, in lexicographic order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, u32)> {
        let r = self.rank();
        let mut out = Vec::with_capacity(self.entries.len());
        for i in 0..r {
            for j in 0..r {
                out.extend(self.product(i, j).map(|(k, m)| (i, j, k, m)));
            }
        }
        out
    }

    /// Returns a copy with different display names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.rank() {
            return Err(Error::Shape("renaming must keep the rank".into()));
        }
        Self::from_products(names, self.dual.clone(), |i, j| self.product(i, j).collect())
    }
}

/// Which fusion-ring axiom a violation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Unit,
    Associativity,
    Duality,
    Frobenius,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.axiom, self.witness)
    }
}

/// Checks unit, associativity, duality and Frobenius reciprocity exactly.
///
/// Each violated axiom is reported once with its first witness; an empty
/// vector means the ring is valid.
pub fn verify_fusion_ring(ring: &FusionRing) -> Vec<AxiomViolation> {
    let r = ring.rank();
    let mut out = Vec::new();

    'unit: for i in 0..r {
        for k in 0..r {
            let expect = u32::from(i == k);
            if ring.n(0, i, k) != expect || ring.n(i, 0, k) != expect {
                out.push(AxiomViolation {
                    axiom: Axiom::Unit,
                    witness: format!("unit x {i} or {i} x unit has coefficient at {k} != {expect}"),
                });
                break 'unit;
            }
        }
    }

    'assoc: for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let mut left = vec![0u128; r];
                for (m, a) in ring.product(i, j) {
                    for (l, b) in ring.product(m, k) {
                        left[l] += u128::from(a) * u128::from(b);
                    }
                }
                let mut right = vec![0u128; r];
                for (m, a) in ring.product(j, k) {
                    for (l, b) in ring.product(i, m) {
                        right[l] += u128::from(a) * u128::from(b);
                    }
                }
                if left != right {
                    out.push(AxiomViolation {
                        axiom: Axiom::Associativity,
                        witness: format!("({i} x {j}) x {k} != {i} x ({j} x {k})"),
                    });
                    break 'assoc;
                }
            }
        }
    }

    'dual: for i in 0..r {
        if ring.dual(ring.dual(i)) != i {
            out.push(AxiomViolation { axiom: Axiom::Duality, witness: format!("dual(dual({i})) != {i}") });
            break;
        }
        for j in 0..r {
            let expect = u32::from(j == ring.dual(i));
            if ring.n(i, j, 0) != expect {
                out.push(AxiomViolation {
                    axiom: Axiom::Duality,
                    witness: format!("N[{i}][{j}][0] = {} but dual({i}) = {}", ring.n(i, j, 0), ring.dual(i)),
                });
                break 'dual;
            }
        }
    }

    'frob: for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let a = ring.n(i, j, k);
                if a != ring.n(ring.dual(i), k, j) || a != ring.n(k, ring.dual(j), i) {
                    out.push(AxiomViolation {
                        axiom: Axiom::Frobenius,
                        witness: format!("N[{i}][{j}][{k}] breaks reciprocity"),
                    });
                    break 'frob;
                }
            }
        }
    }

    out
}

/// SU(2) level `k` fusion rules on labels `0..=k` (spin order).
pub fn su2_fusion(k: u32) -> FusionRing {
    let k = k as usize;
    let names = (0..=k).map(|i| i.to_string()).collect();
    FusionRing::from_products(names, (0..=k).collect(), |i, j| {
        let lo = i.abs_diff(j);
        let hi = (i + j).min(2 * k - i - j);
        (lo..=hi).step_by(2).map(|l| (l, 1)).collect()
    })
    .expect("su2 fusion rules are well formed")
}

const PF_THRESHOLD: f64 = 1e-12;
const PF_MAX_ITERATIONS: usize = 200_000;
const PF_TOLERANCE: f64 = 1e-9;

/// Perron-Frobenius dimensions, normalized so that `d[0] = 1`.
///
/// Power iteration on the fusion matrix of the sum of all simples, then a
/// per-object Rayleigh quotient on each `N_i`.
pub fn pf_dimensions(ring: &FusionRing) -> Result<Vec<f64>> {
    let r = ring.rank();
    let apply_sum = |v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; r];
        for (j, o) in out.iter_mut().enumerate() {
            for i in 0..r {
                for (k, m) in ring.product(i, j) {
                    *o += f64::from(m) * v[k];
                }
            }
        }
        out
    };

    let mut v = vec![1.0; r];
    let mut converged = false;
    for _ in 0..PF_MAX_ITERATIONS {
        let mut next = apply_sum(&v);
        let scale = next.iter().cloned().fold(0.0, f64::max);
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::NonConvergence { residual: f64::INFINITY });
        }
        next.iter_mut().for_each(|x| *x /= scale);
        let delta = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = next;
        if delta < PF_THRESHOLD {
            converged = true;
            break;
        }
    }
    if !converged || v[0] <= 0.0 {
        return Err(Error::NonConvergence { residual: f64::NAN });
    }
    let v0 = v[0];
    let d: Vec<f64> = v.iter().map(|x| x / v0).collect();
    let norm: f64 = d.iter().map(|x| x * x).sum();

    let mut refined = vec![0.0; r];
    for (i, out) in refined.iter_mut().enumerate() {
        let mut quotient = 0.0;
        for j in 0..r {
            let nd: f64 = ring.product(i, j).map(|(k, m)| f64::from(m) * d[k]).sum();
            quotient += d[j] * nd;
        }
        *out = quotient / norm;
    }
    refined[0] = 1.0;

    let mut residual: f64 = 0.0;
    for i in 0..r {
        for j in 0..r {
            let rhs: f64 = ring.product(i, j).map(|(k, m)| f64::from(m) * refined[k]).sum();
            let lhs = refined[i] * refined[j];
            residual = residual.max((lhs - rhs).abs() / lhs.max(1.0));
        }
    }
    if residual > PF_TOLERANCE || refined.iter().any(|&x| x <= 0.0) {
        return Err(Error::NonConvergence { residual });
    }
    Ok(refined)
}

/// `sum_i d_i^2` with Perron-Frobenius dimensions.
pub fn global_dimension(ring: &FusionRing) -> Result<f64> {
    Ok(pf_dimensions(ring)?.iter().map(|d| d * d).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn quantum_integer(n: usize, k: u32) -> f64 {
        let h = f64::from(k + 2);
        (n as f64 * PI / h).sin() / (PI / h).sin()
    }

    #[test]
    fn su2_level_two_spin_half_squared() {
        let ring = su2_fusion(2);
        let prod: Vec<_> = ring.product(1, 1).collect();
        assert_eq!(prod, vec![(0, 1), (2, 1)]);
    }

    #[test]
    fn unit_acts_trivially() {
        for k in 0..8 {
            let ring = su2_fusion(k);
            for j in 0..ring.rank() {
                assert_eq!(ring.product(0, j).collect::<Vec<_>>(), vec![(j, 1)]);
            }
        }
    }

    #[test]
    fn su2_level_ten_spin_three_squared_matches_enumeration() {
        // Oracle: test every l directly against the selection rules.
        let k = 10usize;
        let expected: Vec<(usize, u32)> =
            (0..=k).filter(|&l| l <= 12 && (6 + 6 + l) % 2 == 0 && 6 + 6 + l <= 2 * k).map(|l| (l, 1)).collect();
        let ring = su2_fusion(10);
        let prod: Vec<_> = ring.product(6, 6).collect();
        assert_eq!(prod, expected);
        assert_eq!(prod.len(), 5);
        assert_eq!(ring.n(6, 6, 8), 1);
        assert_eq!(ring.n(6, 6, 10), 0);
    }

    #[test]
    fn su2_rings_are_valid() {
        for k in 0..=16 {
            assert!(verify_fusion_ring(&su2_fusion(k)).is_empty(), "k = {k}");
        }
    }

    #[test]
    fn broken_unit_is_reported() {
        let good = su2_fusion(2);
        let broken = FusionRing::from_fn(good.names().to_vec(), good.duals().to_vec(), |i, j, k| {
            if (i, j, k) == (0, 1, 1) {
                0
            } else {
                good.n(i, j, k)
            }
        })
        .unwrap();
        let violations = verify_fusion_ring(&broken);
        assert!(violations.iter().any(|v| v.axiom == Axiom::Unit));
    }

    #[test]
    fn wrong_dual_is_reported() {
        let good = su2_fusion(3);
        let bad =
            FusionRing::from_products(good.names().to_vec(), vec![0, 2, 1, 3], |i, j| good.product(i, j).collect())
                .unwrap();
        assert!(verify_fusion_ring(&bad).iter().any(|v| v.axiom == Axiom::Duality));
    }

    #[test]
    fn rejects_out_of_range_products() {
        let err = FusionRing::from_products(vec!["0".into()], vec![0], |_, _| vec![(3, 1)]);
        assert!(matches!(err, Err(Error::Shape(_))));
        let dup = FusionRing::from_products(vec!["a".into(), "a".into()], vec![0, 1], |_, _| vec![]);
        assert!(matches!(dup, Err(Error::Shape(_))));
    }

    #[test]
    fn pf_dimensions_match_quantum_integers() {
        for k in 1..=16 {
            let d = pf_dimensions(&su2_fusion(k)).unwrap();
            assert_eq!(d[0], 1.0);
            for (i, di) in d.iter().enumerate() {
                assert!((di - quantum_integer(i + 1, k)).abs() < 1e-9, "k={k} i={i}");
            }
        }
        let d4 = pf_dimensions(&su2_fusion(4)).unwrap();
        assert!((d4[2] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn global_dimension_closed_form() {
        assert_eq!(global_dimension(&FusionRing::trivial()).unwrap(), 1.0);
        for k in 1..=16 {
            let h = f64::from(k + 2);
            let closed = h / (2.0 * (PI / h).sin().powi(2));
            assert!((global_dimension(&su2_fusion(k)).unwrap() - closed).abs() < 1e-9);
        }
        let d10 = global_dimension(&su2_fusion(10)).unwrap();
        assert!((d10 - (48.0 + 24.0 * 3f64.sqrt())).abs() < 1e-9);
    }
}
