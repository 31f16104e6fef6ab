//! Z2 simple currents: detection, monodromy charges, simple-current modular
//! invariants, and condensation to the category of local modules.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fusion::verify_fusion_ring;
use crate::modular::{gauss_sum, verify_modular, verlinde_from_s, CMatrix, ModularData, Sign, Tolerances};
use crate::phase::RationalPhase;
use crate::resolve::{resolve_fixed_points, PartialCondensate};

/// An invertible object `g` of order at most 2 together with its fusion action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleCurrent {
    pub label: usize,
    pub order: u32,
    /// `action[x]` is the unique simple in `g x x`.
    pub action: Vec<usize>,
}

impl SimpleCurrent {
    /// Validates that `label` is invertible with `g x g = 1` and records its action.
    pub fn new(md: &ModularData, label: usize) -> Result<Self> {
        let ring = md.ring();
        if label >= md.rank() {
            return Err(Error::NotInvertible(label));
        }
        if (md.dims()[label] - 1.0).abs() > 1e-9 || ring.n(label, label, 0) != 1 {
            return Err(Error::NotInvertible(label));
        }
        let mut action = Vec::with_capacity(md.rank());
        for x in 0..md.rank() {
            let mut terms = ring.product(label, x);
            match (terms.next(), terms.next()) {
                (Some((y, 1)), None) => action.push(y),
                _ => return Err(Error::NotInvertible(label)),
            }
        }
        let order = if label == 0 { 1 } else { 2 };
        Ok(SimpleCurrent { label, order, action })
    }

    /// Looks the current up by display name, falling back to a numeric index.
    pub fn by_name(md: &ModularData, name: &str) -> Result<Self> {
        let index = md
            .label_index(name)
            .or_else(|| name.trim().trim_start_matches('#').parse().ok().filter(|&i: &usize| i < md.rank()))
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))?;
        Self::new(md, index)
    }

    pub fn unit(md: &ModularData) -> Self {
        SimpleCurrent { label: 0, order: 1, action: (0..md.rank()).collect() }
    }

    pub fn is_unit(&self) -> bool {
        self.label == 0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.action[x]
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.action.len()).filter(|&x| self.action[x] == x).collect()
    }
}

/// All invertible objects with `g x g = 1`, the unit included.
pub fn invertibles(md: &ModularData) -> Vec<SimpleCurrent> {
    (0..md.rank()).filter_map(|g| SimpleCurrent::new(md, g).ok()).collect()
}

/// `theta_{gx} - theta_x - theta_g`.
pub fn monodromy_charge(md: &ModularData, g: &SimpleCurrent, x: usize) -> RationalPhase {
    md.twist(g.apply(x)) - md.twist(x) - md.twist(g.label)
}

pub fn is_boson(md: &ModularData, g: &SimpleCurrent) -> bool {
    md.twist(g.label).is_zero()
}

/// A nonnegative integer matrix indexed by the labels of some modular data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularInvariant {
    rank: usize,
    entries: Vec<u32>,
    pub source: String,
}

impl ModularInvariant {
    pub fn from_fn(rank: usize, source: impl Into<String>, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut entries = Vec::with_capacity(rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                entries.push(f(i, j));
            }
        }
        ModularInvariant { rank, entries, source: source.into() }
    }

    pub fn identity(rank: usize) -> Self {
        Self::from_fn(rank, "identity", |i, j| u32::from(i == j))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.rank).map(<[u32]>::to_vec).collect()
    }

    /// Nonzero `(i, j, Z_ij)` in row-major order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.entries.iter().enumerate().filter(|(_, &z)| z != 0).map(move |(p, &z)| (p / self.rank, p % self.rank, z))
    }

    /// Largest deviation of `[Z, S]` and `[Z, T]` from zero.
    pub fn commutator_deviation(&self, md: &ModularData) -> f64 {
        let r = self.rank;
        if md.rank() != r {
            return f64::INFINITY;
        }
        let s = md.s();
        let mut zs = CMatrix::zeros(r, r);
        let mut sz = CMatrix::zeros(r, r);
        let t = md.t_diagonal();
        let mut t_dev: f64 = 0.0;
        for (i, k, z) in self.nonzero() {
            let z = f64::from(z);
            for j in 0..r {
                zs[(i, j)] += s[(k, j)] * z;
                sz[(j, k)] += s[(j, i)] * z;
            }
            t_dev = t_dev.max(z * (t[i] - t[k]).norm());
        }
        let s_dev = (zs - sz).iter().map(|c| c.norm()).fold(0.0, f64::max);
        s_dev.max(t_dev)
    }

    /// Checks `Z[0][0] = 1` and commutation with `S` and `T` within `tol`.
    pub fn verify(&self, md: &ModularData, tol: f64) -> Result<f64> {
        let deviation = self.commutator_deviation(md);
        if self.rank == 0 || self.get(0, 0) != 1 || deviation.is_nan() || deviation > tol {
            return Err(Error::InvariantNotModular { deviation });
        }
        Ok(deviation)
    }
}

/// `Z_ij = (1 + theta_{gi} / theta_i) / 2 * (delta_{i,j} + delta_{gi,j})` for a bosonic current.
pub fn simple_current_invariant(md: &ModularData, g: &SimpleCurrent, tol: &Tolerances) -> Result<ModularInvariant> {
    if !is_boson(md, g) {
        return Err(Error::NotBoson { label: g.label, twist: md.twist(g.label).to_string() });
    }
    let r = md.rank();
    let mut factors = Vec::with_capacity(r);
    for i in 0..r {
        let charge = monodromy_charge(md, g, i);
        let factor = if charge.is_zero() {
            1
        } else if charge == RationalPhase::new(1, 2) {
            0
        } else {
            return Err(Error::NonIntegralInvariant { i, j: g.apply(i) });
        };
        factors.push(factor);
    }
    let source = format!("simple current {} ({})", md.names()[g.label], g.label);
    let z = ModularInvariant::from_fn(r, source, |i, j| factors[i] * (u32::from(i == j) + u32::from(g.apply(i) == j)));
    z.verify(md, tol.report)?;
    Ok(z)
}

/// `(tr Z, sum_ij Z_ij^2)`.
pub fn sector_counts(z: &ModularInvariant) -> (u64, u64) {
    let trace = (0..z.rank()).map(|i| u64::from(z.get(i, i))).sum();
    let squares = z.nonzero().map(|(_, _, v)| u64::from(v) * u64::from(v)).sum();
    (trace, squares)
}

/// A simple object of the condensed theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CondensedLabel {
    /// Free orbit `{rep, g rep}` with `rep < g rep`.
    Orbit { rep: usize, image: usize },
    /// One of the two summands of a fixed point.
    Split { fixed: usize, plus: bool },
}

#[derive(Debug, Clone)]
pub struct CondensationResult {
    pub current: SimpleCurrent,
    pub free_orbits: Vec<(usize, usize)>,
    pub fixed_points: Vec<usize>,
    pub excluded: Vec<usize>,
    pub labels: Vec<CondensedLabel>,
    /// Modular candidates in canonical order (lexicographically smallest `S` first).
    pub condensed: Vec<ModularData>,
}

impl CondensationResult {
    pub fn selected(&self) -> &ModularData {
        &self.condensed[0]
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }
}

/// Condenses the boson `g`: keeps the charge-zero labels, identifies free
/// orbits, splits fixed points and resolves the split block of `S`.
pub fn condense_z2(md: &ModularData, g: &SimpleCurrent, tol: &Tolerances) -> Result<CondensationResult> {
    if !is_boson(md, g) {
        return Err(Error::NotBoson { label: g.label, twist: md.twist(g.label).to_string() });
    }
    if g.is_unit() {
        return Err(Error::InvalidParameter("condensing the unit is the identity; choose a nontrivial current".into()));
    }
    let r = md.rank();
    let mut free_orbits = Vec::new();
    let mut fixed_points = Vec::new();
    let mut excluded = Vec::new();
    let mut labels = Vec::new();
    for x in 0..r {
        if !monodromy_charge(md, g, x).is_zero() {
            excluded.push(x);
            continue;
        }
        let gx = g.apply(x);
        match x.cmp(&gx) {
            Ordering::Less => {
                free_orbits.push((x, gx));
                labels.push(CondensedLabel::Orbit { rep: x, image: gx });
            }
            Ordering::Equal => {
                fixed_points.push(x);
                labels.push(CondensedLabel::Split { fixed: x, plus: true });
                labels.push(CondensedLabel::Split { fixed: x, plus: false });
            }
            Ordering::Greater => {}
        }
    }

    let base_of = |l: &CondensedLabel| match *l {
        CondensedLabel::Orbit { rep, .. } => rep,
        CondensedLabel::Split { fixed, .. } => fixed,
    };
    let rc = labels.len();
    let s = md.s();
    let partial_s = CMatrix::from_fn(rc, rc, |a, b| {
        let (la, lb) = (&labels[a], &labels[b]);
        let entry = s[(base_of(la), base_of(lb))];
        match (la, lb) {
            (CondensedLabel::Orbit { .. }, CondensedLabel::Orbit { .. }) => entry * 2.0,
            (CondensedLabel::Split { .. }, CondensedLabel::Split { .. }) => entry * 0.5,
            _ => entry,
        }
    });
    let twists: Vec<RationalPhase> = labels.iter().map(|l| md.twist(base_of(l))).collect();
    let dims: Vec<f64> = labels
        .iter()
        .map(|l| match *l {
            CondensedLabel::Orbit { rep, .. } => md.dims()[rep],
            CondensedLabel::Split { fixed, .. } => md.dims()[fixed] / 2.0,
        })
        .collect();
    let names: Vec<String> = labels
        .iter()
        .map(|l| match *l {
            CondensedLabel::Orbit { rep, .. } => format!("[{}]", md.names()[rep]),
            CondensedLabel::Split { fixed, plus } => {
                format!("[{}]{}", md.names()[fixed], if plus { "+" } else { "-" })
            }
        })
        .collect();
    let splits = (0..rc)
        .filter(|&a| matches!(labels[a], CondensedLabel::Split { plus: true, .. }))
        .map(|a| (a, a + 1))
        .collect();

    let g_sum = gauss_sum(md, Sign::Plus);
    let partial = PartialCondensate {
        s: partial_s,
        twists: twists.iter().map(RationalPhase::to_complex).collect(),
        splits,
        phase: g_sum / g_sum.norm(),
    };
    let completions = resolve_fixed_points(&partial, tol)?;

    let mut condensed = Vec::new();
    for s_full in completions {
        let Ok(ring) = verlinde_from_s(&s_full, &names, tol.verlinde) else { continue };
        if !verify_fusion_ring(&ring).is_empty() {
            continue;
        }
        let candidate = ModularData::from_parts(ring, s_full, twists.clone(), dims.clone())?;
        if verify_modular(&candidate, tol).all_passed() {
            condensed.push(candidate);
        }
    }
    if condensed.is_empty() {
        return Err(Error::NoResolution);
    }
    condensed.sort_by_cached_key(|m| canonical_key(m.s()));

    Ok(CondensationResult { current: g.clone(), free_orbits, fixed_points, excluded, labels, condensed })
}

/// Row-major entries rounded to 1e-10, for deterministic candidate ordering.
fn canonical_key(s: &CMatrix) -> Vec<(i64, i64)> {
    let round = |x: f64| (x * 1e10).round() as i64;
    let mut key = Vec::with_capacity(s.len());
    for i in 0..s.nrows() {
        for j in 0..s.ncols() {
            let z: Complex64 = s[(i, j)];
            key.push((round(z.re), round(z.im)));
        }
    }
    key
}
