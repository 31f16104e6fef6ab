//! Completion of the split block of a condensed `S` matrix.
//!
//! For fixed points `f, h` the split entries take the form
//! `S'[f e, h e'] = S_fh / 2 + e e' gamma_fh` with signs `e, e'`. The
//! symmetric matrix `gamma` is found by Levenberg-Marquardt from several
//! starting points, constrained by unitarity and the modular relation
//! `S T S = p conj(T) S conj(T)` on the split rows.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modular::{CMatrix, Tolerances};

pub const MAX_FIXED_POINTS: usize = 4;
const MAX_STARTS: usize = 256;
const MAX_ITERATIONS: usize = 200;
const ACCEPT: f64 = 1e-10;

/// Condensed data whose split block still lacks the fixed-point correction.
#[derive(Debug, Clone)]
pub struct PartialCondensate {
    /// Split-split entries hold `S_fh / 2`; everything else is final.
    pub s: CMatrix,
    pub twists: Vec<Complex64>,
    /// `(plus, minus)` row indices for every fixed point.
    pub splits: Vec<(usize, usize)>,
    /// `p = gauss / |gauss|` of the parent theory.
    pub phase: Complex64,
}

impl PartialCondensate {
    fn pairs(&self) -> Vec<(usize, usize)> {
        let f = self.splits.len();
        (0..f).flat_map(|a| (a..f).map(move |b| (a, b))).collect()
    }

    fn complete(&self, pairs: &[(usize, usize)], x: &[f64]) -> CMatrix {
        let mut s = self.s.clone();
        for (p, &(a, b)) in pairs.iter().enumerate() {
            let gamma = Complex64::new(x[2 * p], x[2 * p + 1]);
            let (fa, fb) = (self.splits[a], self.splits[b]);
            for (ra, ea) in [(fa.0, 1.0), (fa.1, -1.0)] {
                for (rb, eb) in [(fb.0, 1.0), (fb.1, -1.0)] {
                    s[(ra, rb)] += gamma * (ea * eb);
                    if a != b {
                        s[(rb, ra)] += gamma * (ea * eb);
                    }
                }
            }
        }
        s
    }

    fn residuals(&self, pairs: &[(usize, usize)], x: &[f64]) -> Vec<f64> {
        let s = self.complete(pairs, x);
        let n = s.nrows();
        let t = &self.twists;
        let rows: Vec<usize> = self.splits.iter().flat_map(|&(p, m)| [p, m]).collect();
        let mut out = Vec::with_capacity(rows.len() * n * 4);
        for &a in &rows {
            for b in 0..n {
                let mut unit = Complex64::new(if a == b { -1.0 } else { 0.0 }, 0.0);
                let mut sts = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    unit += s[(a, k)] * s[(b, k)].conj();
                    sts += s[(a, k)] * t[k] * s[(k, b)];
                }
                let rhs = self.phase * t[a].conj() * s[(a, b)] * t[b].conj();
                let rel = sts - rhs;
                out.extend([unit.re, unit.im, rel.re, rel.im]);
            }
        }
        out
    }

    fn starts(&self, pairs: &[(usize, usize)]) -> Vec<Vec<f64>> {
        let f = self.splits.len();
        let m = pairs.len();
        let base = |a: usize, b: usize| self.s[(self.splits[a].0, self.splits[b].0)].norm();
        let diagonal: Vec<f64> = pairs.iter().map(|&(a, b)| if a == b { 0.5 } else { 0.0 }).collect();
        let uniform = vec![0.5 / (f as f64).sqrt(); m];
        let mut proportional: Vec<f64> = pairs.iter().map(|&(a, b)| base(a, b)).collect();
        let frob: f64 =
            pairs.iter().zip(&proportional).map(|(&(a, b), v)| if a == b { v * v } else { 2.0 * v * v }).sum();
        if frob > 0.0 {
            let scale = ((f as f64) / 4.0 / frob).sqrt();
            proportional.iter_mut().for_each(|v| *v *= scale);
        }
        let patterns = [diagonal, uniform, proportional];
        let units =
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)];
        let total = 4usize.pow(m as u32);
        let per_pattern = total.min(MAX_STARTS / patterns.len());
        let stride = (total / per_pattern).max(1);
        let mut starts = Vec::new();
        for pattern in &patterns {
            for c in 0..per_pattern {
                let mut code = c * stride;
                let mut x = Vec::with_capacity(2 * m);
                for &mag in pattern {
                    let z = units[code % 4] * mag;
                    code /= 4;
                    x.extend([z.re, z.im]);
                }
                starts.push(x);
            }
        }
        starts
    }

    fn solve(&self, pairs: &[(usize, usize)], mut x: Vec<f64>) -> Option<(Vec<f64>, f64)> {
        let max_abs = |r: &[f64]| r.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let norm2 = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>();
        let mut r = self.residuals(pairs, &x);
        let mut cost = norm2(&r);
        let mut lambda = 1e-3;
        let n = x.len();
        for _ in 0..MAX_ITERATIONS {
            if max_abs(&r) < ACCEPT {
                break;
            }
            let h = 1e-7;
            let mut jac = DMatrix::<f64>::zeros(r.len(), n);
            for p in 0..n {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[p] += h;
                xm[p] -= h;
                let (rp, rm) = (self.residuals(pairs, &xp), self.residuals(pairs, &xm));
                for q in 0..r.len() {
                    jac[(q, p)] = (rp[q] - rm[q]) / (2.0 * h);
                }
            }
            let jt = jac.transpose();
            let jtj = &jt * &jac;
            let grad = &jt * DVector::from_column_slice(&r);
            let mut improved = false;
            for _ in 0..30 {
                let mut a = jtj.clone();
                for p in 0..n {
                    a[(p, p)] += lambda * (1.0 + jtj[(p, p)]);
                }
                let Some(step) = a.lu().solve(&(-&grad)) else {
                    lambda *= 10.0;
                    continue;
                };
                let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
                let rt = self.residuals(pairs, &trial);
                let ct = norm2(&rt);
                if ct < cost {
                    x = trial;
                    r = rt;
                    cost = ct;
                    lambda = (lambda / 10.0).max(1e-15);
                    improved = true;
                    break;
                }
                lambda *= 10.0;
            }
            if !improved {
                break;
            }
        }
        let residual = max_abs(&r);
        (residual < ACCEPT).then_some((x, residual))
    }
}

/// All distinct completions of the split block satisfying unitarity and the
/// modular relation, in the order their starting points were generated.
pub fn resolve_fixed_points(partial: &PartialCondensate, tol: &Tolerances) -> Result<Vec<CMatrix>> {
    let f = partial.splits.len();
    if f == 0 {
        return Ok(vec![partial.s.clone()]);
    }
    if f > MAX_FIXED_POINTS {
        return Err(Error::TooManyFixedPoints(f));
    }
    let pairs = partial.pairs();
    let starts = partial.starts(&pairs);
    let solved: Vec<Option<(Vec<f64>, f64)>> = starts.into_par_iter().map(|x0| partial.solve(&pairs, x0)).collect();

    let mut found: Vec<CMatrix> = Vec::new();
    for (x, _) in solved.into_iter().flatten() {
        let s = partial.complete(&pairs, &x);
        if !found.iter().any(|t| max_difference(t, &s) < tol.identity * 100.0) {
            found.push(s);
        }
    }
    if found.is_empty() {
        return Err(Error::NoResolution);
    }
    Ok(found)
}

fn max_difference(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Whether two completions differ only by exchanging `f+` with `f-` for
/// some fixed points, possibly combined with complex conjugation.
pub fn completions_related(a: &CMatrix, b: &CMatrix, splits: &[(usize, usize)], tol: f64) -> bool {
    if a.shape() != b.shape() || splits.len() > 16 {
        return false;
    }
    let n = a.nrows();
    for mask in 0..(1usize << splits.len()) {
        let mut perm: Vec<usize> = (0..n).collect();
        for (i, &(p, m)) in splits.iter().enumerate() {
            if mask >> i & 1 == 1 {
                perm.swap(p, m);
            }
        }
        let permuted = CMatrix::from_fn(n, n, |i, j| a[(perm[i], perm[j])]);
        if max_difference(&permuted, b) < tol || max_difference(&permuted.map(|z| z.conj()), b) < tol {
            return true;
        }
    }
    false
}
