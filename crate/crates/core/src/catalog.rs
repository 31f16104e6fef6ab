//! Concrete modular data: SU(2)_k, the Ising-type Spin(nu)_1 family, the two
//! Fibonacci categories and pointed categories on cyclic groups.
//!
//! Each family is registered in a [`CatalogRegistry`] under the prefix of its
//! canonical text form (`su2:10`, `ising:11`, `fib:g2`, `zn:3:1/3,1/3`).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fusion::{su2_fusion, FusionRing};
use crate::modular::{CMatrix, ModularData};
use crate::phase::RationalPhase;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FibonacciVariant {
    G2,
    F4,
}

/// Identifier of a catalog entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CatalogId {
    Su2 {
        level: u32,
    },
    IsingLike {
        nu: u32,
    },
    Fibonacci(FibonacciVariant),
    /// `q[a]` is the quadratic form at `a`, with `q[0] = 0`.
    PointedCyclic {
        n: u32,
        q: Vec<RationalPhase>,
    },
}

impl CatalogId {
    pub fn build(&self) -> Result<ModularData> {
        match self {
            CatalogId::Su2 { level } => su2(*level),
            CatalogId::IsingLike { nu } => ising_like(*nu),
            CatalogId::Fibonacci(v) => Ok(fibonacci(*v)),
            CatalogId::PointedCyclic { n, q } => pointed_cyclic(*n, q),
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogId::Su2 { level } => write!(f, "su2:{level}"),
            CatalogId::IsingLike { nu } => write!(f, "ising:{nu}"),
            CatalogId::Fibonacci(FibonacciVariant::G2) => write!(f, "fib:g2"),
            CatalogId::Fibonacci(FibonacciVariant::F4) => write!(f, "fib:f4"),
            CatalogId::PointedCyclic { n, q } => {
                write!(f, "zn:{n}")?;
                if q.len() > 1 {
                    let tail: Vec<String> = q[1..].iter().map(ToString::to_string).collect();
                    write!(f, ":{}", tail.join(","))?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for CatalogId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatalogRegistry::default().parse(s)
    }
}

/// A family of catalog entries sharing one text prefix.
pub trait CatalogFamily: Send + Sync {
    fn prefix(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn example(&self) -> &'static str;
    /// Parses everything after `prefix:`.
    fn parse(&self, params: &str) -> Result<CatalogId>;
}

/// Name-keyed collection of catalog families.
pub struct CatalogRegistry {
    families: Vec<Box<dyn CatalogFamily>>,
}

impl CatalogRegistry {
    pub fn empty() -> Self {
        CatalogRegistry { families: Vec::new() }
    }

    pub fn register(&mut self, family: Box<dyn CatalogFamily>) {
        self.families.retain(|f| f.prefix() != family.prefix());
        self.families.push(family);
    }

    pub fn families(&self) -> impl Iterator<Item = &dyn CatalogFamily> {
        self.families.iter().map(|f| f.as_ref())
    }

    pub fn get(&self, prefix: &str) -> Option<&dyn CatalogFamily> {
        self.families().find(|f| f.prefix() == prefix)
    }

    pub fn parse(&self, text: &str) -> Result<CatalogId> {
        let text = text.trim();
        let (prefix, params) = text.split_once(':').unwrap_or((text, ""));
        let family = self
            .get(&prefix.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown catalog family `{prefix}`")))?;
        family.parse(params)
    }

    pub fn build(&self, text: &str) -> Result<ModularData> {
        self.parse(text)?.build()
    }
}

impl Default for CatalogRegistry {
    fn default() -> Self {
        let mut registry = Self::empty();
        registry.register(Box::new(Su2Family));
        registry.register(Box::new(IsingFamily));
        registry.register(Box::new(FibonacciFamily));
        registry.register(Box::new(CyclicFamily));
        registry
    }
}

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.trim().parse().map_err(|_| Error::Parse(format!("expected a nonnegative integer for {what}, got `{s}`")))
}

struct Su2Family;

impl CatalogFamily for Su2Family {
    fn prefix(&self) -> &'static str {
        "su2"
    }
    fn summary(&self) -> &'static str {
        "SU(2) at level k"
    }
    fn example(&self) -> &'static str {
        "su2:10"
    }
    fn parse(&self, params: &str) -> Result<CatalogId> {
        Ok(CatalogId::Su2 { level: parse_u32(params, "the level")? })
    }
}

struct IsingFamily;

impl CatalogFamily for IsingFamily {
    fn prefix(&self) -> &'static str {
        "ising"
    }
    fn summary(&self) -> &'static str {
        "Spin(nu)_1 for odd nu: Ising fusion rules, twist nu/16 on the spinor"
    }
    fn example(&self) -> &'static str {
        "ising:11"
    }
    fn parse(&self, params: &str) -> Result<CatalogId> {
        Ok(CatalogId::IsingLike { nu: parse_u32(params, "nu")? })
    }
}

struct FibonacciFamily;

impl CatalogFamily for FibonacciFamily {
    fn prefix(&self) -> &'static str {
        "fib"
    }
    fn summary(&self) -> &'static str {
        "Fibonacci categories (G2)_1 (twist 2/5) and (F4)_1 (twist 3/5)"
    }
    fn example(&self) -> &'static str {
        "fib:g2"
    }
    fn parse(&self, params: &str) -> Result<CatalogId> {
        match params.trim().to_ascii_lowercase().as_str() {
            "g2" => Ok(CatalogId::Fibonacci(FibonacciVariant::G2)),
            "f4" => Ok(CatalogId::Fibonacci(FibonacciVariant::F4)),
            other => Err(Error::Parse(format!("unknown Fibonacci variant `{other}` (expected g2 or f4)"))),
        }
    }
}

struct CyclicFamily;

impl CatalogFamily for CyclicFamily {
    fn prefix(&self) -> &'static str {
        "zn"
    }
    fn summary(&self) -> &'static str {
        "pointed category on Z_n: zn:n:q(1),...,q(n-1), or zn:n:q(1) for q(a) = a^2 q(1)"
    }
    fn example(&self) -> &'static str {
        "zn:3:1/3,1/3"
    }
    fn parse(&self, params: &str) -> Result<CatalogId> {
        let (n, rest) = params.split_once(':').unwrap_or((params, ""));
        let n = parse_u32(n, "n")?;
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        let values = if rest.trim().is_empty() {
            Vec::new()
        } else {
            rest.split(',').map(str::parse).collect::<Result<Vec<RationalPhase>>>()?
        };
        let mut q = vec![RationalPhase::zero()];
        match values.len() {
            0 if n == 1 => {}
            1 if n > 2 => q.extend((1..i64::from(n)).map(|a| values[0] * (a * a))),
            len if len + 1 == n as usize => q.extend(values),
            len => {
                return Err(Error::Parse(format!("zn:{n} expects {} form values, got {len}", n - 1)));
            }
        }
        Ok(CatalogId::PointedCyclic { n, q })
    }
}

/// SU(2) at level `k >= 1`.
pub fn su2(k: u32) -> Result<ModularData> {
    if k == 0 {
        return Err(Error::InvalidParameter("SU(2) level must be at least 1".into()));
    }
    let ring = su2_fusion(k);
    let h = f64::from(k + 2);
    let r = k as usize + 1;
    let norm = (2.0 / h).sqrt();
    let s = CMatrix::from_fn(r, r, |i, j| Complex64::new(norm * (((i + 1) * (j + 1)) as f64 * PI / h).sin(), 0.0));
    let twists = (0..r as i64).map(|i| RationalPhase::new(i * (i + 2), 4 * (i64::from(k) + 2))).collect();
    let dims = (0..r).map(|i| ((i + 1) as f64 * PI / h).sin() / (PI / h).sin()).collect();
    ModularData::from_parts(ring, s, twists, dims)
}

fn ising_ring() -> FusionRing {
    FusionRing::from_products(vec!["0".into(), "1".into(), "2".into()], vec![0, 1, 2], |i, j| match (i, j) {
        (0, x) | (x, 0) => vec![(x, 1)],
        (1, 1) => vec![(0, 1), (2, 1)],
        (1, 2) | (2, 1) => vec![(1, 1)],
        _ => vec![(0, 1)],
    })
    .expect("Ising rules are well formed")
}

/// Spin(nu)_1 for odd `nu`: Ising fusion, twists `(0, nu/16, 1/2)`.
pub fn ising_like(nu: u32) -> Result<ModularData> {
    if nu.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("nu = {nu} must be odd")));
    }
    let r2 = std::f64::consts::SQRT_2;
    let rows = [[1.0, r2, 1.0], [r2, 0.0, -r2], [1.0, -r2, 1.0]];
    let s = CMatrix::from_fn(3, 3, |i, j| Complex64::new(0.5 * rows[i][j], 0.0));
    let twists = vec![RationalPhase::zero(), RationalPhase::new(i64::from(nu), 16), RationalPhase::new(1, 2)];
    ModularData::from_parts(ising_ring(), s, twists, vec![1.0, r2, 1.0])
}

/// Fibonacci data; `G2` has `theta_tau = 2/5`, `F4` has `3/5`.
pub fn fibonacci(variant: FibonacciVariant) -> ModularData {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let ring = FusionRing::from_products(vec!["id".into(), "τ".into()], vec![0, 1], |i, j| match (i, j) {
        (0, x) | (x, 0) => vec![(x, 1)],
        _ => vec![(0, 1), (1, 1)],
    })
    .expect("Fibonacci rules are well formed");
    let total = (2.0 + phi).sqrt();
    let rows = [[1.0, phi], [phi, -1.0]];
    let s = CMatrix::from_fn(2, 2, |i, j| Complex64::new(rows[i][j] / total, 0.0));
    let tau = match variant {
        FibonacciVariant::G2 => RationalPhase::new(2, 5),
        FibonacciVariant::F4 => RationalPhase::new(3, 5),
    };
    ModularData::from_parts(ring, s, vec![RationalPhase::zero(), tau], vec![1.0, phi]).expect("Fibonacci data")
}

/// Pointed category on `Z_n` with quadratic form `q` (`q.len() == n`).
///
/// `S[a][b] = exp(-2 pi i b(a, b)) / sqrt(n)` with `b(a, c) = q(a + c) - q(a) - q(c)`.
pub fn pointed_cyclic(n: u32, q: &[RationalPhase]) -> Result<ModularData> {
    let n = n as usize;
    if n == 0 || q.len() != n {
        return Err(Error::InvalidParameter(format!("need {n} quadratic form values, got {}", q.len())));
    }
    if !q[0].is_zero() {
        return Err(Error::InvalidParameter("q(0) must vanish".into()));
    }
    for a in 0..n {
        if q[a] != q[(n - a) % n] {
            return Err(Error::InvalidParameter(format!("q({a}) != q(-{a})")));
        }
    }
    let bilinear = |a: usize, c: usize| q[(a + c) % n] - q[a] - q[c];
    for a in 0..n {
        for a2 in 0..n {
            for c in 0..n {
                if bilinear((a + a2) % n, c) != bilinear(a, c) + bilinear(a2, c) {
                    return Err(Error::InvalidParameter(format!(
                        "q is not quadratic: b({a}+{a2}, {c}) is not additive"
                    )));
                }
            }
        }
    }
    if let Some(radical) = (1..n).find(|&a| (0..n).all(|c| bilinear(a, c).is_zero())) {
        return Err(Error::DegenerateForm { radical });
    }

    let names = (0..n).map(|a| a.to_string()).collect();
    let dual = (0..n).map(|a| (n - a) % n).collect();
    let ring = FusionRing::from_products(names, dual, |a, c| vec![((a + c) % n, 1)])?;
    let norm = 1.0 / (n as f64).sqrt();
    let s = CMatrix::from_fn(n, n, |a, c| (-bilinear(a, c)).to_complex() * norm);
    ModularData::from_parts(ring, s, q.to_vec(), vec![1.0; n])
}
