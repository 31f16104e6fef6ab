//! Exact phases stored as a reduced fraction of a full turn.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An angle `numerator / denominator` turns, normalized into `[0, 1)`.
///
/// Twists, monodromy charges and `c / 8` are all carried this way so that
/// locality and boson tests never compare floating point numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPhase(Rational64);

impl RationalPhase {
    pub fn new(numerator: i64, denominator: i64) -> Self {
        assert!(denominator != 0, "phase denominator must be nonzero");
        Self::from_ratio(Rational64::new(numerator, denominator))
    }

    pub fn zero() -> Self {
        RationalPhase(Rational64::zero())
    }

    pub fn from_ratio(r: Rational64) -> Self {
        let den = *r.denom();
        let num = r.numer().rem_euclid(den);
        RationalPhase(Rational64::new(num, den))
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn as_ratio(&self) -> Rational64 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Value in turns, in `[0, 1)`.
    pub fn turns(&self) -> f64 {
        self.0.to_f64().unwrap_or(0.0)
    }

    /// `exp(2 pi i * self)`.
    pub fn to_complex(&self) -> Complex64 {
        let angle = 2.0 * std::f64::consts::PI * self.turns();
        Complex64::new(angle.cos(), angle.sin())
    }
}

impl Default for RationalPhase {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for RationalPhase {
    type Output = RationalPhase;
    fn add(self, rhs: Self) -> Self {
        Self::from_ratio(self.0 + rhs.0)
    }
}

impl AddAssign for RationalPhase {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for RationalPhase {
    type Output = RationalPhase;
    fn sub(self, rhs: Self) -> Self {
        Self::from_ratio(self.0 - rhs.0)
    }
}

impl Neg for RationalPhase {
    type Output = RationalPhase;
    fn neg(self) -> Self {
        Self::from_ratio(-self.0)
    }
}

impl Mul<i64> for RationalPhase {
    type Output = RationalPhase;
    fn mul(self, rhs: i64) -> Self {
        Self::from_ratio(self.0 * rhs)
    }
}

impl fmt::Display for RationalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

impl FromStr for RationalPhase {
    type Err = Error;

    /// Accepts `n/d` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not a rational phase"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d <= 0 {
                    return Err(bad());
                }
                Ok(Self::new(n, d))
            }
            None => {
                let n: i64 = s.parse().map_err(|_| bad())?;
                Ok(Self::new(n, 1))
            }
        }
    }
}
