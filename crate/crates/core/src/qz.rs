//! Elements of ℚ/ℤ, written additively.
//!
//! A value `p/q` stands for the root of unity `exp(2πi·p/q)`; adding values
//! multiplies the roots. This is the model used for character values and for
//! cocycles with coefficients in the multiplicative group of the ground field.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;

/// A reduced fraction `num/den` with `0 <= num < den`, taken modulo 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Qz {
    num: u64,
    den: u64,
}

impl Qz {
    pub const ZERO: Qz = Qz { num: 0, den: 1 };

    /// The class of `num/den` in ℚ/ℤ. Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Qz {
        assert!(den > 0, "zero denominator");
        let r = (num as i128).rem_euclid(den as i128) as u64;
        Qz::reduce(r, den)
    }

    fn reduce(num: u64, den: u64) -> Qz {
        if num == 0 {
            return Qz::ZERO;
        }
        let g = num.gcd(&den);
        Qz { num: num / g, den: den / g }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `k·self`.
    pub fn times(self, k: i64) -> Qz {
        let r = ((self.num as i128) * (k as i128)).rem_euclid(self.den as i128) as u64;
        Qz::reduce(r, self.den)
    }

    /// The residue `self·m` in `ℤ/m`, defined when the denominator divides `m`.
    pub fn scaled_to(self, m: u64) -> Option<u64> {
        if !m.is_multiple_of(self.den) {
            return None;
        }
        Some(self.num * (m / self.den))
    }

    /// Order of `self` in ℚ/ℤ.
    pub fn order(&self) -> u64 {
        self.den
    }
}

impl Add for Qz {
    type Output = Qz;
    fn add(self, rhs: Qz) -> Qz {
        let den = self.den.lcm(&rhs.den);
        let a = self.num as u128 * (den / self.den) as u128;
        let b = rhs.num as u128 * (den / rhs.den) as u128;
        Qz::reduce(((a + b) % den as u128) as u64, den)
    }
}

impl AddAssign for Qz {
    fn add_assign(&mut self, rhs: Qz) {
        *self = *self + rhs;
    }
}

impl Neg for Qz {
    type Output = Qz;
    fn neg(self) -> Qz {
        if self.num == 0 {
            self
        } else {
            Qz { num: self.den - self.num, den: self.den }
        }
    }
}

impl Sub for Qz {
    type Output = Qz;
    fn sub(self, rhs: Qz) -> Qz {
        self + (-rhs)
    }
}

impl std::iter::Sum for Qz {
    fn sum<I: Iterator<Item = Qz>>(iter: I) -> Qz {
        iter.fold(Qz::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid ℚ/ℤ value {0:?}: expected `p/q` or an integer")]
pub struct ParseQzError(pub String);

impl FromStr for Qz {
    type Err = ParseQzError;

    fn from_str(s: &str) -> Result<Qz, ParseQzError> {
        let err = || ParseQzError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| err())?;
                let q: u64 = q.trim().parse().map_err(|_| err())?;
                if q == 0 {
                    return Err(err());
                }
                Ok(Qz::new(p, q))
            }
            None => {
                let _: i64 = s.parse().map_err(|_| err())?;
                Ok(Qz::ZERO)
            }
        }
    }
}
