//! Exact rationals over `i128`, used for cycle points `k / (q^m - 1)` and
//! the λ-windows built from them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational number `num / den` in lowest terms with `den >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExactRational {
    num: i128,
    den: i128,
}

impl ExactRational {
    pub const ZERO: Self = Self { num: 0, den: 1 };
    pub const ONE: Self = Self { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParams("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = num
                .checked_neg()
                .ok_or_else(|| Error::Overflow("negating numerator".into()))?;
            den = -den;
        }
        Ok(Self { num, den })
    }

    pub fn from_integer(n: i128) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        // Split off the integer part so the fractional conversion keeps full
        // relative precision for large numerators.
        let (int, rem) = self.num.div_mod_floor(&self.den);
        int as f64 + rem as f64 / self.den as f64
    }

    /// Representative in `[0, 1)`.
    pub fn fract(&self) -> Self {
        Self {
            num: self.num.rem_euclid(self.den),
            den: self.den,
        }
    }

    pub fn floor(&self) -> i128 {
        Integer::div_floor(&self.num, &self.den)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let l = self.den.lcm(&other.den);
        let a = self
            .num
            .checked_mul(l / self.den)
            .and_then(|a| {
                other
                    .num
                    .checked_mul(l / other.den)
                    .and_then(|b| a.checked_add(b))
            })
            .ok_or_else(|| Error::Overflow(format!("{self} + {other}")))?;
        Self::new(a, l)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&Self {
            num: -other.num,
            den: other.den,
        })
    }

    pub fn checked_mul_int(&self, k: i128) -> Result<Self> {
        let g = k.gcd(&self.den);
        let num = self
            .num
            .checked_mul(k / g)
            .ok_or_else(|| Error::Overflow(format!("{self} * {k}")))?;
        Self::new(num, self.den / g)
    }

    pub fn checked_div_int(&self, k: i128) -> Result<Self> {
        let g = k.gcd(&self.num);
        if g == 0 {
            return Err(Error::InvalidParams("division by zero".into()));
        }
        let den = self
            .den
            .checked_mul(k / g)
            .ok_or_else(|| Error::Overflow(format!("{self} / {k}")))?;
        Self::new(self.num / g, den)
    }

    /// The doubling-type map `x -> q x mod 1`.
    pub fn times_mod_one(&self, q: u32) -> Result<Self> {
        Ok(self.checked_mul_int(q as i128)?.fract())
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        // Widening through i128 overflow is avoided by comparing floors first.
        let (fa, fb) = (self.floor(), other.floor());
        if fa != fb {
            return fa.cmp(&fb);
        }
        let ra = self.num - fa * self.den;
        let rb = other.num - fb * other.den;
        match (ra.checked_mul(other.den), rb.checked_mul(self.den)) {
            (Some(x), Some(y)) => x.cmp(&y),
            _ => self
                .to_f64()
                .partial_cmp(&other.to_f64())
                .unwrap_or(Ordering::Equal),
        }
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("cannot parse rational '{s}'"));
        match s.trim().split_once('/') {
            Some((n, d)) => {
                let n = n.trim().parse::<i128>().map_err(|_| bad())?;
                let d = d.trim().parse::<i128>().map_err(|_| bad())?;
                Self::new(n, d)
            }
            None => Ok(Self::from_integer(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
