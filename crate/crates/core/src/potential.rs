//! The potential `φ_c(x) = |sin πq(x+c) / sin π(x+c)|`, its logarithm
//! `f_c = log φ_c` and the first two derivatives of `f_c`.
//!
//! `f_c` is a translate of `f_0`, so every evaluation reduces `y = x + c`
//! modulo one first and then works with the centred representative
//! `y ∈ [-1/2, 1/2)`. On the central arc `(-1/q, 1/q)` the function is smooth
//! and strictly concave with its maximum `log q` at `y = 0`; the points
//! `y = k/q` with `q ∤ k` are logarithmic singularities.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this distance from an integer, `x + c` is treated as the removable
/// singularity and `φ` returns its limit `q`.
pub const REMOVABLE_EPS: f64 = 1e-12;

/// Default guard for `f_prime` / `f_second` around the singularities.
pub const DEFAULT_SING_GUARD: f64 = 1e-9;

/// Parameters of the potential: integer base `q >= 2` and `c ∈ [0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    pub q: u32,
    pub c: f64,
}

impl PotentialParams {
    pub fn new(q: u32, c: f64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParams(format!("q = {q} must be at least 2")));
        }
        if !(0.0..1.0).contains(&c) {
            return Err(Error::InvalidParams(format!("c = {c} must lie in [0, 1)")));
        }
        Ok(Self { q, c })
    }

    /// Same as [`PotentialParams::new`] after reducing `c` modulo one.
    pub fn reduced(q: u32, c: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::InvalidParams(format!("c = {c} is not finite")));
        }
        let mut c = c - c.floor();
        if c >= 1.0 {
            c = 0.0;
        }
        Self::new(q, c)
    }

    pub fn log_q(&self) -> f64 {
        (self.q as f64).ln()
    }
}

/// A real number or negative infinity, totally ordered.
///
/// `f_c` takes the value `-∞` at its singular points; keeping that state
/// out of the float domain makes comparisons total and serialisation
/// unambiguous.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    NegInfinity,
}

impl Serialize for ExtendedReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedReal::Finite(v) => s.serialize_f64(*v),
            ExtendedReal::NegInfinity => s.serialize_str("-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Tag(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(ExtendedReal::Finite(v)),
            Repr::Tag(t) if t == "-inf" => Ok(ExtendedReal::NegInfinity),
            Repr::Tag(t) => Err(serde::de::Error::custom(format!("unexpected value '{t}'"))),
        }
    }
}

impl ExtendedReal {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    /// Finite value, or `None` at a singularity.
    pub fn finite(&self) -> Option<f64> {
        match *self {
            ExtendedReal::Finite(v) => Some(v),
            ExtendedReal::NegInfinity => None,
        }
    }

    /// Lossy conversion mapping the singular state to `f64::NEG_INFINITY`.
    pub fn to_f64(&self) -> f64 {
        self.finite().unwrap_or(f64::NEG_INFINITY)
    }
}

impl Eq for ExtendedReal {}

impl Ord for ExtendedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedReal::*;
        match (self, other) {
            (NegInfinity, NegInfinity) => Ordering::Equal,
            (NegInfinity, Finite(_)) => Ordering::Less,
            (Finite(_), NegInfinity) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.total_cmp(b),
        }
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::NegInfinity => f.write_str("-inf"),
        }
    }
}

/// Reduce to `[0, 1)`.
pub fn mod_one(x: f64) -> f64 {
    let r = x - x.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Reduce to the centred representative in `[-1/2, 1/2)`.
pub fn centered(x: f64) -> f64 {
    if (-0.5..0.5).contains(&x) {
        return x;
    }
    let r = mod_one(x);
    if r >= 0.5 {
        r - 1.0
    } else {
        r
    }
}

/// `q·y` split as `k + r` with `k` the nearest integer and `|r| <= 1/2`.
fn split_multiple(q: u32, y: f64) -> (i64, f64) {
    let t = q as f64 * y;
    let k = t.round();
    (k as i64, t - k)
}

fn zero_snap(q: u32) -> f64 {
    64.0 * f64::EPSILON * q as f64
}

/// `φ_0` at a centred argument `y ∈ [-1/2, 1/2)`.
fn phi0_centered(q: u32, y: f64) -> f64 {
    if y.abs() < REMOVABLE_EPS {
        return q as f64;
    }
    let (k, r) = split_multiple(q, y);
    if k != 0 && r.abs() <= zero_snap(q) {
        return 0.0;
    }
    // sin(π(k + r)) = ±sin(πr); only the modulus matters.
    ((PI * r).sin() / (PI * y).sin()).abs()
}

/// `φ_c(x) = |sin πq(x+c) / sin π(x+c)|`, equal to `q` where `x + c ∈ ℤ`.
pub fn phi(params: &PotentialParams, x: f64) -> f64 {
    phi0_centered(params.q, centered(x + params.c))
}

/// `f_c(x) = log φ_c(x)`.
pub fn f(params: &PotentialParams, x: f64) -> ExtendedReal {
    f0_centered(params.q, centered(x + params.c))
}

fn f0_centered(q: u32, y: f64) -> ExtendedReal {
    let p = phi0_centered(q, y);
    if p == 0.0 {
        ExtendedReal::NegInfinity
    } else {
        ExtendedReal::Finite(p.ln())
    }
}

/// `f_0` at an arbitrary real argument (no parameter shift).
pub fn f0(q: u32, y: f64) -> ExtendedReal {
    f0_centered(q, centered(y))
}

/// Distance from `x + c` to the nearest singularity `k/q` (`q ∤ k`).
pub fn singularity_distance(params: &PotentialParams, x: f64) -> f64 {
    let y = centered(x + params.c);
    let q = params.q as f64;
    let (k, r) = split_multiple(params.q, y);
    if k != 0 {
        r.abs() / q
    } else {
        // Nearest singular points are ±1/q.
        1.0 / q - y.abs()
    }
}

fn check_guard(params: &PotentialParams, x: f64, guard: f64) -> Result<()> {
    let d = singularity_distance(params, x);
    if d < guard {
        return Err(Error::Singularity { x, distance: d });
    }
    Ok(())
}

/// Chebyshev form `U_{q-1}(cos πy) = Σ_{k<q} cos((q-1-2k)πy)`, equal to
/// `sin πqy / sin πy` and smooth through `y = 0`.
pub(crate) fn cheb(q: u32, y: f64) -> (f64, f64, f64) {
    let (mut g, mut g1, mut g2) = (0.0, 0.0, 0.0);
    for k in 0..q {
        let m = (q as f64 - 1.0 - 2.0 * k as f64) * PI;
        let (s, c) = (m * y).sin_cos();
        g += c;
        g1 -= m * s;
        g2 -= m * m * c;
    }
    (g, g1, g2)
}

/// `f_c'(x) = π (q cot πq(x+c) − cot π(x+c))` with the default guard.
pub fn f_prime(params: &PotentialParams, x: f64) -> Result<f64> {
    f_prime_with_guard(params, x, DEFAULT_SING_GUARD)
}

pub fn f_prime_with_guard(params: &PotentialParams, x: f64, guard: f64) -> Result<f64> {
    check_guard(params, x, guard)?;
    Ok(f0_prime_centered(params.q, centered(x + params.c)))
}

pub(crate) fn f0_prime_centered(q: u32, y: f64) -> f64 {
    let qf = q as f64;
    if y.abs() <= 0.25 / qf {
        // Near the maximum the cotangent difference cancels badly.
        let (g, g1, _) = cheb(q, y);
        return g1 / g;
    }
    let (_, r) = split_multiple(q, y);
    PI * (qf / (PI * r).tan() - 1.0 / (PI * y).tan())
}

/// `f_c''(x) = π² (1/sin² π(x+c) − q²/sin² πq(x+c))`, strictly negative.
pub fn f_second(params: &PotentialParams, x: f64) -> Result<f64> {
    f_second_with_guard(params, x, DEFAULT_SING_GUARD)
}

pub fn f_second_with_guard(params: &PotentialParams, x: f64, guard: f64) -> Result<f64> {
    check_guard(params, x, guard)?;
    Ok(f0_second_centered(params.q, centered(x + params.c)))
}

pub(crate) fn f0_second_centered(q: u32, y: f64) -> f64 {
    let qf = q as f64;
    if y.abs() <= 0.25 / qf {
        let (g, g1, g2) = cheb(q, y);
        return (g2 * g - g1 * g1) / (g * g);
    }
    let (_, r) = split_multiple(q, y);
    let (sy, sr) = ((PI * y).sin(), (PI * r).sin());
    PI * PI * (1.0 / (sy * sy) - qf * qf / (sr * sr))
}

/// `f_0(y2) − f_0(y1)` for `y1, y2` on the central arc `(-1/q, 1/q)`.
///
/// Computed as `log1p((g(y2) − g(y1)) / g(y1))` with the difference of the
/// Chebyshev sums expanded into products of sines, so the rounding error is
/// proportional to the size of the increment rather than to `|f|`.
///
/// The second point is given as `y1 + h`, so a tiny width `h` enters the
/// computation without cancellation.
pub(crate) fn central_increment_width(q: u32, y1: f64, h: f64) -> f64 {
    let mid = y1 + 0.5 * h;
    let half = 0.5 * h;
    let mut g1 = 0.0;
    let mut diff = 0.0;
    for k in 0..q {
        let m = (q as f64 - 1.0 - 2.0 * k as f64) * PI;
        g1 += (m * y1).cos();
        diff -= 2.0 * (m * mid).sin() * (m * half).sin();
    }
    (diff / g1).ln_1p()
}
