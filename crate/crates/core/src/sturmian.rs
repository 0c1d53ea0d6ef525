//! `q`-Sturmian periodic cycles with exact rational points, their
//! λ-windows, and the truncated circle map `R_λ` with its rotation number.
//!
//! A cycle is labelled by a base digit `a ∈ {0, …, q−2}` and a rotation
//! `p/m`. Its digit word is the lower Christoffel word
//! `d_j = a + ⌊jp/m⌋ − ⌊(j−1)p/m⌋`, and its points are the `m` rotations of
//! that word read as base-`q` fractions with denominator `q^m − 1`.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// A periodic orbit of `T: x ↦ qx mod 1` lying in a closed arc of length `1/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SturmianCycle {
    pub q: u32,
    pub period: u32,
    /// `p/m` in lowest terms, `0/1` only for fixed points.
    pub rotation: ExactRational,
    pub base_digit: u32,
    /// Sorted cycle points in `[0, 1)`.
    pub points: Vec<ExactRational>,
    pub s_min: ExactRational,
    pub s_max: ExactRational,
}

/// `Λ_ϑ = [s_max − 1/q, s_min]` in the lift; `lo` may be negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaWindow {
    pub lo: ExactRational,
    pub hi: ExactRational,
}

impl LambdaWindow {
    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }

    pub fn width(&self) -> f64 {
        // Exact difference first; the window is tiny for long periods.
        self.hi
            .checked_sub(&self.lo)
            .map(|d| d.to_f64())
            .unwrap_or_else(|_| self.hi_f64() - self.lo_f64())
    }

    /// `λ` shifted by an integer into `[lo, lo + 1)`.
    pub fn lift(&self, lambda: f64) -> f64 {
        let lo = self.lo_f64();
        lambda - (lambda - lo).floor()
    }

    /// Whether some integer translate of `λ` lies in `[lo, hi]`.
    pub fn contains(&self, lambda: f64) -> bool {
        self.lift(lambda) <= self.hi_f64()
    }
}

impl SturmianCycle {
    /// The cycle with base digit `a` and rotation `p/m` (`gcd(p, m) = 1`).
    pub fn new(q: u32, base_digit: u32, p: u32, m: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParams(format!("q = {q} must be at least 2")));
        }
        if m == 0 || p >= m.max(1) && !(p == 0 && m == 1) {
            return Err(Error::InvalidParams(format!(
                "rotation {p}/{m} must lie in [0, 1)"
            )));
        }
        if p.gcd(&m) != 1 {
            return Err(Error::InvalidParams(format!(
                "rotation {p}/{m} is not in lowest terms"
            )));
        }
        if base_digit + 2 > q {
            return Err(Error::InvalidParams(format!(
                "base digit {base_digit} must be at most q - 2 = {}",
                q - 2
            )));
        }
        let qi = q as i128;
        let den = qi
            .checked_pow(m)
            .and_then(|v| v.checked_sub(1))
            // Keep headroom so that q·num never overflows in validation.
            .filter(|d| d.checked_mul(qi).is_some())
            .ok_or_else(|| Error::Overflow(format!("{q}^{m} - 1 exceeds 128-bit range")))?;
        let digits: Vec<i128> = (1..=m as i128)
            .map(|j| {
                let (p, m) = (p as i128, m as i128);
                base_digit as i128 + Integer::div_floor(&(j * p), &m)
                    - Integer::div_floor(&((j - 1) * p), &m)
            })
            .collect();
        let mut points = Vec::with_capacity(m as usize);
        for r in 0..m as usize {
            let mut num: i128 = 0;
            for k in 0..m as usize {
                num = num * qi + digits[(r + k) % m as usize];
            }
            points.push(ExactRational::new(num, den)?);
        }
        points.sort();
        points.dedup();
        let cycle = Self {
            q,
            period: m,
            rotation: ExactRational::new(p as i128, m as i128)?,
            base_digit,
            s_min: points[0],
            s_max: *points.last().expect("nonempty"),
            points,
        };
        cycle.validate()?;
        Ok(cycle)
    }

    /// Checks the defining invariants in exact arithmetic.
    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::InvalidParams(format!("invalid cycle: {why}")));
        if self.points.len() != self.period as usize {
            return bad(format!(
                "{} distinct points for period {}",
                self.points.len(),
                self.period
            ));
        }
        for s in &self.points {
            let t = s.times_mod_one(self.q)?;
            if self.points.binary_search(&t).is_err() {
                return bad(format!("T({s}) = {t} leaves the orbit"));
            }
        }
        let spread = self.s_max.checked_sub(&self.s_min)?;
        if spread > ExactRational::new(1, self.q as i128)? {
            return bad(format!("spread {spread} exceeds 1/{}", self.q));
        }
        Ok(())
    }

    pub fn window(&self) -> LambdaWindow {
        lambda_window(self)
    }

    /// `a + p/m`, the rotation number of `R_λ` for `λ` in the window
    /// (modulo `q − 1`).
    pub fn rho(&self) -> f64 {
        self.base_digit as f64 + self.rotation.to_f64()
    }

    pub fn points_f64(&self) -> Vec<f64> {
        self.points.iter().map(ExactRational::to_f64).collect()
    }
}

/// `Λ_ϑ = [s_max − 1/q, s_min]`.
pub fn lambda_window(cycle: &SturmianCycle) -> LambdaWindow {
    let inv_q = ExactRational::new(1, cycle.q as i128).expect("q >= 2");
    LambdaWindow {
        lo: cycle
            .s_max
            .checked_sub(&inv_q)
            .expect("denominators fit by construction"),
        hi: cycle.s_min,
    }
}

/// All cycles with period `1..=max_period`, ordered by period, base digit
/// and rotation numerator.
pub fn enumerate_cycles(q: u32, max_period: u32) -> Result<Vec<SturmianCycle>> {
    enumerate_cycles_between(q, 1, max_period)
}

pub fn enumerate_cycles_between(
    q: u32,
    min_period: u32,
    max_period: u32,
) -> Result<Vec<SturmianCycle>> {
    if max_period == 0 {
        return Err(Error::InvalidParams("max_period must be at least 1".into()));
    }
    let mut out = Vec::new();
    for m in min_period.max(1)..=max_period {
        for a in 0..q.saturating_sub(1) {
            if m == 1 {
                out.push(SturmianCycle::new(q, a, 0, 1)?);
                continue;
            }
            for p in 1..m {
                if p.gcd(&m) == 1 {
                    out.push(SturmianCycle::new(q, a, p, m)?);
                }
            }
        }
    }
    Ok(out)
}

/// The monotone degree-one lift of `R_λ`: `qx` on `[λ, λ + 1/q]`, constant
/// `qλ + 1` on `(λ + 1/q, λ + 1)`, and `R̂(x + 1) = R̂(x) + 1`.
///
/// With this normalisation `ρ(λ + 1) = ρ(λ) + q − 1`, and for `λ` in the
/// window of the cycle `(a, p/m)` the rotation number is `a + p/m` modulo
/// `q − 1`.
pub fn truncated_map_lift(q: u32, lambda: f64, x: f64) -> f64 {
    let k = (x - lambda).floor();
    let y = x - k;
    let qf = q as f64;
    let v = if y <= lambda + 1.0 / qf {
        qf * y
    } else {
        qf * lambda + 1.0
    };
    v + k
}

pub const DEFAULT_ROTATION_ITERS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RotationEstimate {
    /// Certified `ρ(λ)` reduced into `[0, q − 1)`.
    Rational {
        rho: ExactRational,
    },
    IrrationalEstimate {
        rho: f64,
        uncertainty: f64,
    },
}

impl RotationEstimate {
    pub fn value(&self) -> f64 {
        match self {
            RotationEstimate::Rational { rho } => rho.to_f64(),
            RotationEstimate::IrrationalEstimate { rho, .. } => *rho,
        }
    }
}

/// `(R̂_λ^n(0) − 0)/n`. Starting every `λ` from the same point makes the
/// estimate nondecreasing in `λ`, since `R̂_λ(x)` is nondecreasing in both
/// arguments.
pub fn rotation_estimate(q: u32, lambda: f64, iterations: usize) -> f64 {
    let mut x = 0.0;
    for _ in 0..iterations {
        x = truncated_map_lift(q, lambda, x);
    }
    x / iterations as f64
}

/// Simplest fraction (smallest denominator) in `[lo, hi]`, found by the
/// continued-fraction descent of the Stern–Brocot tree; `None` if its
/// denominator exceeds `max_den`.
pub fn simplest_fraction(lo: f64, hi: f64, max_den: u64) -> Option<(i64, u64)> {
    fn go(lo: f64, hi: f64, depth: u32) -> Option<(i64, i64)> {
        if depth > 64 || !(lo <= hi) {
            return None;
        }
        let fl = lo.floor();
        if fl == lo {
            return Some((fl as i64, 1));
        }
        if fl + 1.0 <= hi {
            return Some((fl as i64 + 1, 1));
        }
        // lo, hi ∈ (fl, fl + 1): x = fl + 1/y with y in [1/(hi−fl), 1/(lo−fl)].
        let (p, q) = go(1.0 / (hi - fl), 1.0 / (lo - fl), depth + 1)?;
        Some((fl as i64 * p + q, p))
    }
    let (p, q) = go(lo, hi, 0)?;
    (q > 0 && q as u64 <= max_den).then_some((p, q as u64))
}

/// Number of reduced fractions with denominator at most `max_den` in `[lo, hi]`.
fn fractions_in(lo: f64, hi: f64, max_den: u64) -> usize {
    let mut count = 0;
    for m in 1..=max_den {
        let first = (lo * m as f64).ceil() as i64;
        let last = (hi * m as f64).floor() as i64;
        for p in first..=last {
            if (p.unsigned_abs()).gcd(&m) == 1 {
                count += 1;
            }
        }
    }
    count
}

/// Rotation number of `R_λ`, certified rational when the candidate
/// `a + p/m` is backed by a Sturmian cycle whose support lies in `C_λ`.
pub fn rotation_number(
    q: u32,
    lambda: f64,
    iterations: usize,
    max_denominator: u32,
) -> Result<RotationEstimate> {
    if q < 2 {
        return Err(Error::InvalidParams(format!("q = {q} must be at least 2")));
    }
    if iterations < 1000 {
        return Err(Error::InvalidParams(
            "at least 1000 iterations are required".into(),
        ));
    }
    if !lambda.is_finite() {
        return Err(Error::InvalidParams(format!(
            "lambda = {lambda} is not finite"
        )));
    }
    let max_den = max_denominator.max(1) as u64;
    let mut n = iterations;
    for attempt in 0..2 {
        let rho = rotation_estimate(q, lambda, n);
        // |R̂^n(x) − x − nρ| < 1 for a monotone degree-one map.
        let unc = 1.0 / n as f64;
        let (lo, hi) = (rho - unc, rho + unc);
        let count = fractions_in(lo, hi, max_den);
        if count > 1 && attempt == 0 {
            n *= 10;
            continue;
        }
        if count == 1 {
            if let Some((num, den)) = simplest_fraction(lo, hi, max_den) {
                if let Some(r) = certify(q, lambda, num, den)? {
                    return Ok(RotationEstimate::Rational { rho: r });
                }
            }
        }
        return Ok(RotationEstimate::IrrationalEstimate {
            rho,
            uncertainty: unc,
        });
    }
    unreachable!("the loop returns on its second pass")
}

/// Confirms `ρ = num/den` by locating the cycle and checking `λ ∈ Λ_ϑ`.
fn certify(q: u32, lambda: f64, num: i64, den: u64) -> Result<Option<ExactRational>> {
    let qm1 = (q - 1) as i128;
    let rho = ExactRational::new(num as i128, den as i128)?;
    // Reduce modulo q − 1.
    let shift = Integer::div_floor(&rho.floor(), &qm1) * qm1;
    let rho = rho.checked_sub(&ExactRational::from_integer(shift))?;
    let a = rho.floor() as u32;
    let frac = rho.fract();
    let cycle = match SturmianCycle::new(q, a, frac.num() as u32, frac.den() as u32) {
        Ok(c) => c,
        Err(Error::Overflow(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(cycle.window().contains(lambda).then_some(rho))
}

/// One sample of the devil's staircase `λ ↦ ρ(λ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StaircasePoint {
    pub lambda: f64,
    /// `R̂_λ^n(0)/n`, nondecreasing in `λ`.
    pub rho_estimate: f64,
    /// Certified rational value, when available.
    pub rho: Option<ExactRational>,
}

/// `ρ` on the grid `λ = i / points`, `i = 0 … points − 1`.
pub fn rotation_staircase(
    q: u32,
    points: usize,
    iterations: usize,
    max_denominator: u32,
) -> Result<Vec<StaircasePoint>> {
    if points == 0 {
        return Err(Error::InvalidParams("points must be positive".into()));
    }
    (0..points)
        .into_par_iter()
        .map(|i| {
            let lambda = i as f64 / points as f64;
            let rho_estimate = rotation_estimate(q, lambda, iterations);
            // Undo the reduction into [0, q − 1) so the staircase stays monotone.
            let rho = match rotation_number(q, lambda, iterations, max_denominator)? {
                RotationEstimate::Rational { rho } => {
                    let shift = (rho_estimate - rho.to_f64()).round() as i128;
                    Some(rho.checked_add(&ExactRational::from_integer(shift))?)
                }
                RotationEstimate::IrrationalEstimate { .. } => None,
            };
            Ok(StaircasePoint {
                lambda,
                rho_estimate,
                rho,
            })
        })
        .collect()
}

/// The Sturmian measure supported in `C_λ`, when it is periodic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureSupport {
    Cycle(SturmianCycle),
    /// Rotation number not certified rational with denominator at most the
    /// requested period: the measure exists but is not represented.
    Irrational {
        rho: f64,
        uncertainty: f64,
    },
}

pub fn measure_support(q: u32, lambda: f64, max_period: u32) -> Result<MeasureSupport> {
    match rotation_number(q, lambda, DEFAULT_ROTATION_ITERS, max_period)? {
        RotationEstimate::Rational { rho } => {
            let a = rho.floor() as u32;
            let f = rho.fract();
            Ok(MeasureSupport::Cycle(SturmianCycle::new(
                q,
                a,
                f.num() as u32,
                f.den() as u32,
            )?))
        }
        RotationEstimate::IrrationalEstimate { rho, uncertainty } => {
            Ok(MeasureSupport::Irrational { rho, uncertainty })
        }
    }
}
