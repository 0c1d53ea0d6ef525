//! Generalized Thue–Morse polynomials `σ_N(x) = Σ_{n<N} t_n e^{2πinx}` with
//! `t_n = e^{2πi c S_q(n)}`, evaluated directly and through the product
//! formula `|σ_{q^n}(x)| = ∏_{k<n} φ_c(q^k x)`, plus grid estimates of the
//! growth exponent of `sup_x |σ_{q^n}|`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{CompensatedSum, DoubleDouble};
use crate::potential::{f, phi, PotentialParams};
use crate::rational::ExactRational;

/// Largest `N` accepted by [`sigma_direct`] by default.
pub const DIRECT_SUM_CAP: u64 = 1 << 24;
/// Candidates refined around in each zoom pass of [`sup_exponent_fit`].
pub const ZOOM_CANDIDATES: usize = 8;
/// Spacing reduction per zoom pass.
pub const ZOOM_FACTOR: usize = 32;
/// Number of zoom passes.
pub const ZOOM_PASSES: usize = 2;
/// Offset of the base grid in units of its spacing. Irrational so that no
/// grid point has a finite `q`-adic expansion, whose orbits would land on
/// the zeros of `φ_c` for `c = 1/2`.
pub const GRID_OFFSET: f64 = 0.618_033_988_749_894_8;

/// Base-`q` digit sum `S_q(n)`.
pub fn digit_sum(q: u32, mut n: u64) -> u32 {
    let q = q as u64;
    let mut s = 0u32;
    while n > 0 {
        s += (n % q) as u32;
        n /= q;
    }
    s
}

/// `e^{2πiθ}` with `θ` first reduced to `[-1/2, 1/2)`.
fn unit(theta: f64) -> Complex64 {
    let t = theta - theta.round();
    let (s, c) = (2.0 * std::f64::consts::PI * t).sin_cos();
    Complex64::new(c, s)
}

/// `t_n = e^{2πi c S_q(n)}`.
pub fn tm_coefficient(params: &PotentialParams, n: u64) -> Complex64 {
    let s = digit_sum(params.q, n) as f64;
    unit(DoubleDouble::mul_f64(params.c, s).fract().to_f64())
}

/// `frac(n x)` from the exact product `n·x` (valid for `n < 2^53`).
fn frac_mul(n: u64, x: f64) -> f64 {
    DoubleDouble::mul_f64(n as f64, x).fract().to_f64()
}

/// `w(n) = t_n e^{2πinx}`.
fn term(params: &PotentialParams, n: u64, x: f64) -> Complex64 {
    let s = digit_sum(params.q, n) as f64;
    let phase = (DoubleDouble::mul_f64(params.c, s) + DoubleDouble::mul_f64(n as f64, x))
        .fract()
        .to_f64();
    unit(phase)
}

/// `σ_N(x)` by compensated direct summation, `1 ≤ N ≤ 2^24`.
pub fn sigma_direct(params: &PotentialParams, n: u64, x: f64) -> Result<Complex64> {
    if n == 0 || n > DIRECT_SUM_CAP {
        return Err(Error::InvalidParams(format!(
            "N = {n} must lie in 1..={DIRECT_SUM_CAP}"
        )));
    }
    let (mut re, mut im) = (CompensatedSum::new(), CompensatedSum::new());
    for k in 0..n {
        let w = term(params, k, x);
        re.add(w.re);
        im.add(w.im);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// Running `q^k x mod 1` in double-double.
#[derive(Clone, Copy, Debug)]
struct QOrbit {
    q: f64,
    y: DoubleDouble,
}

impl QOrbit {
    fn new(q: u32, x: f64) -> Self {
        Self {
            q: q as f64,
            y: DoubleDouble::from_f64(x).fract(),
        }
    }

    fn value(&self) -> f64 {
        self.y.to_f64()
    }

    fn step(&mut self) {
        let y = DoubleDouble::mul_f64(self.y.hi, self.q) + DoubleDouble::mul_f64(self.y.lo, self.q);
        self.y = y.fract();
    }
}

/// `∏_{k<n} φ_c(q^k x)`, which equals `|σ_{q^n}(x)|`.
pub fn sigma_product(params: &PotentialParams, n_levels: u32, x: f64) -> Result<f64> {
    if n_levels == 0 {
        return Err(Error::InvalidParams("n_levels must be at least 1".into()));
    }
    let mut orbit = QOrbit::new(params.q, x);
    let mut prod = 1.0;
    for _ in 0..n_levels {
        prod *= phi(params, orbit.value());
        orbit.step();
    }
    Ok(prod)
}

/// As [`sigma_product`] with the orbit of a rational `x` computed exactly.
pub fn sigma_product_rational(
    params: &PotentialParams,
    n_levels: u32,
    x: ExactRational,
) -> Result<f64> {
    if n_levels == 0 {
        return Err(Error::InvalidParams("n_levels must be at least 1".into()));
    }
    let mut y = x.fract();
    let mut prod = 1.0;
    for _ in 0..n_levels {
        prod *= phi(params, y.to_f64());
        y = y.times_mod_one(params.q)?;
    }
    Ok(prod)
}

/// `S_n f(x) = Σ_{k<n} f_c(q^k x)` for rational `x`, compensated.
/// Returns `-inf` if the orbit meets a zero of `φ_c`.
pub fn birkhoff_sum_rational(params: &PotentialParams, n: u32, x: ExactRational) -> Result<f64> {
    let mut y = x.fract();
    let mut s = CompensatedSum::new();
    for _ in 0..n {
        match f(params, y.to_f64()).finite() {
            Some(v) => s.add(v),
            None => return Ok(f64::NEG_INFINITY),
        }
        y = y.times_mod_one(params.q)?;
    }
    Ok(s.value())
}

/// `|∏ φ_c(q^j x) − ∏ φ_{1−c}(q^j (1 − x))|` over `j < n_levels`.
pub fn product_symmetry_gap(params: &PotentialParams, n_levels: u32, x: f64) -> Result<f64> {
    let mirror = PotentialParams::reduced(params.q, 1.0 - params.c)?;
    let a = sigma_product(params, n_levels, x)?;
    let b = sigma_product(&mirror, n_levels, 1.0 - x)?;
    Ok((a - b).abs())
}

/// Tolerance of [`multiplicativity_check`] in complex modulus.
pub const MULTIPLICATIVITY_TOL: f64 = 1e-12;

/// `w(a q^t + b) = w(a q^t) w(b)` at every `x` in `xs`, where
/// `w(n) = t_n e^{2πinx}` and `b < q^t`.
pub fn multiplicativity_check(
    params: &PotentialParams,
    a: u64,
    t: u32,
    b: u64,
    xs: &[f64],
) -> Result<bool> {
    multiplicativity_check_with(params, |n| tm_coefficient(params, n), a, t, b, xs)
}

/// As [`multiplicativity_check`] with the coefficients supplied by `coef`.
pub fn multiplicativity_check_with(
    params: &PotentialParams,
    coef: impl Fn(u64) -> Complex64,
    a: u64,
    t: u32,
    b: u64,
    xs: &[f64],
) -> Result<bool> {
    let qt = (params.q as u64)
        .checked_pow(t)
        .ok_or_else(|| Error::Overflow(format!("{}^{t}", params.q)))?;
    if b >= qt {
        return Err(Error::InvalidParams(format!(
            "b = {b} must be below q^t = {qt}"
        )));
    }
    let head = a
        .checked_mul(qt)
        .filter(|&h| h + b < (1u64 << 53))
        .ok_or_else(|| Error::Overflow(format!("a q^t + b with a = {a}, t = {t}")))?;
    let w = |n: u64, x: f64| coef(n) * unit(frac_mul(n, x));
    Ok(xs.iter().all(|&x| {
        let lhs = w(head + b, x);
        let rhs = w(head, x) * w(b, x);
        (lhs - rhs).norm() <= MULTIPLICATIVITY_TOL
    }))
}

/// One row of the exponent fit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFitRow {
    pub n: u32,
    /// `log(max_x ∏_{k<n} φ_c(q^k x)) / (n log q)` over the refined grid.
    pub gamma_n: f64,
    /// `max_x S_n f(x) − nβ` over the refined grid.
    pub excess_n: f64,
    pub argmax_x: f64,
}

/// Grid sample of `sup_x |σ_{q^n}(x)|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupNormSample {
    pub n: u32,
    pub grid_size: usize,
    /// A lower bound for the true supremum.
    pub sup_abs: f64,
    pub argmax_x: f64,
}

/// `S_k f(x)` for `k = 1..=n`.
fn cumulative_sums(params: &PotentialParams, n: u32, x: f64) -> Vec<f64> {
    let mut orbit = QOrbit::new(params.q, x);
    let mut acc = 0.0;
    (0..n)
        .map(|_| {
            acc += f(params, orbit.value()).to_f64();
            orbit.step();
            acc
        })
        .collect()
}

fn birkhoff_sum(params: &PotentialParams, n: u32, x: f64) -> f64 {
    *cumulative_sums(params, n, x).last().unwrap_or(&0.0)
}

/// Refined grid maximum of `S_n f` starting from base-grid candidates.
fn refine(params: &PotentialParams, n: u32, base: &[(f64, f64)], spacing: f64) -> (f64, f64) {
    let mut cands: Vec<(f64, f64)> = base.to_vec();
    let mut h = spacing;
    for _ in 0..ZOOM_PASSES {
        cands.sort_by(|a, b| b.1.total_cmp(&a.1));
        cands.truncate(ZOOM_CANDIDATES);
        let fine = h / ZOOM_FACTOR as f64;
        let mut next = cands.clone();
        for &(x0, _) in &cands {
            for j in -(ZOOM_FACTOR as i64)..=(ZOOM_FACTOR as i64) {
                let x = x0 + j as f64 * fine;
                next.push((x, birkhoff_sum(params, n, x)));
            }
        }
        cands = next;
        h = fine;
    }
    cands
        .into_iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(x, v)| (x - x.floor(), v))
        .unwrap_or((0.0, f64::NEG_INFINITY))
}

/// Grid lower bounds for `max_x S_n f(x)`, `n = 1..=n_max`, on a uniform grid
/// of `grid_size` points shifted by [`GRID_OFFSET`] together with their
/// mirror images, refined by two ×32 zooms around the 8 best candidates of
/// each `n`.
pub fn sup_exponent_fit(
    params: &PotentialParams,
    n_max: u32,
    grid_size: usize,
    beta: f64,
) -> Result<Vec<ExponentFitRow>> {
    if n_max < 2 {
        return Err(Error::InvalidParams("n_max must be at least 2".into()));
    }
    if grid_size < ZOOM_CANDIDATES {
        return Err(Error::InvalidParams(format!(
            "grid_size must be at least {ZOOM_CANDIDATES}"
        )));
    }
    let spacing = 1.0 / grid_size as f64;
    // The grid is closed under x ↦ 1 − x, so the fits for c and 1 − c see
    // mirror-image samples.
    let xs: Vec<f64> = (0..grid_size)
        .flat_map(|i| {
            let x = (i as f64 + GRID_OFFSET) * spacing;
            [x, 1.0 - x]
        })
        .collect();
    let sums: Vec<Vec<f64>> = xs
        .par_iter()
        .map(|&x| cumulative_sums(params, n_max, x))
        .collect();
    let log_q = params.log_q();
    Ok((1..=n_max)
        .into_par_iter()
        .map(|n| {
            let k = (n - 1) as usize;
            let mut base: Vec<(f64, f64)> = xs.iter().zip(&sums).map(|(&x, s)| (x, s[k])).collect();
            base.sort_by(|a, b| b.1.total_cmp(&a.1));
            base.truncate(ZOOM_CANDIDATES);
            let (x, s) = refine(params, n, &base, spacing);
            ExponentFitRow {
                n,
                gamma_n: s / (n as f64 * log_q),
                excess_n: s - n as f64 * beta,
                argmax_x: x,
            }
        })
        .collect())
}

/// `sup_x |σ_{q^n}(x)|` estimated on the refined grid.
pub fn sup_norm(params: &PotentialParams, n: u32, grid_size: usize) -> Result<SupNormSample> {
    let row = sup_exponent_fit(params, n.max(2), grid_size, 0.0)?
        .into_iter()
        .find(|r| r.n == n)
        .ok_or_else(|| Error::InvalidParams("n must be at least 1".into()))?;
    Ok(SupNormSample {
        n,
        grid_size,
        sup_abs: (row.gamma_n * n as f64 * params.log_q()).exp(),
        argmax_x: row.argmax_x,
    })
}

/// `(x, |σ_{q^n}(x)|)` on the grid `x = i / grid_size`.
pub fn sigma_profile(
    params: &PotentialParams,
    n_levels: u32,
    grid_size: usize,
) -> Result<Vec<(f64, f64)>> {
    if grid_size == 0 {
        return Err(Error::InvalidParams("grid_size must be positive".into()));
    }
    (0..grid_size)
        .into_par_iter()
        .map(|i| {
            let x = i as f64 / grid_size as f64;
            sigma_product(params, n_levels, x).map(|v| (x, v))
        })
        .collect()
}
