//! The certified pipeline: locate `λ*(c)`, identify the maximizing Sturmian
//! cycle through the sign change of `v_c` across its window, evaluate
//! `β(c)` and `γ(c) = β(c)/log q` from the exact cycle, and compute the
//! validity interval of every cycle.
//!
//! Lifted coordinates: for a given `c` every `λ` is handled through
//! `u = λ + c ∈ (−1/q, 0)`; `λ` itself is reported in the lift of the
//! cycle's window `[s_max − 1/q, s_min]` (whose left end may be negative) or,
//! for `λ*`, reduced into `[0, 1)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::{
    v_at_offset, v_c_best_effort, window_offset, VcConfig, VcValue, DEFAULT_DEPTH_CAP,
    DEFAULT_WINDOW_GUARD,
};
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::potential::{f0, mod_one, PotentialParams};
use crate::sturmian::{enumerate_cycles, rotation_number, RotationEstimate, SturmianCycle};

pub const DEFAULT_MAX_PERIOD: u32 = 13;
pub const DEFAULT_LAMBDA_TOL: f64 = 1e-12;
pub const DEFAULT_VALIDITY_TOL: f64 = 1e-11;
/// Points in the coarse scan for sign changes of `v_c` over `W_c`.
pub const COARSE_SCAN_POINTS: usize = 64;
/// Distance from the edges of `W_c` at which certification evaluates `v_c`.
pub const CERT_PULL_IN: f64 = 1e-8;

/// Numerical settings shared by the pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub vc: VcConfig,
    pub lambda_tol: f64,
    pub validity_tol: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            vc: VcConfig::default(),
            lambda_tol: DEFAULT_LAMBDA_TOL,
            validity_tol: DEFAULT_VALIDITY_TOL,
        }
    }
}

/// Bisection result for the zero of `v_c` on `W_c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaStar {
    /// `λ*` reduced into `[0, 1)`.
    pub lambda: f64,
    /// Bracket `[lo, hi]` in the lift `(−1/q − c, −c)` of `W_c`.
    pub bracket_lo: f64,
    pub bracket_hi: f64,
}

fn v_u(q: u32, c: f64, u: f64, cfg: &VcConfig) -> VcValue {
    v_at_offset(q, u - c, u, cfg.target_err, cfg.depth_cap).0
}

fn sign(v: &VcValue) -> i8 {
    if v.value > 0.0 {
        1
    } else if v.value < 0.0 {
        -1
    } else {
        0
    }
}

/// Zero of `λ ↦ v_c(λ)` on `W_c` to `tol` by bisection.
///
/// A coarse scan over `W_c` must show exactly one sign change; anything else
/// is reported rather than guessed.
pub fn find_lambda_star(params: &PotentialParams, tol: f64) -> Result<f64> {
    Ok(bracket_lambda_star(params, tol, &VcConfig::default())?.lambda)
}

pub fn bracket_lambda_star(
    params: &PotentialParams,
    tol: f64,
    cfg: &VcConfig,
) -> Result<LambdaStar> {
    if !(tol >= 1e-12 * (1.0 - 1e-9)) {
        return Err(Error::InvalidParams(format!(
            "tol = {tol} must be at least 1e-12"
        )));
    }
    let q = params.q;
    let c = params.c;
    let width = 1.0 / q as f64;
    let pull = 10.0 * cfg.window_guard;
    let mut us: Vec<f64> = vec![-width + pull];
    us.extend(
        (0..COARSE_SCAN_POINTS)
            .map(|i| -width + (i as f64 + 0.5) * width / COARSE_SCAN_POINTS as f64),
    );
    us.push(-pull);
    let vals: Vec<VcValue> = us.iter().map(|&u| v_u(q, c, u, cfg)).collect();
    let mut changes = Vec::new();
    for i in 0..vals.len() - 1 {
        let (a, b) = (sign(&vals[i]), sign(&vals[i + 1]));
        if a == 0 {
            // Exact zero on a scan point.
            let lam = us[i] - c;
            return Ok(LambdaStar {
                lambda: mod_one(lam),
                bracket_lo: lam,
                bracket_hi: lam,
            });
        }
        if a != b {
            changes.push(i);
        }
    }
    match changes.len() {
        0 => {
            let near_left = sign(&vals[0]) < 0;
            let u = if near_left {
                us[0]
            } else {
                *us.last().unwrap()
            };
            return Err(Error::Guard {
                lambda: u - c,
                distance: pull,
                guard: cfg.window_guard,
            });
        }
        1 => {}
        n => return Err(Error::MultipleSignChange { count: n }),
    }
    let i = changes[0];
    let (mut lo, mut hi) = (us[i], us[i + 1]);
    let s_lo = sign(&vals[i]);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = v_u(q, c, mid, cfg);
        if v.value == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if sign(&v) == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u = 0.5 * (lo + hi);
    Ok(LambdaStar {
        lambda: mod_one(u - c),
        bracket_lo: lo - c,
        bracket_hi: hi - c,
    })
}

/// The certified answer for one `(q, c)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GelfondCertificate {
    pub params: PotentialParams,
    pub cycle: SturmianCycle,
    /// `λ*` reduced into `[0, 1)`.
    pub lambda_star: f64,
    /// `λ₁ < λ₂` in the lift of the cycle window.
    pub lambda1: f64,
    pub lambda2: f64,
    pub v1: VcValue,
    pub v2: VcValue,
    /// Natural-log units.
    pub beta: f64,
    pub gamma: f64,
}

/// No cycle of the allowed periods certifies at this `c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonPeriodicReport {
    pub params: PotentialParams,
    pub lambda_star: f64,
    pub rotation: RotationEstimate,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GelfondOutcome {
    Certified(GelfondCertificate),
    NonPeriodic(NonPeriodicReport),
}

impl GelfondOutcome {
    pub fn certificate(&self) -> Option<&GelfondCertificate> {
        match self {
            GelfondOutcome::Certified(c) => Some(c),
            GelfondOutcome::NonPeriodic(_) => None,
        }
    }
}

/// `β = (1/m) Σ_j f_c(s_j)` over the exact cycle points.
pub fn cycle_beta(params: &PotentialParams, cycle: &SturmianCycle) -> f64 {
    let mut s = CompensatedSum::new();
    for p in &cycle.points {
        // Reduce the rational point and c separately before adding so the
        // argument keeps full absolute precision.
        s.add(f0(params.q, p.to_f64() + params.c).to_f64());
    }
    s.value() / cycle.period as f64
}

/// Certified `β(c)` and `γ(c)` using cycles of period at most `max_period`.
pub fn gelfond_exponent(params: &PotentialParams, max_period: u32) -> Result<GelfondOutcome> {
    let cycles = enumerate_cycles(params.q, max_period)?;
    gelfond_exponent_with(params, &cycles, &PipelineConfig::default())
}

/// As [`gelfond_exponent`] with a precomputed cycle list and settings.
pub fn gelfond_exponent_with(
    params: &PotentialParams,
    cycles: &[SturmianCycle],
    cfg: &PipelineConfig,
) -> Result<GelfondOutcome> {
    let q = params.q;
    let c = params.c;
    if c == 0.0 {
        // f_0 peaks at the fixed point 0, so its Dirac mass maximizes.
        let cycle = cycles
            .iter()
            .find(|cy| cy.period == 1 && cy.base_digit == 0)
            .cloned()
            .map_or_else(|| SturmianCycle::new(q, 0, 0, 1), Ok)?;
        return certify(params, cycle, None, cfg);
    }
    let star = bracket_lambda_star(params, cfg.lambda_tol, &cfg.vc)?;
    let found = cycles.iter().find(|cy| {
        let w = cy.window();
        let lo = w.lift(star.bracket_lo);
        let hi = lo + (star.bracket_hi - star.bracket_lo);
        lo >= w.lo_f64() && hi <= w.hi_f64()
    });
    match found {
        Some(cycle) => certify(params, cycle.clone(), Some(star), cfg),
        None => {
            let max_den = cycles.iter().map(|c| c.period).max().unwrap_or(1);
            let rotation = rotation_number(q, star.lambda, 100_000, max_den)?;
            Ok(GelfondOutcome::NonPeriodic(NonPeriodicReport {
                params: *params,
                lambda_star: star.lambda,
                rotation,
                reason: format!(
                    "lambda* = {} lies in no window of a cycle with period <= {max_den}",
                    star.lambda
                ),
            }))
        }
    }
}

fn certify(
    params: &PotentialParams,
    cycle: SturmianCycle,
    star: Option<LambdaStar>,
    cfg: &PipelineConfig,
) -> Result<GelfondOutcome> {
    let q = params.q;
    let c = params.c;
    let width = 1.0 / q as f64;
    let w = cycle.window();
    // W_c in the lift of the window: (−1/q − c, −c) + k.
    let w_lo = {
        let base = -width - c;
        base + (w.lo_f64() - base).floor()
    };
    let w_lo = if w_lo + width <= w.lo_f64() {
        w_lo + 1.0
    } else {
        w_lo
    };
    let w_hi = w_lo + width;
    let (lambda1, lambda2) = {
        let l1 = if w.lo_f64() > w_lo + CERT_PULL_IN {
            w.lo_f64()
        } else {
            w_lo + CERT_PULL_IN
        };
        let l2 = if w.hi_f64() < w_hi - CERT_PULL_IN {
            w.hi_f64()
        } else {
            w_hi - CERT_PULL_IN
        };
        (l1, l2)
    };
    let star_lambda = star.map_or(mod_one(-0.5 * width - c), |s| s.lambda);
    let non_periodic = |reason: String| -> Result<GelfondOutcome> {
        let rotation = rotation_number(q, star_lambda, 100_000, cycle.period.max(1))?;
        Ok(GelfondOutcome::NonPeriodic(NonPeriodicReport {
            params: *params,
            lambda_star: star_lambda,
            rotation,
            reason,
        }))
    };
    if !(lambda1 < lambda2) {
        return non_periodic(format!(
            "window of the period-{} cycle does not meet W_c",
            cycle.period
        ));
    }
    let v1 = v_c_best_effort(params, lambda1, &cfg.vc)?;
    let v2 = v_c_best_effort(params, lambda2, &cfg.vc)?;
    let (s1, s2) = (v1.certified_sign(), v2.certified_sign());
    if s1 == 0 || s2 == 0 || s1 == s2 {
        return non_periodic(format!(
            "no certified sign change across the period-{} window: v1 = {} ± {}, v2 = {} ± {}",
            cycle.period, v1.value, v1.err_bound, v2.value, v2.err_bound
        ));
    }
    // λ* + c must sit in (−1/q, 0) modulo one.
    if let Some(s) = star {
        let u = window_offset(params, s.lambda, 0.0).map_err(|_| Error::Uncertified {
            c,
            reason: format!("lambda* + c = {} leaves (-1/q, 0)", s.lambda + c),
        })?;
        debug_assert!(u > -width && u < 0.0);
    }
    let beta = cycle_beta(params, &cycle);
    let gamma = beta / params.log_q();
    Ok(GelfondOutcome::Certified(GelfondCertificate {
        params: *params,
        cycle,
        lambda_star: star_lambda,
        lambda1,
        lambda2,
        v1,
        v2,
        beta,
        gamma,
    }))
}

/// Range of `c` on which a cycle is the certified maximizer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidityInterval {
    pub cycle: SturmianCycle,
    /// `c_lo < c_hi`, lifted so the midpoint lies in `[0, 1)`.
    pub c_lo: f64,
    pub c_hi: f64,
    pub tol: f64,
    /// Whether `c_lo` comes from the right window end `λ = s_min` (the
    /// expected orientation-reversing case).
    pub reversed: bool,
}

impl ValidityInterval {
    /// Whether some integer translate of `c` lies strictly inside.
    pub fn contains(&self, c: f64) -> bool {
        let x = c - (c - self.c_lo).floor();
        x > self.c_lo && x < self.c_hi
    }

    pub fn contains_closed(&self, c: f64, slack: f64) -> bool {
        let x = c - (c - self.c_lo + slack).floor();
        x >= self.c_lo - slack && x <= self.c_hi + slack
    }
}

/// `u ∈ (−1/q, 0)` with `v(λ; u) = 0`, where `u = λ + c`.
fn solve_offset(q: u32, lambda: f64, tol: f64, cfg: &VcConfig) -> Result<f64> {
    let width = 1.0 / q as f64;
    let pull = 10.0 * cfg.window_guard;
    let v_at = |u: f64| v_at_offset(q, lambda, u, cfg.target_err, cfg.depth_cap).0;
    let (mut lo, mut hi) = (-width + pull, -pull);
    let (va, vb) = (v_at(lo), v_at(hi));
    if sign(&va) == sign(&vb) {
        return Err(Error::Guard {
            lambda,
            distance: pull,
            guard: cfg.window_guard,
        });
    }
    let s_lo = sign(&va);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = v_at(mid);
        if v.value == 0.0 {
            return Ok(mid);
        }
        if sign(&v) == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Endpoints in `c` solving `v_c(s_max − 1/q) = 0` and `v_c(s_min) = 0`.
pub fn validity_interval(q: u32, cycle: &SturmianCycle, tol: f64) -> Result<ValidityInterval> {
    validity_interval_with(q, cycle, tol, &VcConfig::default())
}

pub fn validity_interval_with(
    q: u32,
    cycle: &SturmianCycle,
    tol: f64,
    cfg: &VcConfig,
) -> Result<ValidityInterval> {
    if !(tol >= 1e-12 * (1.0 - 1e-9)) {
        return Err(Error::InvalidParams(format!(
            "tol = {tol} must be at least 1e-12"
        )));
    }
    if cycle.q != q {
        return Err(Error::InvalidParams(format!(
            "cycle has q = {}, expected {q}",
            cycle.q
        )));
    }
    let w = cycle.window();
    let (lam_lo, lam_hi) = (w.lo_f64(), w.hi_f64());
    let bis_tol = (0.05 * tol).max(1e-15);
    let c_at_lo = solve_offset(q, lam_lo, bis_tol, cfg)? - lam_lo;
    let c_at_hi = solve_offset(q, lam_hi, bis_tol, cfg)? - lam_hi;
    // The map λ ↦ c(λ) is expected to reverse orientation; check rather
    // than assume by taking the short way round the circle.
    let d = mod_one(c_at_lo - c_at_hi);
    let (mut c_lo, len, reversed) = if d <= 0.5 {
        (c_at_hi, d, true)
    } else {
        (c_at_lo, 1.0 - d, false)
    };
    let mid = c_lo + 0.5 * len;
    c_lo -= mid.floor();
    Ok(ValidityInterval {
        cycle: cycle.clone(),
        c_lo,
        c_hi: c_lo + len,
        tol,
        reversed,
    })
}

/// Left end of the period-2 validity interval for `q = 2`.
pub const PERIOD2_C_LO: f64 = 0.428133329021334;
/// Right end of the period-2 validity interval for `q = 2`.
pub const PERIOD2_C_HI: f64 = 0.571866670978666;

/// `β(2; c) = log 2 + ½ log|cos π(1/3 + c) cos π(2/3 + c)|` on the period-2
/// validity interval.
pub fn beta_closed_form_q2(c: f64) -> Result<f64> {
    if !(PERIOD2_C_LO..=PERIOD2_C_HI).contains(&c) {
        return Err(Error::Domain {
            value: c,
            domain: format!("[{PERIOD2_C_LO}, {PERIOD2_C_HI}]"),
        });
    }
    let pi = std::f64::consts::PI;
    let prod = ((pi * (1.0 / 3.0 + c)).cos() * (pi * (2.0 / 3.0 + c)).cos()).abs();
    Ok(2f64.ln() + 0.5 * prod.ln())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub interval: ValidityInterval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RowStatus {
    Ok,
    Skipped,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table2Row {
    pub c: f64,
    /// Label for the requested `c`, e.g. `"3/7"`.
    pub label: String,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub period: Option<u32>,
    pub status: RowStatus,
    pub message: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Tables {
    pub table1: Vec<Table1Row>,
    pub table1_errors: Vec<String>,
    pub table2: Vec<Table2Row>,
}

/// Validity intervals for every cycle of period `1..=max_period`, in
/// enumeration order. Failures are returned per row.
pub fn validity_intervals(
    q: u32,
    max_period: u32,
    tol: f64,
) -> Result<Vec<Result<ValidityInterval>>> {
    validity_intervals_with(q, max_period, tol, &VcConfig::default())
}

pub fn validity_intervals_with(
    q: u32,
    max_period: u32,
    tol: f64,
    cfg: &VcConfig,
) -> Result<Vec<Result<ValidityInterval>>> {
    let cycles = enumerate_cycles(q, max_period)?;
    Ok(cycles
        .par_iter()
        .map(|cy| validity_interval_with(q, cy, tol, cfg))
        .collect())
}

/// The interval table (validity intervals of the cycles with period `2..=max_period`)
/// and the `β` table (`β`, `γ` at each requested `c`, SKIPPED when `c` lies in no
/// computed validity interval).
pub fn tables(q: u32, max_period: u32, c_list: &[(String, f64)]) -> Result<Tables> {
    tables_with(q, max_period, c_list, &PipelineConfig::default())
}

pub fn tables_with(
    q: u32,
    max_period: u32,
    c_list: &[(String, f64)],
    cfg: &PipelineConfig,
) -> Result<Tables> {
    let intervals = validity_intervals_with(q, max_period, cfg.validity_tol, &cfg.vc)?;
    let mut ok_intervals = Vec::new();
    let mut out = Tables::default();
    for r in intervals {
        match r {
            Ok(iv) => {
                if iv.cycle.period >= 2 {
                    out.table1.push(Table1Row {
                        interval: iv.clone(),
                    });
                }
                ok_intervals.push(iv);
            }
            Err(e) => out.table1_errors.push(e.to_string()),
        }
    }
    let cycles: Vec<SturmianCycle> = ok_intervals.iter().map(|iv| iv.cycle.clone()).collect();
    out.table2 = c_list
        .par_iter()
        .map(|(label, c)| table2_row(q, label, *c, &ok_intervals, &cycles, cfg))
        .collect();
    Ok(out)
}

fn table2_row(
    q: u32,
    label: &str,
    c: f64,
    intervals: &[ValidityInterval],
    cycles: &[SturmianCycle],
    cfg: &PipelineConfig,
) -> Table2Row {
    let mut row = Table2Row {
        c,
        label: label.to_string(),
        beta: None,
        gamma: None,
        period: None,
        status: RowStatus::Skipped,
        message: None,
    };
    if !intervals.iter().any(|iv| iv.contains(c)) {
        return row;
    }
    let outcome =
        PotentialParams::reduced(q, c).and_then(|p| gelfond_exponent_with(&p, cycles, cfg));
    match outcome {
        Ok(GelfondOutcome::Certified(cert)) => {
            row.beta = Some(cert.beta);
            row.gamma = Some(cert.gamma);
            row.period = Some(cert.cycle.period);
            row.status = RowStatus::Ok;
        }
        Ok(GelfondOutcome::NonPeriodic(r)) => {
            row.status = RowStatus::Error;
            row.message = Some(r.reason);
        }
        Err(e) => {
            row.status = RowStatus::Error;
            row.message = Some(e.to_string());
        }
    }
    row
}

/// One sample of the `β` curve; `None` fields mark gaps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub c: f64,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub period: Option<u32>,
    pub flag: Option<String>,
}

/// `β` and `γ` on the grid `c = i / resolution`, `i = 0 … resolution − 1`,
/// which is symmetric under `c ↦ 1 − c`.
pub fn beta_curve(q: u32, max_period: u32, resolution: usize) -> Result<Vec<CurvePoint>> {
    beta_curve_with(q, max_period, resolution, &PipelineConfig::default())
}

pub fn beta_curve_with(
    q: u32,
    max_period: u32,
    resolution: usize,
    cfg: &PipelineConfig,
) -> Result<Vec<CurvePoint>> {
    if resolution < 2 {
        return Err(Error::InvalidParams("resolution must be at least 2".into()));
    }
    let cycles = enumerate_cycles(q, max_period)?;
    Ok((0..resolution)
        .into_par_iter()
        .map(|i| {
            let c = i as f64 / resolution as f64;
            let mut pt = CurvePoint {
                c,
                beta: None,
                gamma: None,
                period: None,
                flag: None,
            };
            match PotentialParams::new(q, c).and_then(|p| gelfond_exponent_with(&p, &cycles, cfg)) {
                Ok(GelfondOutcome::Certified(cert)) => {
                    pt.beta = Some(cert.beta);
                    pt.gamma = Some(cert.gamma);
                    pt.period = Some(cert.cycle.period);
                }
                Ok(GelfondOutcome::NonPeriodic(r)) => {
                    pt.flag = Some(format!("nonperiodic: {}", r.reason))
                }
                Err(e) => pt.flag = Some(e.to_string()),
            }
            pt
        })
        .collect())
}

/// The rational parameters of the standard `β` table, in increasing order.
pub const TABLE2_PARAMETERS: [&str; 62] = [
    "3/17", "2/11", "4/21", "1/5", "5/24", "4/19", "3/14", "5/23", "2/9", "5/22", "3/13", "4/17",
    "5/21", "6/25", "1/4", "6/23", "5/19", "3/11", "5/18", "7/25", "2/7", "7/24", "5/17", "3/10",
    "7/23", "4/13", "6/19", "7/22", "8/25", "1/3", "8/23", "7/20", "6/17", "5/14", "9/25", "4/11",
    "7/19", "3/8", "8/21", "5/13", "7/18", "9/23", "2/5", "9/22", "7/17", "5/12", "8/19", "3/7",
    "10/23", "7/16", "11/25", "4/9", "9/20", "5/11", "11/24", "6/13", "7/15", "8/17", "9/19",
    "11/23", "12/25", "1/2",
];

/// Parses `c` given as `num/den` or as a decimal.
pub fn parse_parameter(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::InvalidParams(format!("cannot parse parameter '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| bad())?;
            let d: f64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0.0 {
                return Err(bad());
            }
            Ok(n / d)
        }
        None => s.parse().map_err(|_| bad()),
    }
}

/// `(label, value)` pairs for [`tables`].
pub fn parameter_list<S: AsRef<str>>(items: &[S]) -> Result<Vec<(String, f64)>> {
    items
        .iter()
        .map(|s| Ok((s.as_ref().trim().to_string(), parse_parameter(s.as_ref())?)))
        .collect()
}

/// Depth cap re-exported for configuration surfaces.
pub const DEPTH_CAP: usize = DEFAULT_DEPTH_CAP;
/// Window guard re-exported for configuration surfaces.
pub const WINDOW_GUARD: f64 = DEFAULT_WINDOW_GUARD;
