//! Finite-grid confirmations of the inequalities behind the Sturmian
//! condition for `q ≥ 3`, and a direct probe of `F = f_c + ψ − ψ∘T`.
//!
//! In the lemma grids `f = f_0 = log|sin πqx / sin πx|`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::{psi_difference, DEFAULT_TARGET_ERR};
use crate::error::{Error, Result};
use crate::gelfond::{find_lambda_star, GelfondCertificate, DEFAULT_LAMBDA_TOL};
use crate::potential::{f, f0, f_prime, mod_one, PotentialParams};

/// Distance kept from open domain edges.
pub const GRID_OFFSET: f64 = 1e-6;
/// Distance from `∂C_λ` excluded by the probe.
pub const BOUNDARY_EXCLUSION: f64 = 0.01;
/// Distance from the singularities of `f_c` excluded by the probe.
pub const SINGULAR_EXCLUSION: f64 = 1e-6;

/// Outcome of a grid sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub check: String,
    /// Human-readable description of the sampled domain.
    pub grid_spec: String,
    /// The strict inequality being confirmed, e.g. `"max H < 0"`.
    pub criterion: String,
    pub samples: usize,
    pub worst_value: f64,
    pub worst_point: Vec<f64>,
    pub slack: f64,
    pub pass: bool,
}

fn f0v(q: u32, x: f64) -> f64 {
    f0(q, x).to_f64()
}

/// `f_0'(x) = π(q cot πqx − cot πx)`.
fn f0p(q: u32, x: f64) -> f64 {
    let p = PotentialParams { q, c: 0.0 };
    f_prime(&p, x).unwrap_or(f64::NAN)
}

fn open_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let (a, b) = (lo + GRID_OFFSET, hi - GRID_OFFSET);
    if steps <= 1 {
        return vec![0.5 * (a + b)];
    }
    (0..steps)
        .map(|i| a + (b - a) * i as f64 / (steps - 1) as f64)
        .collect()
}

fn max_report(
    check: &str,
    grid_spec: String,
    criterion: &str,
    values: Vec<(f64, Vec<f64>)>,
    slack: f64,
) -> GridReport {
    let samples = values.len();
    let (worst_value, worst_point) = values
        .into_iter()
        .filter(|(v, _)| !v.is_nan())
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap_or((f64::NAN, vec![]));
    GridReport {
        check: check.into(),
        grid_spec,
        criterion: criterion.into(),
        samples,
        worst_value,
        worst_point,
        slack,
        pass: worst_value < -slack,
    }
}

fn require_q(q: u32, min: u32) -> Result<()> {
    if q < min {
        return Err(Error::InvalidParams(format!(
            "check requires q >= {min}, got {q}"
        )));
    }
    Ok(())
}

/// `θ = λ* + 1/q + c` reduced into `(0, 1/q)`.
pub fn theta(params: &PotentialParams) -> Result<f64> {
    let lam = find_lambda_star(params, DEFAULT_LAMBDA_TOL)?;
    Ok(mod_one(lam + params.c + 1.0 / params.q as f64))
}

/// `3/(8q) < θ < 5/(8q)` at every `c` in `c_grid`; the reported value is the
/// smallest margin `min(θ − 3/(8q), 5/(8q) − θ)`.
pub fn theta_bound_check(q: u32, c_grid: &[f64]) -> Result<GridReport> {
    require_q(q, 3)?;
    let qf = q as f64;
    let rows: Vec<(f64, Vec<f64>)> = c_grid
        .par_iter()
        .map(|&c| {
            let th = theta(&PotentialParams::new(q, c)?)?;
            Ok((
                -(th - 3.0 / (8.0 * qf)).min(5.0 / (8.0 * qf) - th),
                vec![c, th],
            ))
        })
        .collect::<Result<_>>()?;
    let mut r = max_report(
        "theta_bound",
        format!("q = {q}, {} values of c", c_grid.len()),
        "min(theta - 3/(8q), 5/(8q) - theta) > 0",
        rows,
        0.0,
    );
    r.worst_value = -r.worst_value;
    r.pass = r.worst_value > 0.0;
    Ok(r)
}

/// `A(s) = log(sin πs / sin π(1/q + s))`.
pub fn a_term(q: u32, s: f64) -> f64 {
    let pi = std::f64::consts::PI;
    ((pi * s).sin() / (pi * (1.0 / q as f64 + s)).sin()).ln()
}

/// `H(t, s) = A(s) + f(0) − f(t) − f'(t)(1/q − t − s)/(q − 1)`.
pub fn h_value(q: u32, t: f64, s: f64) -> f64 {
    let qf = q as f64;
    a_term(q, s) + f0v(q, 0.0) - f0v(q, t) - f0p(q, t) * (1.0 / qf - t - s) / (qf - 1.0)
}

/// `U(s) = log(sin π(1/q − s) / sin π(1/q + s))`.
pub fn u_term(q: u32, s: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let r = 1.0 / q as f64;
    ((pi * (r - s)).sin() / (pi * (r + s)).sin()).ln()
}

/// `G(t, s) = U(s) + f(0) − f(t) + f(1/q − t − (s − t)/(q − 1)) − f(1/q − t)
/// − f'(t)(s − t)/(q − 1)`.
pub fn g_value(q: u32, t: f64, s: f64) -> f64 {
    let qf = q as f64;
    let r = 1.0 / qf;
    let d = (s - t) / (qf - 1.0);
    u_term(q, s) + f0v(q, 0.0) - f0v(q, t) + f0v(q, r - t - d) - f0v(q, r - t) - f0p(q, t) * d
}

/// `H < 0` on `t ∈ (3/(8q), 5/(8q))`, `0 < s ≤ 1/q − t`.
pub fn h_negativity_grid(q: u32, t_steps: usize, s_steps: usize) -> Result<GridReport> {
    require_q(q, 3)?;
    let qf = q as f64;
    let ts = open_grid(3.0 / (8.0 * qf), 5.0 / (8.0 * qf), t_steps);
    let rows: Vec<(f64, Vec<f64>)> = ts
        .par_iter()
        .flat_map_iter(|&t| {
            open_grid(0.0, 1.0 / qf - t, s_steps)
                .into_iter()
                .map(move |s| (h_value(q, t, s), vec![t, s]))
        })
        .collect();
    Ok(max_report(
        "H_negativity",
        format!("q = {q}, {t_steps} x {s_steps}, offset {GRID_OFFSET}"),
        "max H < 0",
        rows,
        0.0,
    ))
}

/// `G < 0` on `t ∈ (3/(8q), 5/(8q))`, `t ≤ s < 1/q`.
pub fn g_negativity_grid(q: u32, t_steps: usize, s_steps: usize) -> Result<GridReport> {
    require_q(q, 4)?;
    let qf = q as f64;
    let ts = open_grid(3.0 / (8.0 * qf), 5.0 / (8.0 * qf), t_steps);
    let rows: Vec<(f64, Vec<f64>)> = ts
        .par_iter()
        .flat_map_iter(|&t| {
            // s = t is allowed, so only the right end is offset.
            open_grid(t - GRID_OFFSET, 1.0 / qf, s_steps)
                .into_iter()
                .map(move |s| (g_value(q, t, s), vec![t, s]))
        })
        .collect();
    Ok(max_report(
        "G_negativity",
        format!("q = {q}, {t_steps} x {s_steps}, offset {GRID_OFFSET}"),
        "max G < 0",
        rows,
        0.0,
    ))
}

/// Residuals of the Sturmian condition at one certified `c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    /// `max |F − β|` over samples inside `C_λ`.
    pub inside: GridReport,
    /// `max (F − β)` over samples outside `C_λ`.
    pub outside: GridReport,
    pub pass: bool,
}

/// `F(x) − β` with `F(x) = f_c(x) + ψ(x) − ψ(Tx)`; `-inf` at zeros of `φ_c`.
pub fn sturmian_residual(params: &PotentialParams, lambda: f64, beta: f64, x: f64) -> Result<f64> {
    let fx = match f(params, x).finite() {
        Some(v) => v,
        None => return Ok(f64::NEG_INFINITY),
    };
    let tx = mod_one(params.q as f64 * x);
    let px = psi_difference(params, lambda, x, DEFAULT_TARGET_ERR)?.value;
    let ptx = psi_difference(params, lambda, tx, DEFAULT_TARGET_ERR)?.value;
    Ok(fx + px - ptx - beta)
}

/// Samples `F − β` on `C_λ = [λ, λ + 1/q]` and on its complement, keeping
/// [`BOUNDARY_EXCLUSION`] away from `∂C_λ` and [`SINGULAR_EXCLUSION`] away
/// from the singularities of `f_c`. The inside report's value is the
/// residual `max |F − β|`, which must stay below `inside_tol`.
pub fn sturmian_condition_probe(
    cert: &GelfondCertificate,
    samples: usize,
    inside_tol: f64,
) -> Result<ProbeReport> {
    if samples < 2 {
        return Err(Error::InvalidParams("samples must be at least 2".into()));
    }
    let params = &cert.params;
    let q = params.q as f64;
    let lam = cert.lambda_star;
    let beta = cert.beta;
    let ex = BOUNDARY_EXCLUSION;
    let inside_pts: Vec<f64> = (0..samples)
        .map(|i| lam + ex + (1.0 / q - 2.0 * ex) * i as f64 / (samples - 1) as f64)
        .collect();
    let out_len = 1.0 - 1.0 / q - 2.0 * ex;
    let outside_pts: Vec<f64> = (0..samples)
        .map(|i| lam + 1.0 / q + ex + out_len * i as f64 / (samples - 1) as f64)
        .filter(|&x| crate::potential::singularity_distance(params, x) >= SINGULAR_EXCLUSION)
        .collect();
    let eval = |pts: &[f64], abs: bool| -> Result<Vec<(f64, Vec<f64>)>> {
        pts.par_iter()
            .map(|&x| {
                let x = mod_one(x);
                let r = sturmian_residual(params, lam, beta, x)?;
                Ok((if abs { r.abs() } else { r }, vec![x]))
            })
            .collect()
    };
    let describe = |what: &str, n: usize| {
        format!(
            "q = {}, c = {}, lambda = {lam}, {n} samples {what} C_lambda, exclusion {ex}",
            params.q, params.c
        )
    };
    let mut inside = max_report(
        "sturmian_inside",
        describe("inside", inside_pts.len()),
        "max |F - beta| < inside_tol",
        eval(&inside_pts, true)?,
        0.0,
    );
    inside.slack = inside_tol;
    inside.pass = inside.worst_value < inside_tol;
    let outside = max_report(
        "sturmian_outside",
        describe("outside", outside_pts.len()),
        "max (F - beta) < 0",
        eval(&outside_pts, false)?,
        0.0,
    );
    let pass = inside.pass && outside.pass;
    Ok(ProbeReport {
        inside,
        outside,
        pass,
    })
}
