//! Oracles shared by the integration tests and the acceptance suite.
#![allow(dead_code)]

use std::f64::consts::PI;

/// `log |sin πq y / sin π y|` for `y` in the central arc, `y ≠ 0`.
pub fn f0(q: u32, y: f64) -> f64 {
    ((PI * q as f64 * y).sin() / (PI * y).sin()).abs().ln()
}

pub fn f0_prime(q: u32, y: f64) -> f64 {
    let qf = q as f64;
    PI * qf / (PI * qf * y).tan() - PI / (PI * y).tan()
}

/// Exact exit sets for `λ = a / d`: arcs `(offset, length)` in units of
/// `1 / (d q^n_max)`, offsets measured from `λ`.
pub fn exact_levels(q: u32, a: i128, d: i128, n_max: u32) -> (i128, Vec<Vec<(i128, i128)>>) {
    let qi = q as i128;
    let l = d * qi.pow(n_max);
    // τ(λ + o) = λ + ((o + (1 − q)λ) mod 1) / q
    let delta = (((1 - qi) * a * qi.pow(n_max)) % l + l) % l;
    let mut cur = vec![(0i128, l / qi)];
    let mut levels = Vec::new();
    for _ in 0..n_max {
        let mut next = Vec::new();
        for &(o, h) in &cur {
            let s = (o + delta) % l;
            if s + h <= l {
                next.push((s / qi, h / qi));
            } else {
                let h1 = l - s;
                next.push((s / qi, h1 / qi));
                next.push((0, (h - h1) / qi));
            }
        }
        levels.push(std::mem::replace(&mut cur, next));
    }
    (l, levels)
}

/// Returns `(v, bound)` for the oracle value of `v_c(λ)` given `u = λ + c`.
pub fn v_oracle(q: u32, a: i128, d: i128, u: f64, n_max: u32) -> (f64, f64) {
    let (l, levels) = exact_levels(q, a, d, n_max);
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut evals = 0usize;
    for lvl in &levels {
        for &(o, h) in lvl {
            let lo = u + o as f64 / l as f64;
            let hi = u + (o + h) as f64 / l as f64;
            // Kahan summation keeps the oracle's own rounding small.
            let y = f0(q, hi) - f0(q, lo) - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            evals += 2;
        }
    }
    let qf = q as f64;
    let m = f0_prime(q, u).abs().max(f0_prime(q, u + 1.0 / qf).abs());
    let tail = m * qf.powi(-(n_max as i32)) / (qf - 1.0);
    let rounding = evals as f64 * 4.0 * f64::EPSILON * (m + 2.0);
    (sum, tail + rounding)
}

/// One random comparison of `v_c` against [`v_oracle`].
pub struct VcCase {
    pub q: u32,
    pub c: f64,
    pub lambda: f64,
    pub value: f64,
    pub oracle: f64,
    /// Certified bound of the library value plus the oracle's own bound.
    pub allowed: f64,
}

/// `count` random `(q, c, λ)` with `q ∈ 2..=5`, `λ = a / 2^16` kept at least
/// `0.02` inside the window `W_c`.
pub fn vc_oracle_cases(seed: u64, count: usize) -> Vec<VcCase> {
    use gelfond::circle::{v_c_best_effort, VcConfig};
    use gelfond::potential::{centered, PotentialParams};
    use rand::{Rng, SeedableRng};

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let d: i128 = 1 << 16;
    (0..count)
        .map(|_| {
            let q: u32 = rng.gen_range(2..=5);
            let n_max = match q {
                2 => 60,
                3 => 40,
                _ => 30,
            };
            let qf = q as f64;
            let c: f64 = rng.gen_range(0.0..1.0);
            let target_u: f64 = rng.gen_range(-1.0 / qf + 0.02..-0.02);
            let a = (((target_u - c) * d as f64).round() as i128).rem_euclid(d);
            let lambda = a as f64 / d as f64;
            let u = centered(lambda + c);
            let params = PotentialParams::new(q, c).unwrap();
            let v = v_c_best_effort(&params, lambda, &VcConfig::default()).unwrap();
            let (oracle, bound) = v_oracle(q, a, d, u, n_max);
            VcCase {
                q,
                c,
                lambda,
                value: v.value,
                oracle,
                allowed: v.err_bound + bound,
            }
        })
        .collect()
}
