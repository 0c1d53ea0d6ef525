//! Circle intervals, the inverse branch `τ_λ`, the exit sets
//! `A_n = τ_λ^{n-1}(C_λ')` and the certified evaluation of `v_c(λ)`.
//!
//! Internally every set lives in *offset coordinates* `o = x − λ`, so
//! `C_λ' = [0, 1/q)` and `τ_λ` becomes `o ↦ frac(o + δ) / q` with
//! `δ = frac(−(q−1)λ)`. Offsets stay small, which keeps the endpoints of
//! deep exit sets accurate to a few ulps.
//!
//! The parameter `c` enters only through `u = λ + c`. The admissible window
//! `W_c = (−1/q − c, −c)` becomes `u ∈ (−1/q, 0)`, on which `C_λ + c` sits
//! inside the central arc `(−1/q, 1/q)` where `f_0` is smooth and concave.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{CompensatedSum, DoubleDouble};
use crate::potential::{
    centered, central_increment_width, cheb, f0_prime_centered, f0_second_centered, mod_one,
    PotentialParams,
};

pub const DEFAULT_TARGET_ERR: f64 = 1e-13;
pub const DEFAULT_DEPTH_CAP: usize = 400;
/// Minimum distance between `λ` and the edges of `W_c`.
pub const DEFAULT_WINDOW_GUARD: f64 = 1e-9;
/// Pieces shorter than this are dropped; their mass is charged to the error
/// bound.
pub const MIN_PIECE_LEN: f64 = 1e-15;

/// A point of `T = ℝ/ℤ`, stored in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct CirclePoint(f64);

impl CirclePoint {
    pub fn new(x: f64) -> Self {
        Self(mod_one(x))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Half-open arc `[lo, lo + len)` of the circle, `0 <= len <= 1`.
///
/// `len = 1` is the whole circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleInterval {
    lo: CirclePoint,
    hi_raw: f64,
}

impl CircleInterval {
    pub fn new(lo: f64, len: f64) -> Result<Self> {
        if !lo.is_finite() || !(0.0..=1.0).contains(&len) {
            return Err(Error::InvalidParams(format!(
                "arc [{lo}, {lo} + {len}) needs a finite start and length in [0, 1]"
            )));
        }
        let lo = CirclePoint::new(lo);
        Ok(Self {
            lo,
            hi_raw: lo.value() + len,
        })
    }

    /// Arc between two lifted coordinates `lo <= hi < lo + 1`.
    pub fn from_lifted(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi - lo)
    }

    pub fn lo(&self) -> f64 {
        self.lo.value()
    }

    /// Upper end in the lift where `lo ∈ [0, 1)`; may exceed one.
    pub fn hi_raw(&self) -> f64 {
        self.hi_raw
    }

    pub fn hi(&self) -> f64 {
        mod_one(self.hi_raw)
    }

    pub fn len(&self) -> f64 {
        self.hi_raw - self.lo.value()
    }

    pub fn is_empty(&self) -> bool {
        self.len() <= 0.0
    }

    pub fn contains(&self, x: f64) -> bool {
        mod_one(x - self.lo.value()) < self.len()
    }
}

/// Finite union of pairwise-disjoint arcs, sorted by their start point.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IntervalUnion {
    parts: Vec<CircleInterval>,
}

impl IntervalUnion {
    /// Validating constructor: empty arcs are removed and overlaps rejected.
    pub fn new(parts: Vec<CircleInterval>) -> Result<Self> {
        let u = Self::from_disjoint(parts);
        let tol = 8.0 * f64::EPSILON;
        let n = u.parts.len();
        for i in 0..n {
            let cur = &u.parts[i];
            let next_lo = if i + 1 < n {
                u.parts[i + 1].lo()
            } else {
                u.parts[0].lo() + 1.0
            };
            if n > 1 && cur.hi_raw > next_lo + tol || n == 1 && cur.len() > 1.0 {
                return Err(Error::InvalidParams(format!(
                    "arcs overlap near {}",
                    cur.lo()
                )));
            }
        }
        Ok(u)
    }

    fn from_disjoint(mut parts: Vec<CircleInterval>) -> Self {
        parts.retain(|p| !p.is_empty());
        parts.sort_by(|a, b| a.lo().total_cmp(&b.lo()));
        Self { parts }
    }

    pub fn full_circle() -> Self {
        Self {
            parts: vec![CircleInterval {
                lo: CirclePoint(0.0),
                hi_raw: 1.0,
            }],
        }
    }

    pub fn parts(&self) -> &[CircleInterval] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.parts.iter().map(CircleInterval::len).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    /// Every arc of `self` lies inside some arc of `other`, up to `tol`.
    pub fn is_subset_of(&self, other: &IntervalUnion, tol: f64) -> bool {
        self.parts.iter().all(|p| {
            other.parts.iter().any(|o| {
                let start = mod_one(p.lo() - o.lo());
                let start = if start > 1.0 - tol {
                    start - 1.0
                } else {
                    start
                };
                start >= -tol && start + p.len() <= o.len() + tol
            })
        })
    }
}

/// `δ = frac(−(q−1)λ)`: in offset coordinates `τ_λ(λ + o) = λ + frac(o + δ)/q`.
fn tau_shift(q: u32, lambda: f64) -> DoubleDouble {
    DoubleDouble::mul_f64(-((q - 1) as f64), lambda).fract()
}

/// An arc in offset coordinates: `[λ + a, λ + a + h)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Piece {
    pub a: DoubleDouble,
    pub h: DoubleDouble,
}

impl Piece {
    fn new(a: f64, h: f64) -> Self {
        Self {
            a: DoubleDouble::from_f64(a),
            h: DoubleDouble::from_f64(h),
        }
    }
}

/// Apply `τ_λ` to one offset arc with `a ∈ [0, 1)`, `h <= 1`. At most two
/// pieces come out because `τ_λ` has a single discontinuity.
fn tau_piece(q: u32, delta: DoubleDouble, p: Piece, out: &mut Vec<Piece>) {
    let mut s = p.a + delta;
    if s.ge_one() {
        s = s - DoubleDouble::ONE;
    }
    let end = s + p.h;
    if !(end - DoubleDouble::ONE).gt_zero() {
        out.push(Piece {
            a: s.div_int(q),
            h: p.h.div_int(q),
        });
    } else {
        let h1 = DoubleDouble::ONE - s;
        out.push(Piece {
            a: s.div_int(q),
            h: h1.div_int(q),
        });
        out.push(Piece {
            a: DoubleDouble::ZERO,
            h: (p.h - h1).div_int(q),
        });
    }
}

fn piece_to_arc(lam: f64, p: &Piece) -> CircleInterval {
    let lo = CirclePoint::new(lam + p.a.to_f64());
    CircleInterval {
        lo,
        hi_raw: lo.value() + p.h.to_f64(),
    }
}

/// Image of a union under `τ_λ`.
///
/// Each arc is split at the discontinuity `qλ mod 1` and both pieces are
/// mapped affinely with slope `1/q` into `C_λ' = [λ, λ + 1/q)`.
pub fn tau_image(q: u32, lambda: f64, u: &IntervalUnion) -> IntervalUnion {
    let delta = tau_shift(q, lambda);
    let mut out = Vec::with_capacity(2 * u.len());
    for part in &u.parts {
        let p = Piece::new(mod_one(part.lo() - lambda), part.len());
        tau_piece(q, delta, p, &mut out);
    }
    let lam = mod_one(lambda);
    IntervalUnion::from_disjoint(out.iter().map(|p| piece_to_arc(lam, p)).collect())
}

fn check_depth(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("depth must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::Depth { requested: n, cap });
    }
    Ok(())
}

fn full_arc(q: u32) -> Vec<Piece> {
    vec![Piece {
        a: DoubleDouble::ZERO,
        h: DoubleDouble::ONE.div_int(q),
    }]
}

/// `A_1, …, A_N` in offset coordinates, dropping pieces below
/// [`MIN_PIECE_LEN`].
fn exit_levels(q: u32, lambda: f64, n: usize) -> Vec<Vec<Piece>> {
    let delta = tau_shift(q, lambda);
    let mut levels = Vec::with_capacity(n);
    let mut cur = full_arc(q);
    for _ in 0..n {
        let mut next = Vec::with_capacity(cur.len() + 1);
        for p in &cur {
            tau_piece(q, delta, *p, &mut next);
        }
        next.retain(|p| p.h.hi >= MIN_PIECE_LEN);
        levels.push(std::mem::replace(&mut cur, next));
    }
    levels
}

/// The exit sets `A_1 = C_λ'`, `A_{n+1} = τ_λ(A_n)` up to depth `n`.
pub fn exit_sets(q: u32, lambda: f64, n: usize) -> Result<Vec<IntervalUnion>> {
    exit_sets_with_cap(q, lambda, n, DEFAULT_DEPTH_CAP)
}

pub fn exit_sets_with_cap(q: u32, lambda: f64, n: usize, cap: usize) -> Result<Vec<IntervalUnion>> {
    check_depth(n, cap)?;
    let lam = mod_one(lambda);
    Ok(exit_levels(q, lambda, n)
        .into_iter()
        .map(|lvl| IntervalUnion::from_disjoint(lvl.iter().map(|p| piece_to_arc(lam, p)).collect()))
        .collect())
}

/// Total length of each exit set, summed in double-double so the geometric
/// identity `|A_n| = q^{-n}` can be checked far below `1e-15`.
pub fn exit_set_masses(q: u32, lambda: f64, n: usize) -> Result<Vec<f64>> {
    check_depth(n, DEFAULT_DEPTH_CAP)?;
    Ok(exit_levels(q, lambda, n)
        .iter()
        .map(|lvl| {
            lvl.iter()
                .fold(DoubleDouble::ZERO, |acc, p| acc + p.h)
                .to_f64()
        })
        .collect())
}

/// Step function of `e_λ` in offset coordinates: `(o_lo, o_hi, value)`
/// segments partitioning `[0, 1/q)`.
fn e_lambda_segments(q: u32, lambda: f64, n: usize) -> Vec<(f64, f64, u32)> {
    let mut events: Vec<(f64, i32)> = Vec::new();
    for lvl in exit_levels(q, lambda, n) {
        for p in lvl {
            events.push((p.a.to_f64(), 1));
            events.push(((p.a + p.h).to_f64(), -1));
        }
    }
    events.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let mut segs = Vec::new();
    let mut level = 0i32;
    let mut prev = 0.0;
    for (x, d) in events {
        if x > prev {
            segs.push((prev, x, level.max(0) as u32));
            prev = x;
        }
        level += d;
    }
    segs
}

/// `e_λ` truncated at depth `n` as a step function on `[λ, λ + 1/q)`:
/// consecutive `(x_lo, x_hi, value)` segments in the lift starting at `λ`.
pub fn e_lambda_breakpoints(q: u32, lambda: f64, n: usize) -> Result<Vec<(f64, f64, u32)>> {
    check_depth(n, DEFAULT_DEPTH_CAP)?;
    Ok(e_lambda_segments(q, lambda, n)
        .into_iter()
        .map(|(a, b, e)| (lambda + a, lambda + b, e))
        .collect())
}

/// Samples of `e_λ` (truncated at depth `n`) at the cell midpoints
/// `x_i = (i + 1/2) / grid_size` of the circle.
pub fn e_lambda_profile(
    q: u32,
    lambda: f64,
    n: usize,
    grid_size: usize,
) -> Result<Vec<(f64, u32)>> {
    if grid_size < 2 {
        return Err(Error::InvalidParams("grid_size must be at least 2".into()));
    }
    check_depth(n, DEFAULT_DEPTH_CAP)?;
    let segs = e_lambda_segments(q, lambda, n);
    Ok((0..grid_size)
        .map(|i| {
            let x = (i as f64 + 0.5) / grid_size as f64;
            let o = mod_one(x - lambda);
            let k = segs.partition_point(|s| s.1 <= o);
            (x, segs.get(k).map_or(0, |s| s.2))
        })
        .collect())
}

/// A truncated value of `v_c(λ)` with a rigorous error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VcValue {
    pub value: f64,
    pub err_bound: f64,
    pub depth: usize,
}

impl VcValue {
    /// Sign certified beyond the error bound, or `0` when undecided.
    pub fn certified_sign(&self) -> i8 {
        if self.value > self.err_bound {
            1
        } else if self.value < -self.err_bound {
            -1
        } else {
            0
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VcConfig {
    pub target_err: f64,
    pub depth_cap: usize,
    pub window_guard: f64,
}

impl Default for VcConfig {
    fn default() -> Self {
        Self {
            target_err: DEFAULT_TARGET_ERR,
            depth_cap: DEFAULT_DEPTH_CAP,
            window_guard: DEFAULT_WINDOW_GUARD,
        }
    }
}

/// `u = λ + c` reduced into `(−1/q, 0)`, checked against the guard.
pub fn window_offset(params: &PotentialParams, lambda: f64, guard: f64) -> Result<f64> {
    let u = centered(lambda + params.c);
    let q = params.q as f64;
    let dist = (u + 1.0 / q).min(-u);
    if dist <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "lambda = {lambda} is outside the window W_c for c = {}",
            params.c
        )));
    }
    if dist < guard {
        return Err(Error::Guard {
            lambda,
            distance: dist,
            guard,
        });
    }
    Ok(u)
}

enum Stop {
    Target { target: f64, cap: usize },
    Depth(usize),
}

/// Sums `Σ_n ∫_{τ^n(S)} f_0'(u + o) do` over the iterated images of an
/// initial offset set `S`, each integral taken as an exact difference of
/// `f` values.
pub(crate) struct OrbitIntegrator {
    q: u32,
    u: f64,
    delta: DoubleDouble,
    m_bound: f64,
    k_bound: f64,
    per_length: f64,
    per_increment: f64,
}

impl OrbitIntegrator {
    pub(crate) fn new(q: u32, u: f64, lambda: f64) -> Self {
        let qf = q as f64;
        let right = u + 1.0 / qf;
        // f' is monotone and |f''| grows with |y| on the central arc, while
        // g = sin πqy / sin πy decreases in |y|; all extremes over C_λ sit at
        // its endpoints.
        let m_bound = f0_prime_centered(q, u)
            .abs()
            .max(f0_prime_centered(q, right).abs());
        let k_bound = f0_second_centered(q, u)
            .abs()
            .max(f0_second_centered(q, right).abs());
        let g_min = cheb(q, u).0.min(cheb(q, right).0);
        let eps = f64::EPSILON;
        // Rounding of a piece's width costs up to m per unit length, and the
        // sine products in the Chebyshev difference carry O(q² ε / g)
        // absolute error per unit length.
        let per_length = eps * (2.0 * m_bound + 2.0 * PI * qf * qf / g_min);
        let per_increment = 4.0 * eps * (1.0 + qf * qf / g_min);
        Self {
            q,
            u,
            delta: tau_shift(q, lambda),
            m_bound,
            k_bound,
            per_length,
            per_increment,
        }
    }

    fn run(&self, init: Vec<Piece>, skip_first: bool, stop: Stop) -> (VcValue, bool) {
        let q = self.q;
        let qf = q as f64;
        let m = self.m_bound;
        let eps = f64::EPSILON;
        let mut cur = init;
        if skip_first {
            let mut next = Vec::with_capacity(cur.len() + 1);
            for p in &cur {
                tau_piece(q, self.delta, *p, &mut next);
            }
            cur = next;
        }
        let mut sum = CompensatedSum::new();
        let mut slack = 0.0;
        let mut dropped = 0.0;
        let mut depth = 0;
        loop {
            depth += 1;
            let mut surviving = 0.0;
            let mut kept = Vec::with_capacity(cur.len());
            for p in cur {
                let h = p.h.to_f64();
                if h < MIN_PIECE_LEN {
                    dropped += h;
                    continue;
                }
                let inc = central_increment_width(q, self.u + p.a.to_f64(), h);
                sum.add(inc);
                slack += self.per_length * h + self.per_increment * inc.abs();
                surviving += h;
                kept.push(p);
            }
            // Surviving pieces at this depth carry descendants of total mass
            // surviving/(q-1); a dropped piece also loses its own term.
            // Rounding of `u + a` translates each piece by about one ulp;
            // the cost is at most ε times the variation of f' over the
            // level, itself bounded by 2m and by k·(level mass).
            slack += eps * (2.0 * m).min(self.k_bound * surviving);
            let tail = m * surviving / (qf - 1.0);
            let lost = m * dropped * qf / (qf - 1.0);
            let bound = (tail + lost + slack + 4.0 * eps * sum.value().abs()) * (1.0 + 1e-6);
            let done = match stop {
                Stop::Target { target, cap } => {
                    if bound <= target {
                        Some(true)
                    } else if depth >= cap || kept.is_empty() {
                        Some(false)
                    } else {
                        None
                    }
                }
                Stop::Depth(n) => (depth >= n || kept.is_empty()).then_some(true),
            };
            if let Some(ok) = done {
                return (
                    VcValue {
                        value: sum.value(),
                        err_bound: bound,
                        depth,
                    },
                    ok,
                );
            }
            let mut next = Vec::with_capacity(kept.len() + 1);
            for p in kept {
                tau_piece(q, self.delta, p, &mut next);
            }
            cur = next;
        }
    }
}

/// `v_c(λ) = Σ_n ∫_{A_n} f_c'`, evaluated to `target_err` with the default
/// depth cap and window guard.
pub fn v_c(params: &PotentialParams, lambda: f64, target_err: f64) -> Result<VcValue> {
    v_c_with(
        params,
        lambda,
        &VcConfig {
            target_err,
            ..VcConfig::default()
        },
    )
}

/// `v_c` with explicit configuration. Fails with [`Error::Depth`] if the
/// target cannot be met; use [`v_c_best_effort`] to get the achieved bound.
pub fn v_c_with(params: &PotentialParams, lambda: f64, cfg: &VcConfig) -> Result<VcValue> {
    let (v, ok) = v_c_run(params, lambda, cfg)?;
    if ok {
        Ok(v)
    } else {
        Err(Error::Depth {
            requested: v.depth,
            cap: cfg.depth_cap,
        })
    }
}

/// Like [`v_c_with`] but returns the tightest bound reached instead of
/// failing when the target is out of reach.
pub fn v_c_best_effort(params: &PotentialParams, lambda: f64, cfg: &VcConfig) -> Result<VcValue> {
    Ok(v_c_run(params, lambda, cfg)?.0)
}

fn v_c_run(params: &PotentialParams, lambda: f64, cfg: &VcConfig) -> Result<(VcValue, bool)> {
    if !(cfg.target_err > 0.0) {
        return Err(Error::InvalidParams("target_err must be positive".into()));
    }
    let u = window_offset(params, lambda, cfg.window_guard)?;
    Ok(v_at_offset(
        params.q,
        lambda,
        u,
        cfg.target_err,
        cfg.depth_cap,
    ))
}

/// `v_c(λ)` truncated at exactly `depth` exit sets.
pub fn v_c_at_depth(params: &PotentialParams, lambda: f64, depth: usize) -> Result<VcValue> {
    check_depth(depth, DEFAULT_DEPTH_CAP)?;
    let u = window_offset(params, lambda, DEFAULT_WINDOW_GUARD)?;
    let integ = OrbitIntegrator::new(params.q, u, lambda);
    Ok(integ.run(full_arc(params.q), false, Stop::Depth(depth)).0)
}

/// `v` at fixed `λ` as a function of the offset `u = λ + c ∈ (−1/q, 0)`;
/// the bool reports whether `target` was met. Used when solving for `c`.
pub(crate) fn v_at_offset(q: u32, lambda: f64, u: f64, target: f64, cap: usize) -> (VcValue, bool) {
    OrbitIntegrator::new(q, u, lambda).run(full_arc(q), false, Stop::Target { target, cap })
}

/// `ψ(x) − ψ(λ)` for the transfer function with
/// `ψ'(x) = Σ_{n≥1} f_c'(τ_λ^n x) / q^n`, integrated exactly as
/// `Σ_{n≥1} ∫_{τ_λ^n([λ, x])} f_c'` along the arc from `λ` to `x`.
pub fn psi_difference(
    params: &PotentialParams,
    lambda: f64,
    x: f64,
    target_err: f64,
) -> Result<VcValue> {
    let u = window_offset(params, lambda, DEFAULT_WINDOW_GUARD)?;
    let len = mod_one(x - lambda);
    if len == 0.0 {
        return Ok(VcValue {
            value: 0.0,
            err_bound: 0.0,
            depth: 0,
        });
    }
    let integ = OrbitIntegrator::new(params.q, u, lambda);
    let (v, _) = integ.run(
        vec![Piece::new(0.0, len)],
        true,
        Stop::Target {
            target: target_err,
            cap: DEFAULT_DEPTH_CAP,
        },
    );
    Ok(v)
}

/// `ψ'(x) = Σ_{n=1..depth} f_c'(τ_λ^n x) / q^n`.
pub fn psi_prime(params: &PotentialParams, lambda: f64, x: f64, depth: usize) -> Result<f64> {
    let u = window_offset(params, lambda, DEFAULT_WINDOW_GUARD)?;
    let q = params.q;
    let delta = tau_shift(q, lambda);
    let mut o = DoubleDouble::from_f64(mod_one(x - lambda));
    let mut scale = 1.0;
    let mut s = CompensatedSum::new();
    for _ in 0..depth {
        o = (o + delta).fract().div_int(q);
        scale /= q as f64;
        s.add(f0_prime_centered(q, u + o.to_f64()) * scale);
    }
    Ok(s.value())
}
