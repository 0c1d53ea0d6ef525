//! Independent oracles for the exit sets, `v_c` and `ψ'`.
//!
//! The `v_c` oracle rebuilds every exit set with exact integer offsets
//! (units of `1 / (D q^N)` for `λ = a / D`) and sums `f(hi) − f(lo)` with a
//! closed-form `f`, sharing no code with the double-double integrator.

mod common;

use approx::assert_abs_diff_eq;
use gelfond::circle::{
    e_lambda_breakpoints, exit_set_masses, exit_sets, psi_difference, psi_prime, v_c_at_depth,
    MIN_PIECE_LEN,
};
use gelfond::potential::PotentialParams;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{f0_prime, vc_oracle_cases};

#[test]
fn v_c_matches_exact_offset_oracle() {
    for case in vc_oracle_cases(7, 20) {
        assert!(
            (case.value - case.oracle).abs() <= case.allowed,
            "q = {}, c = {}, lambda = {}: {} vs {} (allowed {})",
            case.q,
            case.c,
            case.lambda,
            case.value,
            case.oracle,
            case.allowed
        );
        assert!(case.allowed < 1e-9);
    }
}

#[test]
fn depth_doubling_stays_within_bound() {
    for &(q, c, lambda) in &[
        (2, 0.5, 0.2),
        (2, 0.3, 0.5),
        (3, 0.25, 0.55),
        (4, 0.1, 0.77),
    ] {
        let params = PotentialParams::new(q, c).unwrap();
        for n in [10, 20, 30] {
            let a = v_c_at_depth(&params, lambda, n).unwrap();
            let b = v_c_at_depth(&params, lambda, 2 * n).unwrap();
            assert!((a.value - b.value).abs() <= a.err_bound, "q = {q}, n = {n}");
            assert!(b.err_bound <= a.err_bound);
        }
    }
}

#[test]
fn e_lambda_counts_consecutive_stays() {
    // e_λ(x) = #{k >= 0 : T^j x ∈ C_λ' for all j <= k}, checked pointwise in
    // exact arithmetic at dyadic-free rationals.
    let (q, a, d) = (2u32, 3i128, 13i128);
    let lambda = a as f64 / d as f64;
    let segs = e_lambda_breakpoints(q, lambda, 40).unwrap();
    let den: i128 = 1_000_003;
    for j in (0..den).step_by(997) {
        let o = j as f64 / den as f64 / q as f64;
        let x = lambda + o;
        if segs
            .iter()
            .any(|s| (s.0 - x).abs() < 1e-9 || (s.1 - x).abs() < 1e-9)
        {
            continue;
        }
        // x = (a den + j d / q) / (d den); keep numerator integral by scaling by q.
        let big = d * den * q as i128;
        let lam_num = a * den * q as i128;
        let mut num = lam_num + j * d;
        let mut count = 0;
        while count < 40 {
            let off = (num - lam_num).rem_euclid(big);
            if off >= big / q as i128 {
                break;
            }
            count += 1;
            num = (num * q as i128).rem_euclid(big);
        }
        let got = segs.iter().find(|s| s.0 <= x && x < s.1).unwrap().2;
        assert_eq!(got, count, "x = {x}");
    }
}

#[test]
fn psi_prime_matches_finite_difference_of_psi() {
    let params = PotentialParams::new(2, 0.5).unwrap();
    let lambda = 0.25;
    let h = 1e-5;
    for x in [0.3, 0.42, 0.6, 0.71] {
        let p = |x: f64| psi_difference(&params, lambda, x, 1e-14).unwrap().value;
        let fd = (p(x + h) - p(x - h)) / (2.0 * h);
        let d = psi_prime(&params, lambda, x, 60).unwrap();
        assert_abs_diff_eq!(fd, d, epsilon = 1e-6);
    }
}

#[test]
fn psi_prime_truncation_bound() {
    let params = PotentialParams::new(2, 0.5).unwrap();
    let lambda = 0.25;
    let u = lambda + params.c - 1.0;
    let m = f0_prime(2, u).abs().max(f0_prime(2, u + 0.5).abs());
    for depth in [5, 10, 20] {
        for x in [0.1, 0.3, 0.55, 0.9] {
            let a = psi_prime(&params, lambda, x, depth).unwrap();
            let b = psi_prime(&params, lambda, x, depth + 10).unwrap();
            assert!((a - b).abs() <= m * 2f64.powi(-(depth as i32)) + 1e-14);
        }
    }
}

#[test]
fn exit_sets_are_nested_images() {
    let sets = exit_sets(3, 0.41, 12).unwrap();
    for (n, s) in sets.iter().enumerate() {
        assert_abs_diff_eq!(
            s.total_length(),
            3f64.powi(-(n as i32 + 1)),
            epsilon = 1e-15
        );
        assert!(s.is_subset_of(&sets[0], 1e-15));
    }
}

#[test]
fn exit_mass_geometric_sum_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let q: u32 = rng.gen_range(2..=7);
        let lambda: f64 = rng.gen_range(0.0..1.0);
        let total: f64 = exit_set_masses(q, lambda, 60).unwrap().iter().sum();
        let qf = q as f64;
        let want = (1.0 - qf.powi(-60)) / (qf - 1.0);
        assert_abs_diff_eq!(total, want, epsilon = 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exit_masses_are_geometric(q in 2u32..8, lambda in 0.0f64..1.0, n in 1usize..50) {
        let m = exit_set_masses(q, lambda, n).unwrap();
        for (k, &mk) in m.iter().enumerate() {
            let want = (q as f64).powi(-(k as i32 + 1));
            // Pieces shorter than MIN_PIECE_LEN are dropped, so only levels
            // well above that scale are exact.
            if want >= 1e3 * MIN_PIECE_LEN {
                prop_assert!((mk - want).abs() <= 1e-13 * want, "level {} of {}: {} vs {}", k + 1, n, mk, want);
            }
        }
    }

    #[test]
    fn e_lambda_integrates_to_exit_mass(q in 2u32..6, lambda in 0.0f64..1.0) {
        let segs = e_lambda_breakpoints(q, lambda, 30).unwrap();
        let total: f64 = segs.iter().map(|s| (s.1 - s.0) * s.2 as f64).sum();
        let qf = q as f64;
        prop_assert!((total - (1.0 - qf.powi(-30)) / (qf - 1.0)).abs() < 1e-12);
    }
}
