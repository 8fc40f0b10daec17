//! Property tests: bound monotonicity in the directions the formulas dictate,
//! divergence orderings on random grid pairs, tail-aware Gaussian mass
//! consistency, and membership/distance agreement on random boxes.

use inout::geometry::ConvexBody;
use inout::numerics::{gauss_mass, ln_gauss_mass, normal_cdf, normal_sf};
use inout::oracle1d::{divergence, sup_ratio, Div, Grid1D};
use inout::stats::wilson_interval;
use inout::theory;
use proptest::prelude::*;

proptest! {
    #[test]
    fn renyi_lsi_bound_monotone(
        r0 in 0.01f64..10.0,
        k in 1u64..200,
        h in 1e-4f64..1.0,
        c_lsi in 1e-2f64..10.0,
        q in 1.0f64..8.0,
    ) {
        let v = theory::renyi_decay_lsi(r0, k, h, c_lsi, q);
        prop_assert!(v <= theory::renyi_decay_lsi(r0, k - 1, h, c_lsi, q) + 1e-15);
        prop_assert!(v <= theory::renyi_decay_lsi(r0, k, h, 1.1 * c_lsi, q) + 1e-15);
        prop_assert!(theory::renyi_decay_lsi(r0, k, 1.1 * h, c_lsi, q) <= v + 1e-15);
        prop_assert!(v <= theory::renyi_decay_lsi(1.1 * r0, k, h, c_lsi, q) + 1e-15);
    }

    #[test]
    fn chi2_pi_bound_monotone(
        x0 in 0.01f64..10.0,
        k in 1u64..200,
        h in 1e-4f64..1.0,
        c_pi in 1e-2f64..10.0,
    ) {
        let v = theory::chi2_decay_pi(x0, k, h, c_pi);
        prop_assert!(v <= theory::chi2_decay_pi(x0, k - 1, h, c_pi) + 1e-15);
        prop_assert!(v <= theory::chi2_decay_pi(x0, k, h, 1.1 * c_pi) + 1e-15);
        prop_assert!(theory::chi2_decay_pi(x0, k, 1.2 * h, c_pi) <= v + 1e-15);
    }

    #[test]
    fn two_phase_bound_non_increasing_in_k(
        r0 in 0.0f64..6.0,
        h in 1e-3f64..1.0,
        c_pi in 1e-2f64..5.0,
        q in 2.0f64..6.0,
    ) {
        let mut last = f64::INFINITY;
        for k in 0..100u64 {
            let v = theory::renyi_decay_pi_two_phase(r0, k, h, c_pi, q);
            prop_assert!(v <= last + 1e-12, "k={k}: {v} > {last}");
            prop_assert!(v >= 0.0 || r0 >= 1.0);
            last = v;
        }
    }

    #[test]
    fn blowup_bound_monotone(
        delta in 0.0f64..3.0,
        h in 1e-4f64..0.5,
        d in 1u32..50,
    ) {
        let v = theory::blowup_tail_bound(delta, h, d);
        prop_assert!((0.0..=1.0).contains(&v));
        prop_assert!(v <= theory::blowup_tail_bound(delta, 1.1 * h, d) + 1e-15);
        prop_assert!(v <= theory::blowup_tail_bound(delta, h, d + 1) + 1e-15);
        // Decreasing in δ past the formula's turning point δ = h·d.
        let past = delta.max(h * d as f64);
        prop_assert!(
            theory::blowup_tail_bound(past + 0.1, h, d)
                <= theory::blowup_tail_bound(past, h, d) + 1e-15
        );
    }

    #[test]
    fn conditioning_bias_monotone(q in 1.01f64..20.0, eta in 1e-6f64..0.9) {
        let v = theory::conditioning_bias(q, eta).unwrap();
        prop_assert!(v >= 0.0);
        prop_assert!(theory::conditioning_bias(q + 0.5, eta).unwrap() <= v + 1e-15);
        prop_assert!(v <= theory::conditioning_bias(q, (eta * 1.1).min(0.95)).unwrap() + 1e-15);
        prop_assert!(theory::conditioning_bias(f64::INFINITY, eta).unwrap() <= v + 1e-15);
    }

    #[test]
    fn warmness_bound_monotone(
        d in 1u32..200,
        h in 1e-4f64..10.0,
        big_d in 1.0f64..50.0,
    ) {
        let v = theory::point_start_log_warmness(d, h, big_d);
        prop_assert!(v.is_finite());
        prop_assert!(theory::point_start_log_warmness(d, h, big_d + 1.0) >= v);
        prop_assert!(theory::point_start_log_warmness(d, 1.1 * h, big_d) <= v);
        prop_assert!(theory::point_start_log_warmness(d + 1, h, big_d) >= v);
    }

    #[test]
    fn schedule_monotone_in_inputs(
        m in 1u64..10_000,
        warm in 1.0f64..100.0,
        eta in 1e-6f64..0.9,
        d in 1u32..100,
    ) {
        let s = theory::per_iteration_schedule(m, warm, eta, d).unwrap();
        prop_assert!(s.h > 0.0 && s.trial_cap >= 1.0 && s.z >= 9.0);
        // N grows with m and M, shrinks as η grows.
        let more_iters = theory::per_iteration_schedule(m + 1, warm, eta, d).unwrap();
        prop_assert!(more_iters.trial_cap >= s.trial_cap);
        let warmer = theory::per_iteration_schedule(m, warm * 2.0, eta, d).unwrap();
        prop_assert!(warmer.trial_cap >= s.trial_cap);
        let easier = theory::per_iteration_schedule(m, warm, (eta * 1.5).min(0.95), d).unwrap();
        prop_assert!(easier.trial_cap <= s.trial_cap);
        // h carries the exact d⁻² factor.
        let finer = theory::per_iteration_schedule(m, warm, eta, 2 * d).unwrap();
        prop_assert!((finer.h - s.h / 4.0).abs() <= 1e-12 * s.h);
    }

    #[test]
    fn divergence_orderings_on_random_grids(
        raw_mu in prop::collection::vec(0.05f64..1.0, 64),
        raw_nu in prop::collection::vec(0.05f64..1.0, 64),
    ) {
        let mu = Grid1D::new(-1.0, 1.0, raw_mu).unwrap();
        let nu = Grid1D::new(-1.0, 1.0, raw_nu).unwrap();
        let tv = divergence(&mu, &nu, Div::Tv).unwrap();
        let kl = divergence(&mu, &nu, Div::Kl).unwrap();
        let r2 = divergence(&mu, &nu, Div::RenyiQ(2.0)).unwrap();
        let r4 = divergence(&mu, &nu, Div::RenyiQ(4.0)).unwrap();
        let rinf = divergence(&mu, &nu, Div::RenyiQ(f64::INFINITY)).unwrap();
        prop_assert!(2.0 * tv * tv <= kl + 1e-12);
        prop_assert!(kl <= r2 + 1e-12);
        prop_assert!(r2 <= r4 + 1e-12);
        prop_assert!(r4 <= rinf + 1e-12);
        prop_assert!(sup_ratio(&mu, &nu) >= 1.0 - 1e-12);
        // Self-divergence vanishes.
        prop_assert!(divergence(&mu, &mu, Div::RenyiQ(2.0)).unwrap().abs() < 1e-12);
    }

    #[test]
    fn gauss_mass_log_consistency(center in -30.0f64..30.0, width in 1e-3f64..10.0) {
        let (a, b) = (center - width / 2.0, center + width / 2.0);
        let mass = gauss_mass(a, b);
        prop_assert!((0.0..=1.0).contains(&mass));
        if mass > 1e-290 {
            let ln_m = ln_gauss_mass(a, b);
            prop_assert!((ln_m - mass.ln()).abs() < 1e-8 * mass.ln().abs().max(1.0));
        }
        prop_assert!((normal_cdf(center) + normal_sf(center) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn box_membership_distance_consistency(
        half in prop::collection::vec(1.0f64..4.0, 3),
        point in prop::collection::vec(-8.0f64..8.0, 3),
    ) {
        let lo: Vec<f64> = half.iter().map(|h| -h).collect();
        let body = ConvexBody::axis_box(lo, half.clone()).unwrap();
        let dist = body.distance(&point).unwrap();
        prop_assert_eq!(body.contains(&point), dist <= 1e-12);
        // Blowup membership is monotone in δ.
        if dist > 0.0 {
            prop_assert!(!body.blowup_contains(&point, (dist - 1e-9).max(0.0)).unwrap());
            prop_assert!(body.blowup_contains(&point, dist + 1e-9).unwrap());
        }
    }

    #[test]
    fn wilson_interval_brackets_estimate(successes in 0u64..500, extra in 0u64..500) {
        let n = successes + extra + 1;
        let (lo, hi) = wilson_interval(successes, n);
        let p = successes as f64 / n as f64;
        prop_assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
        prop_assert!(lo <= p + 1e-12 && p <= hi + 1e-12);
    }
}
