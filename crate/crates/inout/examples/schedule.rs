//! Compute the per-iteration schedule and every bound calculator for a given
//! parameter set.
//!
//!     cargo run --release --example schedule

use inout::theory::{self, Constants};

fn main() {
    let (iters, warmness, eta, eps, q, d) = (100u64, 2.0, 0.1, 0.05, 2.0, 10u32);
    println!("inputs: m={iters} M={warmness} eta={eta} eps={eps} q={q} d={d}\n");

    let s = theory::per_iteration_schedule(iters, warmness, eta, d).unwrap();
    println!("per-iteration schedule:");
    println!("  Z        = {}", s.z);
    println!(
        "  h        = {:.6e}   (step variance, = c/d² with c = {:.6})",
        s.h, s.c
    );
    println!("  N        = {:.0}   (backward trial cap)", s.trial_cap);
    println!(
        "  t, δ     = {:.4}, {:.4}   (blowup margin pair)",
        s.t, s.delta
    );

    let h_main = theory::main_step_size(iters, warmness, eta, d).unwrap();
    println!(
        "\nheadline step size h = {:.6e} (per-iteration h differs by the log log Z factor)",
        h_main
    );

    println!("\nbound calculators:");
    println!(
        "  blowup tail at (δ, h):          {:.3e}",
        theory::blowup_tail_bound(s.delta, s.h, d)
    );
    println!(
        "  conditioning bias (q={q}, η={eta}): {:.6}",
        theory::conditioning_bias(q, eta).unwrap()
    );
    println!(
        "  point-start log-warmness (D=3): {:.2}",
        theory::point_start_log_warmness(d, s.h, 3.0)
    );

    // Functional-inequality upper bounds carry uncertified unit constants.
    let constants = Constants::default();
    let fi = theory::fi_constants(1.0 / 3.0, 3.0, d, false, &constants);
    println!(
        "  C_PI ≤ {:.4}, C_LSI ≤ {:.4}   (unit constants, prediction only)",
        fi.c_pi_upper, fi.c_lsi_upper
    );

    let m = theory::iteration_count(q, d, 1.0 / 3.0, warmness, eta, eps, &constants).unwrap();
    println!("  self-consistent iteration count m = {m}");

    println!(
        "\ndecay predictions from a warm start (R₀ = ln M = {:.3}):",
        warmness.ln()
    );
    for k in [0u64, 100, 1_000, 10_000] {
        println!(
            "  k = {k:6}:  R_q ≤ {:.4e} (LSI route, C={:.2})   χ² ≤ {:.4e} (PI route, C={:.2})",
            theory::renyi_decay_lsi(warmness.ln(), k, s.h, fi.c_lsi_upper, q),
            fi.c_lsi_upper,
            theory::chi2_decay_pi(warmness.exp() - 1.0, k, s.h, fi.c_pi_upper),
            fi.c_pi_upper,
        );
    }
}
