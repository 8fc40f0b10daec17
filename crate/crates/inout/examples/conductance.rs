//! Local and average conductance on the zoo, the speedy walk's stationary
//! bias, and the scaling conversion back to uniform.
//!
//!     cargo run --release --example conductance

use inout::baselines::{
    average_conductance_mc, ball_local_conductance_mc, run_speedy_walk, speedy_to_uniform,
    speedy_tv_bias_bound, SPEEDY_SAFETY_CAP,
};
use inout::geometry::ConvexBody;
use inout::rng::{chain_rng, derived_rng};
use inout::sampler::local_conductance_mc;

fn main() {
    let mut rng = derived_rng(5, 0);

    println!("Gaussian local conductance ℓ(y) = N(y, hI)(K), h = 0.04:");
    let segment = ConvexBody::cube(1, -1.0, 1.0).unwrap();
    for y in [0.0, 0.8, 1.0, 1.2] {
        let est = local_conductance_mc(&segment, &[y], 0.04, 100_000, &mut rng);
        println!(
            "  K = [−1,1], y = {y:4}: ℓ ≈ {:.4} (95% CI {:.4}..{:.4})",
            est.estimate, est.ci.0, est.ci.1
        );
    }

    println!("\nball local conductance vol(K ∩ B_δ)/vol(B_δ) on [−1,1]², δ = 0.05:");
    let square = ConvexBody::cube(2, -1.0, 1.0).unwrap();
    for (label, x) in [
        ("center", [0.0, 0.0]),
        ("edge", [1.0, 0.0]),
        ("corner", [1.0, 1.0]),
    ] {
        let est = ball_local_conductance_mc(&square, &x, 0.05, 100_000, &mut rng);
        println!("  {label:>6}: ℓ ≈ {:.4}", est.estimate);
    }

    println!("\naverage conductance λ = E_π[ℓ] at δ = 1/(2√d) vs the 1 − δ√d/2 = 0.75 bound:");
    for d in [2usize, 4, 8] {
        let body = ConvexBody::cube(d, -1.0, 1.0).unwrap();
        let delta = 0.5 / (d as f64).sqrt();
        let est = average_conductance_mc(&body, delta, 200_000, &mut rng).unwrap();
        println!(
            "  d = {d}: λ ≈ {:.4}, speedy TV bias ≤ (1−λ)/λ = {:.4}",
            est.estimate,
            speedy_tv_bias_bound(est.estimate)
        );
    }

    // Conversion: speedy samples, accepted when the (2d/(2d−1))-scaled point
    // stays inside, are uniform again.
    println!("\nspeedy → uniform conversion on the box d = 5:");
    let d = 5usize;
    let body = ConvexBody::cube(d, -1.0, 1.0).unwrap();
    let eps = 0.1f64;
    let delta = 1.0 / (8.0 * d as f64 * (d as f64 / eps).ln()).sqrt();
    let mut walk_rng = chain_rng(5, 1);
    let x0 = body.exact_uniform_sample(&mut walk_rng).unwrap();
    let trace =
        run_speedy_walk(&body, &x0, delta, 40_000, SPEEDY_SAFETY_CAP, &mut walk_rng).unwrap();
    let pool = &trace.iterates[10_000..];
    let mut idx = 0usize;
    let calls: Vec<u64> = (0..2_000)
        .map(|_| {
            speedy_to_uniform(
                &body,
                |_| {
                    idx += 13;
                    pool[idx % pool.len()].clone()
                },
                &mut rng,
            )
            .unwrap()
            .calls
        })
        .collect();
    let mean = calls.iter().sum::<u64>() as f64 / calls.len() as f64;
    println!(
        "  δ = {delta:.4}: mean speedy samples per uniform output = {mean:.3} (theory: at most 2)"
    );
}
