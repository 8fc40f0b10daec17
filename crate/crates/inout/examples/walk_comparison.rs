//! In-and-Out, ball walk, and speedy walk side by side on the same box:
//! proper steps, membership queries, and queries per effective sample.
//!
//!     cargo run --release --example walk_comparison

use inout::baselines::{self, BallWalkParams};
use inout::geometry::ConvexBody;
use inout::rng::chain_rng;
use inout::sampler::{run_chains, InOutParams, StartMode};
use inout::stats::effective_sample_size;
use inout::theory;

fn main() {
    let d = 3usize;
    let body = ConvexBody::cube(d, -1.0, 1.0).unwrap();
    let steps = 4_000u64;
    let seed = 99;
    println!("box [−1,1]^{d}, {steps} proper steps per walk, seed {seed}\n");
    println!(
        "{:<8} {:>12} {:>14} {:>10} {:>12}",
        "walk", "steps", "queries", "ess(x1)", "queries/ess"
    );

    // In-and-Out with its schedule.
    let schedule = theory::per_iteration_schedule(steps, 1.0, 0.1, d as u32).unwrap();
    let params = InOutParams {
        step_variance: schedule.h,
        trial_cap: schedule.trial_cap_u64(),
        iterations: steps,
        renyi_order: 2.0,
        target_accuracy: 0.1,
        failure_budget: 0.1,
        warmness: 1.0,
        seed,
    };
    let trace = &run_chains(&body, &params, 1, &StartMode::ExactUniform).unwrap()[0];
    let series: Vec<f64> = trace.iterates.iter().map(|x| x[0]).collect();
    let ess = effective_sample_size(&series);
    println!(
        "{:<8} {:>12} {:>14} {:>10.1} {:>12.2}",
        "inout",
        trace.proper_steps(),
        trace.total_queries,
        ess,
        trace.total_queries as f64 / ess
    );

    // Ball walk at the matching step radius.
    let delta = baselines::default_speedy_step(d);
    let mut rng = chain_rng(seed, 0);
    let x0 = body.exact_uniform_sample(&mut rng).unwrap();
    let ball = baselines::run_ball_walk(
        &body,
        &x0,
        &BallWalkParams {
            step_radius: delta,
            iterations: steps,
            seed,
        },
        &mut rng,
    )
    .unwrap();
    let series: Vec<f64> = ball.iterates.iter().map(|x| x[0]).collect();
    let ess = effective_sample_size(&series);
    println!(
        "{:<8} {:>12} {:>14} {:>10.1} {:>12.2}",
        "ball",
        steps,
        ball.total_queries,
        ess,
        ball.total_queries as f64 / ess
    );

    // Speedy walk (records only proper steps; improper ones still cost queries).
    let mut rng = chain_rng(seed, 1);
    let x0 = body.exact_uniform_sample(&mut rng).unwrap();
    let speedy = baselines::run_speedy_walk(
        &body,
        &x0,
        delta,
        steps,
        baselines::SPEEDY_SAFETY_CAP,
        &mut rng,
    )
    .unwrap();
    let series: Vec<f64> = speedy.iterates.iter().map(|x| x[0]).collect();
    let ess = effective_sample_size(&series);
    println!(
        "{:<8} {:>12} {:>14} {:>10.1} {:>12.2}",
        "speedy",
        steps,
        speedy.total_queries,
        ess,
        speedy.total_queries as f64 / ess
    );

    println!(
        "\nspeedy improper steps: {} ({}% of proper)",
        speedy.total_queries - steps,
        100 * (speedy.total_queries - steps) / steps
    );
    println!("note: speedy targets the ℓ-weighted law, not uniform; see the conductance example.");
}
