//! Failure is a value: a deliberately tiny trial cap makes backward steps
//! fail, and the restart wrapper reruns whole chains until one finishes.
//!
//!     cargo run --release --example restart

use inout::geometry::ConvexBody;
use inout::rng::chain_rng;
use inout::sampler::{run_chain, run_with_restart, InOutParams};

fn main() {
    let body = ConvexBody::cube(3, -1.0, 1.0).unwrap();
    // A large step with N = 2 rejects often; good for demonstrating failure.
    let params = InOutParams {
        step_variance: 0.5,
        trial_cap: 2,
        iterations: 30,
        renyi_order: 2.0,
        target_accuracy: 0.1,
        failure_budget: 0.4,
        warmness: 1.0,
        seed: 1,
    };

    println!("plain chains (failure surfaces in the trace):");
    let mut failures = 0;
    for k in 0..8u64 {
        let mut rng = chain_rng(params.seed, k);
        let x0 = body.exact_uniform_sample(&mut rng).unwrap();
        let trace = run_chain(&body, &x0, &params, &mut rng).unwrap();
        match trace.failed_at {
            Some(i) => {
                failures += 1;
                println!(
                    "  chain {k}: failed at iteration {i} after {} queries",
                    trace.total_queries
                );
            }
            None => println!(
                "  chain {k}: completed {} iterations, {} queries",
                trace.proper_steps(),
                trace.total_queries
            ),
        }
    }
    println!("  {failures}/8 chains failed\n");

    // A milder cap fails often enough to exercise restarts yet finishes runs.
    println!("restart wrapper (reruns whole chains until success):");
    let wrapped = InOutParams {
        step_variance: 0.04,
        trial_cap: 3,
        iterations: 20,
        ..params
    };
    let body_ref = &body;
    for k in 0..8u64 {
        let mut rng = chain_rng(wrapped.seed, 1_000 + k);
        match run_with_restart(
            body_ref,
            |r| body_ref.exact_uniform_sample(r).unwrap(),
            &wrapped,
            &mut rng,
        ) {
            Ok(out) => println!(
                "  chain {k}: success after {} run(s), {} total queries, output in K: {}",
                out.runs,
                out.trace.total_queries,
                body.contains(&out.output)
            ),
            Err(e) => println!("  chain {k}: {e}"),
        }
    }
}
