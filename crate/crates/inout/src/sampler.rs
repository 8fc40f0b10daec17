//! The In-and-Out chain: Gaussian forward step, capped rejection backward
//! step, failure bookkeeping, the restart wrapper, and Monte-Carlo local
//! conductance.
//!
//! One iteration goes out with y ~ N(x, hI), then back in by proposing
//! x' ~ N(y, hI) until x' ∈ K; after N rejected proposals the iteration
//! declares failure. Failure is a value, not a panic, so the restart wrapper
//! and the bias diagnostics can both observe it. Conditional on acceptance the
//! backward law is exactly the truncated Gaussian N(y, hI)|_K.
//!
//! Chains are embarrassingly parallel; a body is shared read-only and every
//! chain owns its trace. Query counting lives in the per-chain trace, not in
//! the body.

use crate::error::{Error, Result};
use crate::geometry::ConvexBody;
use crate::rng::{chain_rng, SamplerRng};
use crate::stats;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;

/// Full parameter bundle for one In-and-Out run.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct InOutParams {
    /// Step variance h.
    pub step_variance: f64,
    /// Backward-step trial cap N.
    pub trial_cap: u64,
    /// Iteration budget m (completed iterations; the output is the last iterate).
    pub iterations: u64,
    /// Rényi order q the accuracy target refers to.
    pub renyi_order: f64,
    /// Target accuracy ε.
    pub target_accuracy: f64,
    /// Failure budget η.
    pub failure_budget: f64,
    /// Warmness M of the start distribution.
    pub warmness: f64,
    /// Root seed; chain k uses the stream seed ⊕ k.
    pub seed: u64,
}

impl InOutParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_variance > 0.0) {
            return Err(Error::InvalidParameter("h must be > 0".into()));
        }
        if self.trial_cap < 1 {
            return Err(Error::InvalidParameter("N must be ≥ 1".into()));
        }
        if !(self.failure_budget > 0.0 && self.failure_budget < 0.5) {
            return Err(Error::InvalidParameter("η must lie in (0, 1/2)".into()));
        }
        if !(self.target_accuracy > 0.0 && self.target_accuracy < 0.5) {
            return Err(Error::InvalidParameter("ε must lie in (0, 1/2)".into()));
        }
        if !(self.warmness >= 1.0) {
            return Err(Error::InvalidParameter("M must be ≥ 1".into()));
        }
        if !(self.renyi_order >= 1.0) {
            return Err(Error::InvalidParameter("q must be ≥ 1".into()));
        }
        Ok(())
    }
}

/// Per-iteration record of proper steps, trial counts, failures, and queries.
#[derive(Debug, Clone, Serialize)]
pub struct ChainTrace {
    /// x₀ followed by every accepted iterate.
    pub iterates: Vec<Vec<f64>>,
    /// Backward trials consumed per iteration (each trial = one membership query).
    pub trials_per_iter: Vec<u64>,
    /// Σ trials, plus the history of failed attempts when produced by the
    /// restart wrapper.
    pub total_queries: u64,
    /// Iteration index at which failure was declared, if any.
    pub failed_at: Option<usize>,
    /// Restarts performed by the wrapper (0 for a plain run).
    pub restarts: u64,
}

impl ChainTrace {
    pub fn proper_steps(&self) -> u64 {
        (self.iterates.len() - 1) as u64
    }

    pub fn failed(&self) -> bool {
        self.failed_at.is_some()
    }

    pub fn mean_trials(&self) -> f64 {
        if self.trials_per_iter.is_empty() {
            return 0.0;
        }
        self.trials_per_iter.iter().sum::<u64>() as f64 / self.trials_per_iter.len() as f64
    }

    pub fn final_point(&self) -> &[f64] {
        self.iterates.last().expect("trace always holds x0")
    }

    /// CSV dump: `iter,trials,cum_queries[,x1..xd]`. A failed iteration
    /// appends its trial count with empty coordinate cells.
    pub fn write_csv(&self, dump_coords: bool, w: &mut dyn Write) -> std::io::Result<()> {
        let dim = self.iterates[0].len();
        write!(w, "iter,trials,cum_queries")?;
        if dump_coords {
            for i in 1..=dim {
                write!(w, ",x{i}")?;
            }
        }
        writeln!(w)?;
        let mut cum = 0u64;
        for (i, x) in self.iterates.iter().enumerate() {
            let trials = if i == 0 {
                0
            } else {
                self.trials_per_iter[i - 1]
            };
            cum += trials;
            write!(w, "{i},{trials},{cum}")?;
            if dump_coords {
                for v in x {
                    write!(w, ",{v}")?;
                }
            }
            writeln!(w)?;
        }
        if let Some(k) = self.failed_at {
            let trials = self.trials_per_iter[k];
            cum += trials;
            write!(w, "{},{trials},{cum}", k + 1)?;
            if dump_coords {
                for _ in 0..dim {
                    write!(w, ",")?;
                }
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Forward step: y = x + √h · z with z standard normal.
pub fn forward_step(x: &[f64], h: f64, rng: &mut SamplerRng) -> Vec<f64> {
    assert!(h > 0.0);
    let s = h.sqrt();
    x.iter()
        .map(|&xi| xi + s * rng.sample::<f64, _>(StandardNormal))
        .collect()
}

/// Outcome of one backward step.
#[derive(Debug, Clone)]
pub enum BackwardOutcome {
    /// First in-body proposal and the number of trials consumed.
    Accepted { point: Vec<f64>, trials: u64 },
    /// All N proposals fell outside K.
    Failed { trials: u64 },
}

/// Backward step: propose x ~ N(y, hI) until x ∈ K or the cap is hit.
/// Each proposal costs exactly one membership query.
pub fn backward_step(
    body: &ConvexBody,
    y: &[f64],
    h: f64,
    cap: u64,
    rng: &mut SamplerRng,
) -> BackwardOutcome {
    assert!(cap >= 1);
    let s = h.sqrt();
    for trial in 1..=cap {
        let candidate: Vec<f64> = y
            .iter()
            .map(|&yi| yi + s * rng.sample::<f64, _>(StandardNormal))
            .collect();
        if body.contains(&candidate) {
            return BackwardOutcome::Accepted {
                point: candidate,
                trials: trial,
            };
        }
    }
    BackwardOutcome::Failed { trials: cap }
}

/// Run one chain for `params.iterations` completed iterations, stopping early
/// with `failed_at` set if a backward step exhausts its cap.
pub fn run_chain(
    body: &ConvexBody,
    x0: &[f64],
    params: &InOutParams,
    rng: &mut SamplerRng,
) -> Result<ChainTrace> {
    params.validate()?;
    if x0.len() != body.dim() {
        return Err(Error::DimensionMismatch {
            expected: body.dim(),
            got: x0.len(),
        });
    }
    if !body.contains(x0) {
        return Err(Error::InvalidParameter("x0 must lie in K".into()));
    }
    let mut trace = ChainTrace {
        iterates: vec![x0.to_vec()],
        trials_per_iter: Vec::with_capacity(params.iterations as usize),
        total_queries: 0,
        failed_at: None,
        restarts: 0,
    };
    let mut x = x0.to_vec();
    for i in 0..params.iterations {
        let y = forward_step(&x, params.step_variance, rng);
        match backward_step(body, &y, params.step_variance, params.trial_cap, rng) {
            BackwardOutcome::Accepted { point, trials } => {
                trace.total_queries += trials;
                trace.trials_per_iter.push(trials);
                trace.iterates.push(point.clone());
                x = point;
            }
            BackwardOutcome::Failed { trials } => {
                trace.total_queries += trials;
                trace.trials_per_iter.push(trials);
                trace.failed_at = Some(i as usize);
                break;
            }
        }
    }
    Ok(trace)
}

/// Result of the restart wrapper.
#[derive(Debug, Clone)]
pub struct RestartOutcome {
    /// Final iterate of the successful run.
    pub output: Vec<f64>,
    /// Trace of the successful run; `total_queries` and `restarts` include the
    /// failed attempts.
    pub trace: ChainTrace,
    /// Number of runs executed, counting the successful one.
    pub runs: u64,
}

/// Repeat whole chains from fresh warm starts until one completes all
/// iterations without failure. A hard cap of ⌈10/(1−η)⌉ runs guards against a
/// mis-set schedule.
pub fn run_with_restart(
    body: &ConvexBody,
    mut warm_start: impl FnMut(&mut SamplerRng) -> Vec<f64>,
    params: &InOutParams,
    rng: &mut SamplerRng,
) -> Result<RestartOutcome> {
    params.validate()?;
    let max_runs = (10.0 / (1.0 - params.failure_budget)).ceil() as u64;
    let mut queries_from_failures = 0u64;
    for run in 1..=max_runs {
        let x0 = warm_start(rng);
        let mut trace = run_chain(body, &x0, params, rng)?;
        if !trace.failed() {
            trace.restarts = run - 1;
            trace.total_queries += queries_from_failures;
            return Ok(RestartOutcome {
                output: trace.final_point().to_vec(),
                trace,
                runs: run,
            });
        }
        queries_from_failures += trace.total_queries;
    }
    Err(Error::Diagnostics(format!(
        "restart cap of {max_runs} runs exceeded; the (h, N) schedule looks mis-set for this body"
    )))
}

/// Proportion estimate with its Wilson 95% interval.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConductanceEstimate {
    pub estimate: f64,
    pub ci: (f64, f64),
    pub samples: u64,
}

/// Monte-Carlo local conductance ℓ(y) = N(y, hI)(K): the per-trial acceptance
/// probability of the backward step at y.
pub fn local_conductance_mc(
    body: &ConvexBody,
    y: &[f64],
    h: f64,
    n: u64,
    rng: &mut SamplerRng,
) -> ConductanceEstimate {
    assert!(n >= 1);
    let s = h.sqrt();
    let mut hits = 0u64;
    let mut candidate = vec![0.0; y.len()];
    for _ in 0..n {
        for (c, &yi) in candidate.iter_mut().zip(y) {
            *c = yi + s * rng.sample::<f64, _>(StandardNormal);
        }
        if body.contains(&candidate) {
            hits += 1;
        }
    }
    ConductanceEstimate {
        estimate: hits as f64 / n as f64,
        ci: stats::wilson_interval(hits, n),
        samples: n,
    }
}

/// How chains pick their start point.
#[derive(Debug, Clone)]
pub enum StartMode {
    /// Exact uniform draw from the body (M = 1). Requires an exact sampler.
    ExactUniform,
    /// Fixed feasible point for every chain.
    FixedPoint(Vec<f64>),
}

/// Run `n_chains` independent chains in parallel. Chain k draws its randomness
/// from the stream `seed ⊕ k`, so results are independent of thread scheduling.
pub fn run_chains(
    body: &ConvexBody,
    params: &InOutParams,
    n_chains: u64,
    start: &StartMode,
) -> Result<Vec<ChainTrace>> {
    params.validate()?;
    if let StartMode::ExactUniform = start {
        if !body.has_exact_sampler() {
            return Err(Error::Unsupported(
                "exact uniform warm start is unavailable for this body; supply a start point and a documented warmness M".into(),
            ));
        }
    }
    (0..n_chains)
        .into_par_iter()
        .map(|k| {
            let mut rng = chain_rng(params.seed, k);
            let x0 = match start {
                StartMode::ExactUniform => body.exact_uniform_sample(&mut rng)?,
                StartMode::FixedPoint(p) => p.clone(),
            };
            run_chain(body, &x0, params, &mut rng)
        })
        .collect()
}
