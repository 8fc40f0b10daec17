//! Empirical statistics bridging chain output and theory predictions: moments,
//! marginal tests, low-dimensional histogram divergences, blowup-tail Monte
//! Carlo, rejection-cost scaling, and run reports.
//!
//! Divergence estimation from samples is hopeless in high dimension, so the
//! divergence-level claims are delegated to the 1-d grid oracle; here we stick
//! to marginal and moment tests (d ≥ 2) and trend checks. Every proportion CI
//! is a Wilson interval and every mean CI a normal approximation, both at the
//! fixed 95% level.

use crate::error::{Error, Result};
use crate::geometry::ConvexBody;
use crate::oracle1d::Div;
use crate::rng::SamplerRng;
use crate::sampler::{forward_step, ChainTrace, InOutParams, StartMode};
use crate::stats;
use crate::theory;
use serde::Serialize;

/// Sample mean, covariance operator norm, and second moment.
#[derive(Debug, Clone, Serialize)]
pub struct Moments {
    pub mean: Vec<f64>,
    /// Largest eigenvalue of the sample covariance, by power iteration.
    pub cov_opnorm: f64,
    /// E |X − mean|² (= trace of the sample covariance).
    pub second_moment: f64,
}

pub fn empirical_moments(samples: &[Vec<f64>]) -> Moments {
    assert!(!samples.is_empty());
    let d = samples[0].len();
    let n = samples.len() as f64;
    let mut mean = vec![0.0; d];
    for s in samples {
        for (m, &v) in mean.iter_mut().zip(s) {
            *m += v / n;
        }
    }
    let mut cov = vec![vec![0.0; d]; d];
    for s in samples {
        for i in 0..d {
            let di = s[i] - mean[i];
            for j in i..d {
                cov[i][j] += di * (s[j] - mean[j]) / n;
            }
        }
    }
    #[allow(clippy::needless_range_loop)]
    for i in 0..d {
        for j in 0..i {
            cov[i][j] = cov[j][i];
        }
    }
    let second_moment = (0..d).map(|i| cov[i][i]).sum();
    Moments {
        mean,
        cov_opnorm: sym_opnorm(&cov),
        second_moment,
    }
}

/// Operator norm of a symmetric PSD matrix by power iteration
/// (tolerance 1e-8, at most 1e3 iterations).
fn sym_opnorm(mat: &[Vec<f64>]) -> f64 {
    let d = mat.len();
    if d == 0 {
        return 0.0;
    }
    let mut v = vec![1.0 / (d as f64).sqrt(); d];
    let mut lambda = 0.0;
    for _ in 0..1_000 {
        let mut w = vec![0.0; d];
        for i in 0..d {
            for j in 0..d {
                w[i] += mat[i][j] * v[j];
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        w.iter_mut().for_each(|x| *x /= norm);
        let next = norm;
        let done = (next - lambda).abs() <= 1e-8 * next.max(1.0);
        lambda = next;
        v = w;
        if done {
            break;
        }
    }
    lambda
}

/// Per-coordinate two-sided KS against the body's closed-form marginal CDF,
/// with a Bonferroni-corrected pass/fail decision at level `alpha`.
#[derive(Debug, Clone, Serialize)]
pub struct KsOutcome {
    pub statistics: Vec<f64>,
    pub p_values: Vec<f64>,
    pub alpha: f64,
    pub pass: bool,
}

pub fn marginal_ks(samples: &[Vec<f64>], body: &ConvexBody, alpha: f64) -> Result<KsOutcome> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter("no samples".into()));
    }
    let d = body.dim();
    let mut statistics = Vec::with_capacity(d);
    let mut p_values = Vec::with_capacity(d);
    for axis in 0..d {
        let cdf = body.coordinate_marginal_cdf(axis).ok_or_else(|| {
            Error::Unsupported(
                "marginal KS needs a body with closed-form marginals (box, ball)".into(),
            )
        })?;
        let mut xs: Vec<f64> = samples.iter().map(|s| s[axis]).collect();
        let stat = stats::ks_statistic(&mut xs, cdf);
        statistics.push(stat);
        p_values.push(stats::ks_pvalue(stat, xs.len()));
    }
    let threshold = alpha / d as f64;
    let pass = p_values.iter().all(|&p| p >= threshold);
    Ok(KsOutcome {
        statistics,
        p_values,
        alpha,
        pass,
    })
}

/// Monte-Carlo estimate of the forward-step blowup tail π^Y(K_δᶜ) compared to
/// the theory bound exp(−δ²/2h + δd).
#[derive(Debug, Clone, Serialize)]
pub struct TailEstimate {
    pub exceedance: f64,
    pub ci: (f64, f64),
    pub bound: f64,
    /// Upper CI at or below the bound (one-sided check).
    pub satisfied: bool,
}

pub fn blowup_tail_mc(
    body: &ConvexBody,
    h: f64,
    delta: f64,
    n: u64,
    rng: &mut SamplerRng,
) -> Result<TailEstimate> {
    if !body.has_exact_sampler() {
        return Err(Error::Unsupported(
            "blowup tail MC needs an exact uniform sampler".into(),
        ));
    }
    let mut exceed = 0u64;
    for _ in 0..n {
        let x = body.exact_uniform_sample(rng)?;
        let y = forward_step(&x, h, rng);
        if !body.blowup_contains(&y, delta)? {
            exceed += 1;
        }
    }
    let ci = stats::wilson_interval(exceed, n);
    let bound = theory::blowup_tail_bound(delta, h, body.dim() as u32);
    Ok(TailEstimate {
        exceedance: exceed as f64 / n as f64,
        ci,
        bound,
        satisfied: ci.1 <= bound,
    })
}

/// Plug-in divergence between binned samples and the exact uniform law on the
/// body (d ≤ 3 only), with one pseudo-count of smoothing per bin. Biased;
/// meant for decay-trend checks, never absolute acceptance.
pub fn histogram_divergence(
    samples: &[Vec<f64>],
    body: &ConvexBody,
    bins_per_axis: usize,
    kind: Div,
    rng: &mut SamplerRng,
) -> Result<f64> {
    let d = body.dim();
    if d > 3 {
        return Err(Error::Unsupported(
            "histogram divergence is limited to d ≤ 3".into(),
        ));
    }
    if bins_per_axis < 2 {
        return Err(Error::InvalidParameter("need ≥ 2 bins per axis".into()));
    }
    let (lo, hi) = bounding_box(body);
    let n_bins = bins_per_axis.pow(d as u32);
    let widths: Vec<f64> = lo
        .iter()
        .zip(&hi)
        .map(|(&a, &b)| (b - a) / bins_per_axis as f64)
        .collect();
    let bin_of = |x: &[f64]| -> usize {
        let mut idx = 0;
        for axis in 0..d {
            let k = (((x[axis] - lo[axis]) / widths[axis]) as usize).min(bins_per_axis - 1);
            idx = idx * bins_per_axis + k;
        }
        idx
    };

    // Exact bin masses for the box; MC-integrated masses otherwise.
    let mut expected = vec![0.0; n_bins];
    match body.kind() {
        crate::geometry::BodyKind::AxisBox { .. } => {
            expected.fill(1.0 / n_bins as f64);
        }
        _ => {
            let m = 200_000u64;
            for _ in 0..m {
                let x = body.exact_uniform_sample(rng)?;
                expected[bin_of(&x)] += 1.0 / m as f64;
            }
        }
    }

    // One pseudo-count per bin on the empirical side.
    let mut counts = vec![1.0; n_bins];
    for s in samples {
        counts[bin_of(s)] += 1.0;
    }
    let total: f64 = counts.iter().sum();
    counts.iter_mut().for_each(|c| *c /= total);

    let eps = 1e-12;
    let value = match kind {
        Div::Tv => {
            0.5 * counts
                .iter()
                .zip(&expected)
                .map(|(p, q)| (p - q).abs())
                .sum::<f64>()
        }
        Div::Kl => counts
            .iter()
            .zip(&expected)
            .filter(|(p, _)| **p > 0.0)
            .map(|(p, q)| p * (p / q.max(eps)).ln())
            .sum(),
        Div::ChiQ(q) => {
            if !(q > 1.0) {
                return Err(Error::InvalidParameter("chi_q needs q > 1".into()));
            }
            counts
                .iter()
                .zip(&expected)
                .map(|(p, e)| e.max(eps) * (p / e.max(eps)).powf(q))
                .sum::<f64>()
                - 1.0
        }
        Div::RenyiQ(_) => {
            return Err(Error::Unsupported(
                "use ChiQ for histogram trend checks; Rényi adds nothing here".into(),
            ))
        }
    };
    Ok(value)
}

fn bounding_box(body: &ConvexBody) -> (Vec<f64>, Vec<f64>) {
    match body.kind() {
        crate::geometry::BodyKind::AxisBox { lo, hi } => (lo.clone(), hi.clone()),
        _ => {
            let r = body.circumradius();
            let lo = body.center().iter().map(|c| c - r).collect();
            let hi = body.center().iter().map(|c| c + r).collect();
            (lo, hi)
        }
    }
}

/// Mean backward trials per iteration across dimensions, fitted against the
/// predictor M·log⁴(mM/η) with a single constant.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingRow {
    pub dim: u32,
    pub mean_trials: f64,
    pub predictor: f64,
    pub constant: f64,
}

/// Boxes [−1,1]^d across `dims`, exact-uniform starts (M = 1), per-iteration
/// schedule per dimension. The residual spread of `constant` across rows is
/// the trend statistic.
pub fn rejection_scaling_report(
    dims: &[u32],
    iters: u64,
    eta: f64,
    chains: u64,
    seed: u64,
) -> Result<Vec<ScalingRow>> {
    let warmness = 1.0;
    let mut rows = Vec::with_capacity(dims.len());
    for &dim in dims {
        let body = ConvexBody::cube(dim as usize, -1.0, 1.0)?;
        let schedule = theory::per_iteration_schedule(iters, warmness, eta, dim)?;
        let params = InOutParams {
            step_variance: schedule.h,
            trial_cap: schedule.trial_cap_u64(),
            iterations: iters,
            renyi_order: 2.0,
            target_accuracy: 0.1,
            failure_budget: eta,
            warmness,
            seed,
        };
        let traces = crate::sampler::run_chains(&body, &params, chains, &StartMode::ExactUniform)?;
        let total_trials: u64 = traces.iter().map(|t| t.total_queries).sum();
        let total_iters: usize = traces.iter().map(|t| t.trials_per_iter.len()).sum();
        let mean_trials = total_trials as f64 / total_iters as f64;
        let predictor = warmness * (iters as f64 * warmness / eta).ln().powi(4);
        rows.push(ScalingRow {
            dim,
            mean_trials,
            predictor,
            constant: mean_trials / predictor,
        });
    }
    Ok(rows)
}

/// One predicted bound paired with its empirical measurement.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub predicted: f64,
    pub empirical: f64,
    pub ci: (f64, f64),
    /// One-sided: empirical upper CI ≤ predicted.
    pub satisfied: bool,
}

impl BoundReport {
    pub fn one_sided(name: &str, predicted: f64, empirical: f64, ci: (f64, f64)) -> Self {
        Self {
            name: name.into(),
            predicted,
            empirical,
            ci,
            satisfied: ci.1 <= predicted,
        }
    }
}

/// Named test entry in a run report.
#[derive(Debug, Clone, Serialize)]
pub struct TestReport {
    pub name: String,
    pub statistic: f64,
    pub pass: bool,
}

/// Aggregate statistics of a batch of chains.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub chains: u64,
    pub proper_steps: u64,
    pub total_queries: u64,
    pub mean_trials: f64,
    pub mean_trials_se: f64,
    pub failure_rate: f64,
    pub failure_ci: (f64, f64),
    pub restarts: u64,
}

pub fn summarize_traces(traces: &[ChainTrace]) -> Summary {
    assert!(!traces.is_empty());
    let chains = traces.len() as u64;
    let proper_steps: u64 = traces.iter().map(ChainTrace::proper_steps).sum();
    let total_queries: u64 = traces.iter().map(|t| t.total_queries).sum();
    let failures = traces.iter().filter(|t| t.failed()).count() as u64;
    let restarts = traces.iter().map(|t| t.restarts).sum();
    let per_chain_means: Vec<f64> = traces
        .iter()
        .filter(|t| !t.trials_per_iter.is_empty())
        .map(ChainTrace::mean_trials)
        .collect();
    let (mean_trials, mean_trials_se) = if per_chain_means.is_empty() {
        (0.0, 0.0)
    } else {
        stats::mean_and_se(&per_chain_means)
    };
    Summary {
        chains,
        proper_steps,
        total_queries,
        mean_trials,
        mean_trials_se,
        failure_rate: failures as f64 / chains as f64,
        failure_ci: stats::wilson_interval(failures, chains),
        restarts,
    }
}

/// Full report emitted by the CLI: configuration echo, schedule, bound
/// comparisons, and named tests.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule: Option<theory::Schedule>,
    pub summary: Summary,
    pub bounds: Vec<BoundReport>,
    pub tests: Vec<TestReport>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::chain_rng;
    use crate::sampler::InOutParams;

    #[test]
    fn moments_of_box_samples() {
        let body = ConvexBody::cube(4, -1.0, 1.0).unwrap();
        let mut rng = chain_rng(40, 0);
        let samples: Vec<Vec<f64>> = (0..60_000)
            .map(|_| body.exact_uniform_sample(&mut rng).unwrap())
            .collect();
        let m = empirical_moments(&samples);
        // Unif[−1,1] has variance 1/3 per axis.
        assert!(
            (m.cov_opnorm - 1.0 / 3.0).abs() < 0.02,
            "opnorm {}",
            m.cov_opnorm
        );
        assert!((m.second_moment - 4.0 / 3.0).abs() < 0.03);
        assert!(m.mean.iter().all(|v| v.abs() < 0.02));
        // opnorm ≤ trace always.
        assert!(m.cov_opnorm <= m.second_moment + 1e-12);
    }

    #[test]
    fn moments_degenerate_point() {
        let samples = vec![vec![0.3, -0.7]; 50];
        let m = empirical_moments(&samples);
        assert!(m.cov_opnorm.abs() < 1e-15);
        assert!(m.second_moment.abs() < 1e-15);
    }

    #[test]
    fn marginal_ks_accepts_uniform_rejects_shifted() {
        let body = ConvexBody::cube(3, -1.0, 1.0).unwrap();
        let mut rng = chain_rng(41, 0);
        let samples: Vec<Vec<f64>> = (0..3_000)
            .map(|_| body.exact_uniform_sample(&mut rng).unwrap())
            .collect();
        assert!(marginal_ks(&samples, &body, 0.01).unwrap().pass);

        let shifted: Vec<Vec<f64>> = samples
            .iter()
            .map(|s| s.iter().map(|v| (v * 0.8 + 0.2).min(1.0)).collect())
            .collect();
        assert!(!marginal_ks(&shifted, &body, 0.01).unwrap().pass);

        let simplex = ConvexBody::simplex(2).unwrap();
        assert!(marginal_ks(&samples[..10], &simplex, 0.01).is_err());
    }

    #[test]
    fn blowup_tail_trivial_limits() {
        let body = ConvexBody::cube(3, -1.0, 1.0).unwrap();
        let mut rng = chain_rng(42, 0);
        // Huge δ: nothing exceeds. The bound underflows to 0 here, so only the
        // point estimate is meaningful (a Wilson upper CI never reaches 0).
        let t = blowup_tail_mc(&body, 0.01, 50.0, 20_000, &mut rng).unwrap();
        assert_eq!(t.exceedance, 0.0);
        assert!(t.exceedance <= t.bound);
        // h → 0: forward step stays inside.
        let t = blowup_tail_mc(&body, 1e-12, 0.1, 20_000, &mut rng).unwrap();
        assert_eq!(t.exceedance, 0.0);
        // A δ in the statistically observable window: the one-sided CI check
        // itself passes.
        let t = blowup_tail_mc(&body, 0.0055, 0.3, 20_000, &mut rng).unwrap();
        assert!(t.bound > 1e-4, "bound {}", t.bound);
        assert!(t.satisfied, "{t:?}");
    }

    #[test]
    fn histogram_divergence_floor_and_point_mass() {
        let body = ConvexBody::cube(2, -1.0, 1.0).unwrap();
        let mut rng = chain_rng(43, 0);
        let uniform: Vec<Vec<f64>> = (0..40_000)
            .map(|_| body.exact_uniform_sample(&mut rng).unwrap())
            .collect();
        let near_zero = histogram_divergence(&uniform, &body, 8, Div::Kl, &mut rng).unwrap();
        assert!(near_zero < 0.005, "kl {near_zero}");

        let point: Vec<Vec<f64>> = vec![vec![0.5, 0.5]; 40_000];
        let large = histogram_divergence(&point, &body, 8, Div::Kl, &mut rng).unwrap();
        assert!(large > 1.0);

        let high_d = ConvexBody::cube(4, -1.0, 1.0).unwrap();
        assert!(histogram_divergence(&uniform, &high_d, 4, Div::Kl, &mut rng).is_err());
    }

    #[test]
    fn histogram_divergence_trend_over_checkpoints() {
        // From a point start the binned KL to uniform must trend down across
        // checkpoints; a sign test over seed groups guards against noise.
        let body = ConvexBody::cube(2, -1.0, 1.0).unwrap();
        let schedule = theory::per_iteration_schedule(40, 1.0, 0.1, 2).unwrap();
        let checkpoints = [1usize, 10, 40];
        let mut increases = 0u64;
        let mut pairs = 0u64;
        for group in 0..10u64 {
            let params = InOutParams {
                step_variance: schedule.h,
                trial_cap: schedule.trial_cap_u64(),
                iterations: 40,
                renyi_order: 2.0,
                target_accuracy: 0.1,
                failure_budget: 0.1,
                warmness: 1.0,
                seed: 4_000 + group,
            };
            let start = StartMode::FixedPoint(vec![0.9, -0.85]);
            let traces = crate::sampler::run_chains(&body, &params, 300, &start).unwrap();
            let mut rng = chain_rng(9_000 + group, 0);
            let divs: Vec<f64> = checkpoints
                .iter()
                .map(|&k| {
                    let at: Vec<Vec<f64>> = traces.iter().map(|t| t.iterates[k].clone()).collect();
                    histogram_divergence(&at, &body, 6, Div::Kl, &mut rng).unwrap()
                })
                .collect();
            for w in divs.windows(2) {
                pairs += 1;
                if w[1] > w[0] {
                    increases += 1;
                }
            }
        }
        let p = stats::sign_test_pvalue(increases, pairs);
        assert!(p > 0.05, "{increases}/{pairs} increases, sign test p = {p}");
    }

    #[test]
    fn summary_accounting() {
        let body = ConvexBody::cube(3, -1.0, 1.0).unwrap();
        let params = InOutParams {
            step_variance: 0.01,
            trial_cap: 1_000,
            iterations: 20,
            renyi_order: 2.0,
            target_accuracy: 0.1,
            failure_budget: 0.1,
            warmness: 1.0,
            seed: 44,
        };
        let traces =
            crate::sampler::run_chains(&body, &params, 50, &StartMode::ExactUniform).unwrap();
        let s = summarize_traces(&traces);
        assert_eq!(s.chains, 50);
        assert_eq!(s.proper_steps, 50 * 20);
        assert!(s.mean_trials >= 1.0);
        assert!(s.failure_rate >= 0.0 && s.failure_rate <= 1.0);
        let queries: u64 = traces.iter().map(|t| t.total_queries).sum();
        assert_eq!(s.total_queries, queries);
    }
}
