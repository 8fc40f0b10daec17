//! Baseline geometric walks: the ball walk and the speedy walk with its
//! rejection-sampling implementation, plus ball local/average conductance and
//! the speedy-to-uniform conversion. These exist for head-to-head comparisons
//! against the In-and-Out chain.

use crate::error::{Error, Result};
use crate::geometry::{sample_in_ball, ConvexBody};
use crate::rng::SamplerRng;
use crate::sampler::ConductanceEstimate;
use crate::stats;
use serde::Serialize;

/// Default safety cap for the uncapped speedy rejection loop.
pub const SPEEDY_SAFETY_CAP: u64 = 10_000_000;
/// Safety cap for the speedy→uniform conversion loop.
pub const CONVERSION_SAFETY_CAP: u64 = 1_000;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BallWalkParams {
    /// Step radius δ.
    pub step_radius: f64,
    pub iterations: u64,
    pub seed: u64,
}

impl BallWalkParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_radius > 0.0) {
            return Err(Error::InvalidParameter("δ must be > 0".into()));
        }
        Ok(())
    }
}

/// Default speedy step size Θ(d^{-1/2}); the hidden constant is our choice and
/// is exposed as a flag in the CLI.
pub fn default_speedy_step(dim: usize) -> f64 {
    0.5 / (dim as f64).sqrt()
}

/// One ball-walk step: propose y ~ Unif(B_δ(x)), move iff y ∈ K.
/// Exactly one membership query. Returns the new point and the accept flag.
pub fn ball_walk_step(
    body: &ConvexBody,
    x: &[f64],
    delta: f64,
    rng: &mut SamplerRng,
) -> (Vec<f64>, bool) {
    let y = sample_in_ball(x, delta, x.len(), rng);
    if body.contains(&y) {
        (y, true)
    } else {
        (x.to_vec(), false)
    }
}

/// One speedy step: x' ~ Unif(K ∩ B_δ(x)) by rejection. `improper` counts the
/// rejected proposals; each proposal costs one membership query. The loop is
/// conceptually uncapped, so a configurable safety cap guards pathologically
/// thin regions and reports a diagnostics error when hit.
#[derive(Debug, Clone)]
pub struct SpeedyStep {
    pub point: Vec<f64>,
    pub improper: u64,
}

pub fn speedy_walk_step(
    body: &ConvexBody,
    x: &[f64],
    delta: f64,
    safety_cap: u64,
    rng: &mut SamplerRng,
) -> Result<SpeedyStep> {
    let mut improper = 0u64;
    loop {
        let y = sample_in_ball(x, delta, x.len(), rng);
        if body.contains(&y) {
            return Ok(SpeedyStep { point: y, improper });
        }
        improper += 1;
        if improper >= safety_cap {
            return Err(Error::Diagnostics(format!(
                "speedy rejection loop hit the safety cap of {safety_cap}; region around the current point is pathologically thin"
            )));
        }
    }
}

/// Trace of a ball-walk run. Queries equal iterations by construction.
#[derive(Debug, Clone, Serialize)]
pub struct BallWalkTrace {
    pub iterates: Vec<Vec<f64>>,
    pub accepted: Vec<bool>,
    pub total_queries: u64,
}

pub fn run_ball_walk(
    body: &ConvexBody,
    x0: &[f64],
    params: &BallWalkParams,
    rng: &mut SamplerRng,
) -> Result<BallWalkTrace> {
    params.validate()?;
    if !body.contains(x0) {
        return Err(Error::InvalidParameter("x0 must lie in K".into()));
    }
    let mut iterates = Vec::with_capacity(params.iterations as usize + 1);
    let mut accepted = Vec::with_capacity(params.iterations as usize);
    iterates.push(x0.to_vec());
    let mut x = x0.to_vec();
    for _ in 0..params.iterations {
        let (next, ok) = ball_walk_step(body, &x, params.step_radius, rng);
        accepted.push(ok);
        iterates.push(next.clone());
        x = next;
    }
    Ok(BallWalkTrace {
        iterates,
        accepted,
        total_queries: params.iterations,
    })
}

/// Trace of a speedy run over proper steps; queries = proper + improper.
#[derive(Debug, Clone, Serialize)]
pub struct SpeedyTrace {
    pub iterates: Vec<Vec<f64>>,
    pub improper_per_iter: Vec<u64>,
    pub total_queries: u64,
}

pub fn run_speedy_walk(
    body: &ConvexBody,
    x0: &[f64],
    delta: f64,
    proper_steps: u64,
    safety_cap: u64,
    rng: &mut SamplerRng,
) -> Result<SpeedyTrace> {
    if !body.contains(x0) {
        return Err(Error::InvalidParameter("x0 must lie in K".into()));
    }
    let mut iterates = Vec::with_capacity(proper_steps as usize + 1);
    let mut improper_per_iter = Vec::with_capacity(proper_steps as usize);
    iterates.push(x0.to_vec());
    let mut x = x0.to_vec();
    let mut total_queries = 0u64;
    for _ in 0..proper_steps {
        let step = speedy_walk_step(body, &x, delta, safety_cap, rng)?;
        total_queries += step.improper + 1;
        improper_per_iter.push(step.improper);
        iterates.push(step.point.clone());
        x = step.point;
    }
    Ok(SpeedyTrace {
        iterates,
        improper_per_iter,
        total_queries,
    })
}

/// Ball local conductance ℓ(x) = vol(K ∩ B_δ(x)) / vol(B_δ(x)) by Monte Carlo.
pub fn ball_local_conductance_mc(
    body: &ConvexBody,
    x: &[f64],
    delta: f64,
    n: u64,
    rng: &mut SamplerRng,
) -> ConductanceEstimate {
    assert!(n >= 1);
    let mut hits = 0u64;
    for _ in 0..n {
        if body.contains(&sample_in_ball(x, delta, x.len(), rng)) {
            hits += 1;
        }
    }
    ConductanceEstimate {
        estimate: hits as f64 / n as f64,
        ci: stats::wilson_interval(hits, n),
        samples: n,
    }
}

/// Average conductance λ = E_π[ℓ] estimated by one Bernoulli trial per exact
/// uniform point: x ~ Unif(K), u ~ Unif(B_δ(x)), success iff u ∈ K.
pub fn average_conductance_mc(
    body: &ConvexBody,
    delta: f64,
    n: u64,
    rng: &mut SamplerRng,
) -> Result<ConductanceEstimate> {
    if !body.has_exact_sampler() {
        return Err(Error::Unsupported(
            "average conductance needs an exact uniform sampler for the body".into(),
        ));
    }
    let mut hits = 0u64;
    for _ in 0..n {
        let x = body.exact_uniform_sample(rng)?;
        if body.contains(&sample_in_ball(&x, delta, x.len(), rng)) {
            hits += 1;
        }
    }
    Ok(ConductanceEstimate {
        estimate: hits as f64 / n as f64,
        ci: stats::wilson_interval(hits, n),
        samples: n,
    })
}

/// TV bias of the speedy stationary law against uniform: ‖ν − π‖_TV ≤ (1−λ)/λ.
pub fn speedy_tv_bias_bound(lambda: f64) -> f64 {
    assert!(lambda > 0.0 && lambda <= 1.0);
    (1.0 - lambda) / lambda
}

/// Outcome of the speedy→uniform conversion.
#[derive(Debug, Clone)]
pub struct Conversion {
    pub point: Vec<f64>,
    /// Number of speedy samples consumed.
    pub calls: u64,
}

/// Draw speedy samples X until (2d/(2d−1))·X ∈ K, then return the scaled
/// point. Expected calls are at most 2 for a well-set step size.
pub fn speedy_to_uniform(
    body: &ConvexBody,
    mut speedy_sampler: impl FnMut(&mut SamplerRng) -> Vec<f64>,
    rng: &mut SamplerRng,
) -> Result<Conversion> {
    let d = body.dim() as f64;
    let scale = 2.0 * d / (2.0 * d - 1.0);
    for calls in 1..=CONVERSION_SAFETY_CAP {
        let x = speedy_sampler(rng);
        let scaled: Vec<f64> = x.iter().map(|v| scale * v).collect();
        if body.contains(&scaled) {
            return Ok(Conversion {
                point: scaled,
                calls,
            });
        }
    }
    Err(Error::Diagnostics(format!(
        "speedy→uniform conversion exceeded {CONVERSION_SAFETY_CAP} calls; the speedy sampler looks far from stationarity"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::chain_rng;
    use crate::stats::{ks_pvalue, ks_statistic, mean_and_se};

    #[test]
    fn ball_walk_step_examples() {
        let mut rng = chain_rng(20, 0);
        let ball = ConvexBody::ball(3, 1.0).unwrap();
        // B_δ(center) ⊆ K: every proposal accepted.
        for _ in 0..1_000 {
            let (_, ok) = ball_walk_step(&ball, &[0.0; 3], 0.1, &mut rng);
            assert!(ok);
        }

        // Halfspace boundary: acceptance ≈ 1/2.
        let half = crate::geometry::ConvexBody::halfspace_polytope(
            vec![crate::geometry::Halfspace {
                normal: vec![1.0, 0.0],
                offset: 0.0,
            }],
            vec![-2.0, 0.0],
            1e6,
        )
        .unwrap();
        let acc = (0..10_000)
            .filter(|_| ball_walk_step(&half, &[0.0, 0.0], 0.3, &mut rng).1)
            .count() as f64
            / 10_000.0;
        assert!((acc - 0.5).abs() < 0.02, "acc={acc}");

        // δ ≫ 2D freezes the chain: acceptance ≈ vol(K)/vol(B_δ) ≈ 1.3e-6.
        let cube = ConvexBody::cube(2, -1.0, 1.0).unwrap();
        let acc = (0..20_000)
            .filter(|_| ball_walk_step(&cube, &[0.0, 0.0], 1_000.0, &mut rng).1)
            .count();
        assert!(acc <= 1, "accepted {acc} of 20000 with a huge step");
    }

    #[test]
    fn ball_walk_preserves_uniform_marginals() {
        let cube = ConvexBody::cube(3, -1.0, 1.0).unwrap();
        let params = BallWalkParams {
            step_radius: 0.3,
            iterations: 100,
            seed: 21,
        };
        let finals: Vec<Vec<f64>> = (0..1_000u64)
            .map(|k| {
                let mut rng = chain_rng(params.seed, k);
                let x0 = cube.exact_uniform_sample(&mut rng).unwrap();
                run_ball_walk(&cube, &x0, &params, &mut rng)
                    .unwrap()
                    .iterates
                    .pop()
                    .unwrap()
            })
            .collect();
        for axis in 0..3 {
            let cdf = cube.coordinate_marginal_cdf(axis).unwrap();
            let mut xs: Vec<f64> = finals.iter().map(|x| x[axis]).collect();
            let p = ks_pvalue(ks_statistic(&mut xs, cdf), xs.len());
            assert!(p > 0.01, "axis {axis} p={p}");
        }
    }

    #[test]
    fn speedy_step_interior_has_no_improper() {
        let ball = ConvexBody::ball(2, 2.0).unwrap();
        let mut rng = chain_rng(22, 0);
        for _ in 0..500 {
            let s = speedy_walk_step(&ball, &[0.0, 0.0], 0.2, 1_000, &mut rng).unwrap();
            assert_eq!(s.improper, 0);
        }
    }

    #[test]
    fn speedy_step_corner_is_uniform_on_quarter_disk() {
        // At the corner (1,1) of [−1,1]² with δ=0.2, K ∩ B_δ is a quarter disk;
        // accepted angles must be uniform on [π, 3π/2].
        let cube = ConvexBody::cube(2, -1.0, 1.0).unwrap();
        let mut rng = chain_rng(23, 0);
        let corner = [1.0, 1.0];
        let n = 100_000;
        let bins = 8;
        let mut counts = vec![0u64; bins];
        for _ in 0..n {
            let s = speedy_walk_step(&cube, &corner, 0.2, 100_000, &mut rng).unwrap();
            let (dx, dy) = (s.point[0] - 1.0, s.point[1] - 1.0);
            let angle = dy.atan2(dx); // in [−π, −π/2] for the quarter disk
            let frac = (angle + std::f64::consts::PI) / (0.5 * std::f64::consts::PI);
            let b = ((frac * bins as f64) as usize).min(bins - 1);
            counts[b] += 1;
        }
        let probs = vec![1.0 / bins as f64; bins];
        let (stat, _, p) = crate::stats::chi_square_gof(&counts, &probs);
        assert!(p > 0.01, "chi2={stat} p={p}");
        // Radial law sanity: P(r ≤ δ/2) = 1/4 for a disk sector.
        let inner = (0..20_000)
            .filter(|_| {
                let s = speedy_walk_step(&cube, &corner, 0.2, 100_000, &mut rng).unwrap();
                let r2 = (s.point[0] - 1.0).powi(2) + (s.point[1] - 1.0).powi(2);
                r2 <= 0.01
            })
            .count() as f64
            / 20_000.0;
        assert!((inner - 0.25).abs() < 0.015, "inner={inner}");
    }

    #[test]
    fn speedy_improper_scales_linearly_in_t() {
        // Õ(tM) trend: doubling the proper steps roughly doubles the improper count.
        let cube = ConvexBody::cube(3, -1.0, 1.0).unwrap();
        let improper_total = |steps: u64, seed: u64| -> u64 {
            (0..40u64)
                .map(|k| {
                    let mut rng = chain_rng(seed, k);
                    let x0 = cube.exact_uniform_sample(&mut rng).unwrap();
                    run_speedy_walk(&cube, &x0, 0.3, steps, SPEEDY_SAFETY_CAP, &mut rng)
                        .unwrap()
                        .improper_per_iter
                        .iter()
                        .sum::<u64>()
                })
                .sum()
        };
        let t1 = improper_total(400, 24) as f64;
        let t2 = improper_total(800, 24) as f64;
        let ratio = t2 / t1;
        assert!(ratio > 1.5 && ratio < 2.6, "ratio={ratio}");
    }

    #[test]
    fn ball_local_conductance_examples() {
        let mut rng = chain_rng(25, 0);
        let ball = ConvexBody::ball(3, 2.0).unwrap();
        let est = ball_local_conductance_mc(&ball, &[0.0; 3], 0.2, 5_000, &mut rng);
        assert_eq!(est.estimate, 1.0);

        // Box corner in d=2: a quarter of the disk is inside.
        let cube = ConvexBody::cube(2, -1.0, 1.0).unwrap();
        let est = ball_local_conductance_mc(&cube, &[1.0, 1.0], 0.05, 40_000, &mut rng);
        assert!(est.ci.0 <= 0.25 && 0.25 <= est.ci.1, "{est:?}");
    }

    #[test]
    fn average_conductance_bounds() {
        let mut rng = chain_rng(26, 0);
        // δ → 0 gives λ → 1.
        let cube4 = ConvexBody::cube(4, -1.0, 1.0).unwrap();
        let est = average_conductance_mc(&cube4, 1e-6, 20_000, &mut rng).unwrap();
        assert!(est.ci.0 > 0.999);

        // λ ≥ 1 − δ√d/2 at δ = 0.1, d = 4: lower CI above 0.9.
        let est = average_conductance_mc(&cube4, 0.1, 100_000, &mut rng).unwrap();
        assert!(est.ci.0 >= 0.9, "{est:?}");

        // Huge δ on a small ball: λ well below 1.
        let ball = ConvexBody::ball(2, 1.0).unwrap();
        let est = average_conductance_mc(&ball, 2.0, 20_000, &mut rng).unwrap();
        assert!(est.ci.1 < 0.5, "{est:?}");

        assert!(average_conductance_mc(
            &ConvexBody::ellipsoid(vec![1.0, 2.0]).unwrap(),
            0.1,
            10,
            &mut rng
        )
        .is_err());
    }

    #[test]
    fn conversion_expected_calls() {
        let cube = ConvexBody::cube(5, -1.0, 1.0).unwrap();
        let d = 5.0f64;
        let eps = 0.1f64;
        let delta = 1.0 / (8.0 * d * (d / eps).ln()).sqrt();
        // One long speedy chain serves as the approximate speedy sampler.
        let mut chain_rng_ = chain_rng(27, 0);
        let x0 = cube.exact_uniform_sample(&mut chain_rng_).unwrap();
        let trace = run_speedy_walk(
            &cube,
            &x0,
            delta,
            30_000,
            SPEEDY_SAFETY_CAP,
            &mut chain_rng_,
        )
        .unwrap();
        let pool: Vec<Vec<f64>> = trace.iterates[10_000..].to_vec();
        let mut idx = 0usize;
        let mut rng = chain_rng(27, 1);
        let calls: Vec<f64> = (0..1_000)
            .map(|_| {
                let conv = speedy_to_uniform(
                    &cube,
                    |_| {
                        idx += 17; // stride the pool to decorrelate draws
                        pool[idx % pool.len()].clone()
                    },
                    &mut rng,
                )
                .unwrap();
                assert!(cube.contains(&conv.point));
                conv.calls as f64
            })
            .collect();
        let (mean, se) = mean_and_se(&calls);
        assert!(mean <= 2.0 + 3.0 * se, "mean calls {mean}");
    }

    #[test]
    fn deep_interior_conversion_accepts_first_call() {
        let cube = ConvexBody::cube(3, -1.0, 1.0).unwrap();
        let mut rng = chain_rng(28, 0);
        let conv = speedy_to_uniform(&cube, |_| vec![0.01, 0.0, -0.02], &mut rng).unwrap();
        assert_eq!(conv.calls, 1);
    }
}
