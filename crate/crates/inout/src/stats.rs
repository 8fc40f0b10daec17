//! Small statistical toolbox: confidence intervals, goodness-of-fit tests, and
//! effective sample size. CI conventions are fixed crate-wide: Wilson intervals
//! for proportions, normal approximation for means, 95% level.

use statrs::distribution::{Binomial, ChiSquared, ContinuousCDF, DiscreteCDF};

/// z-value for the fixed 95% level.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Sample mean and standard error of the mean.
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    assert!(!xs.is_empty());
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Wilson 95% interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    assert!(trials > 0 && successes <= trials);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * ((p * (1.0 - p) + z2 / (4.0 * n)) / n).sqrt() / denom;
    let lo = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lo, hi)
}

/// Two-sided Kolmogorov–Smirnov statistic of `samples` against a CDF.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    assert!(!samples.is_empty());
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = samples.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    d
}

/// Asymptotic two-sided KS p-value with Stephens' finite-sample correction.
pub fn ks_pvalue(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    let mut p = 0.0;
    for k in 1..=100 {
        let term = (-2.0 * (k as f64) * (k as f64) * lambda * lambda).exp();
        p += if k % 2 == 1 { 2.0 * term } else { -2.0 * term };
        if term < 1e-18 {
            break;
        }
    }
    p.clamp(0.0, 1.0)
}

/// Pearson χ² goodness-of-fit: observed counts against expected cell
/// probabilities. Returns (statistic, degrees of freedom, p-value).
pub fn chi_square_gof(observed: &[u64], expected_probs: &[f64]) -> (f64, usize, f64) {
    assert_eq!(observed.len(), expected_probs.len());
    let n: u64 = observed.iter().sum();
    let mut stat = 0.0;
    for (&o, &p) in observed.iter().zip(expected_probs) {
        let e = p * n as f64;
        assert!(e > 0.0, "expected count must be positive");
        stat += (o as f64 - e) * (o as f64 - e) / e;
    }
    let df = observed.len() - 1;
    let p = 1.0 - ChiSquared::new(df as f64).unwrap().cdf(stat);
    (stat, df, p)
}

/// One-sided sign test p-value for `successes` of `n` under P(success) = 1/2.
pub fn sign_test_pvalue(successes: u64, n: u64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let b = Binomial::new(0.5, n).unwrap();
    // P(X >= successes)
    if successes == 0 {
        1.0
    } else {
        1.0 - b.cdf(successes - 1)
    }
}

/// Effective sample size via Geyer's initial positive sequence estimator.
pub fn effective_sample_size(series: &[f64]) -> f64 {
    let n = series.len();
    if n < 4 {
        return n as f64;
    }
    let (mean, _) = mean_and_se(series);
    let var: f64 = series.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
    if var == 0.0 {
        return n as f64;
    }
    let acov = |lag: usize| -> f64 {
        series[..n - lag]
            .iter()
            .zip(&series[lag..])
            .map(|(a, b)| (a - mean) * (b - mean))
            .sum::<f64>()
            / n as f64
    };
    let mut tau = 1.0;
    let mut lag = 1;
    while lag + 1 < n {
        let gamma = (acov(lag) + acov(lag + 1)) / var;
        if gamma <= 0.0 {
            break;
        }
        tau += 2.0 * gamma;
        lag += 2;
    }
    (n as f64 / tau).min(n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn wilson_contains_truth_and_orders() {
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && 0.5 < hi);
        let (lo0, hi0) = wilson_interval(0, 100);
        assert_eq!(lo0, 0.0);
        assert!(hi0 > 0.0 && hi0 < 0.06);
    }

    #[test]
    fn ks_accepts_uniform_rejects_shifted() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut xs: Vec<f64> = (0..2000).map(|_| rng.gen::<f64>()).collect();
        let d = ks_statistic(&mut xs, |x| x.clamp(0.0, 1.0));
        assert!(ks_pvalue(d, xs.len()) > 0.01);

        let mut ys: Vec<f64> = xs.iter().map(|x| (x * 0.9 + 0.1).min(1.0)).collect();
        let d = ks_statistic(&mut ys, |x| x.clamp(0.0, 1.0));
        assert!(ks_pvalue(d, ys.len()) < 1e-6);
    }

    #[test]
    fn chi_square_uniform_counts_pass() {
        let observed = vec![250u64, 249, 251, 250];
        let probs = vec![0.25; 4];
        let (_, df, p) = chi_square_gof(&observed, &probs);
        assert_eq!(df, 3);
        assert!(p > 0.9);
    }

    #[test]
    fn ess_iid_near_n_and_correlated_below() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let iid: Vec<f64> = (0..4000).map(|_| rng.gen::<f64>()).collect();
        assert!(effective_sample_size(&iid) > 2500.0);

        // AR(1) with strong correlation.
        let mut x = 0.0;
        let ar: Vec<f64> = (0..4000)
            .map(|_| {
                x = 0.95 * x + rng.gen::<f64>() - 0.5;
                x
            })
            .collect();
        assert!(effective_sample_size(&ar) < 600.0);
    }
}
