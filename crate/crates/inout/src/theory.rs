//! Closed-form schedules and bound calculators for the In-and-Out chain:
//! per-iteration (h, N) schedule, divergence decay predictions, functional-
//! inequality constants, point-start warmness, blowup tails, conditioning
//! bias, and the self-consistent iteration count.
//!
//! Several bounds hide universal constants behind `≲`. Those constants are
//! configuration values defaulting to 1.0 and are NOT certified; empirical
//! reports treat them as fit parameters only.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Universal constants hidden by the asymptotic notation. Defaults of 1.0 are
/// placeholders for schedule prediction, never correctness claims.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Constants {
    /// Multiplier for the Poincaré upper bound ‖cov‖_op · log d.
    pub c_pi: f64,
    /// Multiplier for the log-Sobolev upper bound D² (or D when isotropic).
    pub c_lsi: f64,
    /// Multiplier for the iteration-count fixed point.
    pub c_iter: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self {
            c_pi: 1.0,
            c_lsi: 1.0,
            c_iter: 1.0,
        }
    }
}

/// Output of the per-iteration schedule: all quantities the failure analysis
/// fixes once (m, M, η, d) are chosen.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Schedule {
    /// Z = 9mM/η.
    pub z: f64,
    pub log_z: f64,
    pub log_log_z: f64,
    /// c = log log Z / (2 log Z), so that h = c/d².
    pub c: f64,
    /// Step variance h = c/d².
    pub h: f64,
    /// t = √8 · log log Z (blowup margin parameter).
    pub t: f64,
    /// δ = t/d (blowup distance).
    pub delta: f64,
    /// Trial cap N = ⌈Z log⁴ Z⌉, kept as f64 since it can exceed u64 for
    /// extreme inputs; see [`Schedule::trial_cap_u64`].
    pub trial_cap: f64,
}

impl Schedule {
    /// Trial cap as an integer, saturating at u64::MAX.
    pub fn trial_cap_u64(&self) -> u64 {
        if self.trial_cap >= u64::MAX as f64 {
            u64::MAX
        } else {
            self.trial_cap as u64
        }
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "η must lie in (0,1), got {eta}"
        )));
    }
    Ok(())
}

fn check_warmness(warmness: f64) -> Result<()> {
    if !(warmness >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "warmness M must be ≥ 1, got {warmness}"
        )));
    }
    Ok(())
}

/// Per-iteration schedule: Z = 9mM/η, h = d⁻² log log Z / (2 log Z),
/// N = Z log⁴ Z, plus the blowup pair (t, δ) the failure analysis uses.
pub fn per_iteration_schedule(iters: u64, warmness: f64, eta: f64, dim: u32) -> Result<Schedule> {
    if iters == 0 || dim == 0 {
        return Err(Error::InvalidParameter("need m ≥ 1 and d ≥ 1".into()));
    }
    check_eta(eta)?;
    check_warmness(warmness)?;
    let z = 9.0 * iters as f64 * warmness / eta;
    // Valid inputs give Z ≥ 9 > e; the guard only fires on pathological ones.
    if z <= std::f64::consts::E {
        return Err(Error::InvalidParameter(format!(
            "Z = 9mM/η = {z} ≤ e makes log log Z undefined or negative"
        )));
    }
    let log_z = z.ln();
    let log_log_z = log_z.ln();
    let c = log_log_z / (2.0 * log_z);
    let d = dim as f64;
    let t = 8.0f64.sqrt() * log_log_z;
    Ok(Schedule {
        z,
        log_z,
        log_log_z,
        c,
        h: c / (d * d),
        t,
        delta: t / d,
        trial_cap: (z * log_z.powi(4)).ceil(),
    })
}

/// Headline step size h = (2d² log(9mM/η))⁻¹. Differs from the per-iteration
/// schedule's h by the factor log log Z.
pub fn main_step_size(iters: u64, warmness: f64, eta: f64, dim: u32) -> Result<f64> {
    if iters == 0 || dim == 0 {
        return Err(Error::InvalidParameter("need m ≥ 1 and d ≥ 1".into()));
    }
    check_eta(eta)?;
    check_warmness(warmness)?;
    let z = 9.0 * iters as f64 * warmness / eta;
    if z <= 1.0 {
        return Err(Error::InvalidParameter(
            "log(9mM/η) must be positive".into(),
        ));
    }
    let d = dim as f64;
    Ok(1.0 / (2.0 * d * d * z.ln()))
}

/// Rényi decay under a log-Sobolev constant: R₀ / (1 + h/C_LSI)^{k/q}.
pub fn renyi_decay_lsi(r0: f64, k: u64, h: f64, c_lsi: f64, q: f64) -> f64 {
    assert!(q >= 1.0 && c_lsi > 0.0 && h > 0.0);
    r0 * (1.0 + h / c_lsi).powf(-(k as f64) / q)
}

/// χ² decay under a Poincaré constant: χ₀ / (1 + h/C_PI)^k.
pub fn chi2_decay_pi(x0: f64, k: u64, h: f64, c_pi: f64) -> f64 {
    assert!(c_pi > 0.0 && h > 0.0);
    x0 * (1.0 + h / c_pi).powf(-(k as f64))
}

/// Two-phase Rényi decay under a Poincaré constant (q ≥ 2): linear while the
/// divergence exceeds 1, geometric afterwards with crossover
/// k₀ = ⌈q (R₀ − 1) / (2 log(1 + h/C_PI))⌉.
pub fn renyi_decay_pi_two_phase(r0: f64, k: u64, h: f64, c_pi: f64, q: f64) -> f64 {
    assert!(q >= 2.0 && c_pi > 0.0 && h > 0.0 && r0 >= 0.0);
    let rate = (1.0 + h / c_pi).ln();
    if r0 < 1.0 {
        return r0 * (-(k as f64) * rate / q).exp();
    }
    let k0 = (q * (r0 - 1.0) / (2.0 * rate)).ceil();
    let k = k as f64;
    if k < k0 {
        r0 - k * rate / q
    } else {
        (-(k - k0) * rate / q).exp()
    }
}

/// Upper-bound estimates for the functional-inequality constants of Unif(K).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FiBounds {
    pub c_pi_upper: f64,
    pub c_lsi_upper: f64,
}

/// C_PI ≲ ‖cov‖_op log d and C_LSI ≲ D² (D when isotropic), with the hidden
/// constants supplied by `constants`. Prediction-only; the log factor is
/// floored at 1 so d = 1 stays meaningful.
pub fn fi_constants(
    cov_opnorm: f64,
    circumradius: f64,
    dim: u32,
    isotropic: bool,
    constants: &Constants,
) -> FiBounds {
    assert!(cov_opnorm > 0.0 && circumradius > 0.0 && dim >= 1);
    let log_d = (dim as f64).ln().max(1.0);
    let c_pi_upper = constants.c_pi * cov_opnorm * log_d;
    let c_lsi_upper = if isotropic {
        constants.c_lsi * circumradius
    } else {
        constants.c_lsi * circumradius * circumradius
    };
    FiBounds {
        c_pi_upper,
        c_lsi_upper,
    }
}

/// log of the warmness bound of the first iterate from a point start:
/// log M ≤ (d/2) log 2 + 5 D²/h. Returned in log space to avoid overflow.
pub fn point_start_log_warmness(dim: u32, h: f64, circumradius: f64) -> f64 {
    assert!(h > 0.0 && circumradius > 0.0 && dim >= 1);
    0.5 * dim as f64 * std::f64::consts::LN_2 + 5.0 * circumradius * circumradius / h
}

/// Forward-step blowup tail bound π^Y(K_δᶜ) ≤ exp(−δ²/2h + δd), clamped to 1.
pub fn blowup_tail_bound(delta: f64, h: f64, dim: u32) -> f64 {
    assert!(delta >= 0.0 && h > 0.0);
    (-delta * delta / (2.0 * h) + delta * dim as f64)
        .exp()
        .min(1.0)
}

/// Rényi bias added by conditioning on no failure:
/// (q/(q−1)) log(1/(1−η)); for q = ∞, log(1/(1−η)).
pub fn conditioning_bias(q: f64, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    let base = -(-eta).ln_1p(); // log(1/(1−η))
    if q.is_infinite() {
        return Ok(base);
    }
    if !(q > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "conditioning bias needs q > 1 (or ∞), got {q}"
        )));
    }
    Ok(q / (q - 1.0) * base)
}

/// Smallest m with m ≥ C·q·d²·‖cov‖_op·log d·log(M/(ηε))·log(9mM/η), found by
/// fixed-point iteration (the right side grows only logarithmically in m).
pub fn iteration_count(
    q: f64,
    dim: u32,
    cov_opnorm: f64,
    warmness: f64,
    eta: f64,
    eps: f64,
    constants: &Constants,
) -> Result<u64> {
    if !(q >= 1.0) || dim == 0 || !(cov_opnorm > 0.0) {
        return Err(Error::InvalidParameter(
            "need q ≥ 1, d ≥ 1, cov_opnorm > 0".into(),
        ));
    }
    check_eta(eta)?;
    check_warmness(warmness)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "ε must lie in (0,1), got {eps}"
        )));
    }
    let d = dim as f64;
    let log_d = d.ln().max(1.0);
    let a = constants.c_iter * q * d * d * cov_opnorm * log_d * (warmness / (eta * eps)).ln();
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(
            "iteration-count coefficient is not positive; check M/(ηε) > 1".into(),
        ));
    }
    let b = 9.0 * warmness / eta;
    let mut x: f64 = 1.0;
    let mut converged = false;
    for _ in 0..100 {
        let next = a * (b * x.max(1.0)).ln();
        if (next - x).abs() <= 1e-9 * next.abs().max(1.0) {
            x = next;
            converged = true;
            break;
        }
        x = next;
    }
    if !converged {
        return Err(Error::InvalidParameter(
            "iteration-count fixed point did not converge".into(),
        ));
    }
    let mut m = x.ceil().max(1.0);
    while m < a * (b * m).ln() {
        m += 1.0;
    }
    Ok(m as u64)
}

/// Proper-step counts sufficient for R_q ≤ ε, via the Poincaré route (q ≥ 2)
/// and the log-Sobolev route (q ≥ 1). Both are exposed; callers take the min.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ProperStepBounds {
    pub via_pi: Option<f64>,
    pub via_lsi: f64,
}

pub fn proper_step_bounds(
    q: f64,
    h: f64,
    c_pi: f64,
    c_lsi: f64,
    warmness: f64,
    eps: f64,
) -> ProperStepBounds {
    assert!(q >= 1.0 && h > 0.0 && c_pi > 0.0 && c_lsi > 0.0 && warmness >= 1.0 && eps > 0.0);
    // R_q of an M-warm start is at most log M; floor at 1 so M near 1 still
    // yields a usable count.
    let r0 = warmness.ln().max(1.0);
    let via_pi = (q >= 2.0).then(|| q * c_pi / h * (r0 + (1.0 / eps).ln()));
    let via_lsi = q * c_lsi / h * (r0 / eps).ln();
    ProperStepBounds { via_pi, via_lsi }
}
