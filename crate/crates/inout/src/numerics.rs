//! Gaussian special functions and quadrature used by the samplers and the 1-d oracle.
//!
//! Everything here is careful about the far tails: interval masses are computed
//! from the complementary error function on the side where it is relatively
//! accurate, and log-space variants stay finite long after the linear-space
//! values underflow.

use libm::{erf, erfc};

pub const SQRT_2: f64 = std::f64::consts::SQRT_2;
pub const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Standard normal density.
pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / SQRT_2)
}

/// Standard normal survival function P(Z ≥ z).
pub fn normal_sf(z: f64) -> f64 {
    0.5 * erfc(z / SQRT_2)
}

/// log P(Z ≥ z), finite for all representable `z`.
///
/// Direct erfc is accurate up to z ≈ 30; beyond that we switch to the Mills
/// ratio expansion so the result stays meaningful down to exp(-z²/2) scales
/// far below the f64 underflow threshold of erfc itself.
pub fn ln_normal_sf(z: f64) -> f64 {
    if z <= 30.0 {
        (0.5 * erfc(z / SQRT_2)).ln()
    } else {
        let zi = 1.0 / (z * z);
        // ln[φ(z)/z · (1 − 1/z² + 3/z⁴ − 15/z⁶)]
        -0.5 * z * z - z.ln() - 0.5 * LN_2PI + (1.0 - zi * (1.0 - 3.0 * zi * (1.0 - 5.0 * zi))).ln()
    }
}

/// P(α ≤ Z ≤ β) for a standard normal, relatively accurate even when the
/// whole interval sits deep in one tail.
pub fn gauss_mass(alpha: f64, beta: f64) -> f64 {
    debug_assert!(alpha <= beta);
    if alpha >= 0.0 {
        0.5 * (erfc(alpha / SQRT_2) - erfc(beta / SQRT_2))
    } else if beta <= 0.0 {
        0.5 * (erfc(-beta / SQRT_2) - erfc(-alpha / SQRT_2))
    } else {
        0.5 * (erf(beta / SQRT_2) - erf(alpha / SQRT_2))
    }
}

/// log P(α ≤ Z ≤ β); usable when the mass underflows f64.
pub fn ln_gauss_mass(alpha: f64, beta: f64) -> f64 {
    debug_assert!(alpha <= beta);
    if alpha >= 0.0 {
        let la = ln_normal_sf(alpha);
        let lb = ln_normal_sf(beta);
        la + ln_1m_exp(lb - la)
    } else if beta <= 0.0 {
        ln_gauss_mass(-beta, -alpha)
    } else {
        gauss_mass(alpha, beta).ln()
    }
}

/// ln(1 − eˣ) for x ≤ 0.
fn ln_1m_exp(x: f64) -> f64 {
    debug_assert!(x <= 0.0);
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// (1 − p)^n evaluated stably for huge n and tiny p.
pub fn pow_one_minus(p: f64, n: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p));
    if p >= 1.0 {
        return 0.0;
    }
    (n * (-p).ln_1p()).exp()
}

/// Abscissae (first column) and weights of the 8-point Gauss–Legendre rule on [-1, 1].
pub const GAUSS_LEGENDRE_8: [(f64, f64); 8] = [
    (-0.960_289_856_497_536_2, 0.101_228_536_290_376_26),
    (-0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (-0.525_532_409_916_329, 0.313_706_645_877_887_2),
    (-0.183_434_642_495_649_8, 0.362_683_783_378_362),
    (0.183_434_642_495_649_8, 0.362_683_783_378_362),
    (0.525_532_409_916_329, 0.313_706_645_877_887_2),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (0.960_289_856_497_536_2, 0.101_228_536_290_376_26),
];

/// Euclidean norm.
pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Squared Euclidean distance.
pub fn dist2(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}
