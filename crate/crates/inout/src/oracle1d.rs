//! Exact discretized In-and-Out kernel and heat flows in one dimension.
//!
//! This is the independent brute-force oracle behind the divergence-level
//! claims: stationarity, contraction rates, the de Bruijn identity, warmness
//! propagation, and the capped-kernel conditioning bias.
//!
//! The kernel evaluates the backward integrand through the error-function
//! primitive on a quadrature mesh that is decoupled from the mass lattice:
//! for a step from μ,
//!
//!   μ'(x) = ∫ φ_h(x−y) 1_K(x) / ℓ(y) · (μ*φ_h)(y) dy,   ℓ(y) = ∫_K φ_h(x−y) dx,
//!
//! with (μ*φ_h)(y) computed exactly from the piecewise-constant density the
//! cell masses represent. Since the per-cell masses of N(y, h) sum to ℓ(y)
//! identically, the discrete kernel is exactly stochastic and the uniform law
//! on [a, b] is stationary to machine precision, not merely O(Δx²).
//!
//! Local conductances are handled in log space, so cells far outside [a, b]
//! where ℓ underflows linear f64 still contribute correctly.

use crate::error::{Error, Result};
use crate::numerics::{gauss_mass, ln_gauss_mass, pow_one_minus, GAUSS_LEGENDRE_8};

const LATTICE_EPS: f64 = 1e-9;
const MIN_CELLS: usize = 16;
/// Margin multiple of √t kept beyond [a,b]; 8 standard deviations keeps
/// heat-flow leakage far below the 1e-10 mass-conservation tolerance.
const MARGIN_SIGMAS: f64 = 8.0;
const MASS_TOL: f64 = 1e-10;

/// A nonnegative unit-mass density discretized on a uniform cell lattice.
#[derive(Debug, Clone)]
pub struct Grid1D {
    lo: f64,
    hi: f64,
    mass: Vec<f64>,
}

impl Grid1D {
    /// Build from raw nonnegative cell weights; normalizes to unit mass.
    pub fn new(lo: f64, hi: f64, weights: Vec<f64>) -> Result<Self> {
        if !(hi > lo) {
            return Err(Error::InvalidParameter("grid needs hi > lo".into()));
        }
        if weights.len() < MIN_CELLS {
            return Err(Error::InvalidParameter(format!(
                "grid needs ≥ {MIN_CELLS} cells, got {}",
                weights.len()
            )));
        }
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) || weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidParameter(
                "grid weights must be nonnegative, finite, and not all zero".into(),
            ));
        }
        let mass = weights.into_iter().map(|w| w / total).collect();
        Ok(Self { lo, hi, mass })
    }

    /// Uniform mass on [a, b] with `core` cells of exact width (b−a)/core, plus
    /// margin cells covering `MARGIN_SIGMAS · √t_max` on both sides so heat
    /// flows of total time `t_max` conserve mass.
    pub fn around_interval(a: f64, b: f64, core: usize, t_max: f64) -> Result<Self> {
        if !(b > a) || core < MIN_CELLS {
            return Err(Error::InvalidParameter(
                "interval grid needs b > a and ≥ 16 core cells".into(),
            ));
        }
        let dx = (b - a) / core as f64;
        let margin_cells = if t_max > 0.0 {
            (MARGIN_SIGMAS * t_max.sqrt() / dx).ceil() as usize
        } else {
            0
        };
        let n = core + 2 * margin_cells;
        let lo = a - margin_cells as f64 * dx;
        let hi = b + margin_cells as f64 * dx;
        let mut weights = vec![0.0; n];
        for w in &mut weights[margin_cells..margin_cells + core] {
            *w = 1.0;
        }
        Self::new(lo, hi, weights)
    }

    /// Same lattice, new mass proportional to `f` sampled at cell centers.
    pub fn map_density(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let weights: Vec<f64> = (0..self.n()).map(|i| f(self.center(i))).collect();
        Self::new(self.lo, self.hi, weights)
    }

    /// Point mass in the cell containing `x`.
    pub fn point_mass_at(&self, x: f64) -> Result<Self> {
        let i = self
            .cell_of(x)
            .ok_or_else(|| Error::InvalidParameter(format!("point {x} lies outside the grid")))?;
        let mut weights = vec![0.0; self.n()];
        weights[i] = 1.0;
        Self::new(self.lo, self.hi, weights)
    }

    /// Discretized N(mean, var) on a fresh lattice.
    pub fn gaussian(lo: f64, hi: f64, n: usize, mean: f64, var: f64) -> Result<Self> {
        if !(var > 0.0) {
            return Err(Error::InvalidParameter("gaussian needs var > 0".into()));
        }
        let base = Self::new(lo, hi, vec![1.0; n])?;
        base.map_density(|x| (-(x - mean) * (x - mean) / (2.0 * var)).exp())
    }

    pub fn n(&self) -> usize {
        self.mass.len()
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn dx(&self) -> f64 {
        (self.hi - self.lo) / self.n() as f64
    }

    pub fn center(&self, i: usize) -> f64 {
        self.lo + (i as f64 + 0.5) * self.dx()
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Density implied by the cell mass.
    pub fn density(&self, i: usize) -> f64 {
        self.mass[i] / self.dx()
    }

    pub fn cell_of(&self, x: f64) -> Option<usize> {
        if x < self.lo || x > self.hi {
            return None;
        }
        Some((((x - self.lo) / self.dx()) as usize).min(self.n() - 1))
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    pub fn same_lattice(&self, other: &Self) -> bool {
        self.n() == other.n()
            && (self.lo - other.lo).abs() <= LATTICE_EPS * self.dx()
            && (self.hi - other.hi).abs() <= LATTICE_EPS * self.dx()
    }

    /// L¹ distance between the two discretized laws (= Σ |mass difference|).
    pub fn l1(&self, other: &Self) -> f64 {
        assert!(self.same_lattice(other));
        self.mass
            .iter()
            .zip(&other.mass)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }

    pub fn mean(&self) -> f64 {
        (0..self.n()).map(|i| self.mass[i] * self.center(i)).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        (0..self.n())
            .map(|i| self.mass[i] * (self.center(i) - m) * (self.center(i) - m))
            .sum()
    }
}

/// sup dμ/dν over cells (∞ where ν vanishes but μ does not).
pub fn sup_ratio(mu: &Grid1D, nu: &Grid1D) -> f64 {
    assert!(mu.same_lattice(nu));
    let mut best: f64 = 0.0;
    for (&m, &v) in mu.mass().iter().zip(nu.mass()) {
        if m > 0.0 {
            if v <= 0.0 {
                return f64::INFINITY;
            }
            best = best.max(m / v);
        }
    }
    best
}

/// Discrete convolution with the N(0, t) kernel sampled at cell centers,
/// renormalized. t = 0 is the identity.
pub fn heat_convolve(grid: &Grid1D, t: f64) -> Result<Grid1D> {
    if t < 0.0 {
        return Err(Error::InvalidParameter("diffusion time must be ≥ 0".into()));
    }
    if t == 0.0 {
        return Ok(grid.clone());
    }
    let dx = grid.dx();
    let n = grid.n();
    let sigma = t.sqrt();
    let radius = ((8.5 * sigma / dx).ceil() as usize + 1).min(n - 1);
    let mut kernel = Vec::with_capacity(2 * radius + 1);
    for k in -(radius as isize)..=(radius as isize) {
        let u = k as f64 * dx;
        kernel.push((-u * u / (2.0 * t)).exp());
    }
    let ksum: f64 = kernel.iter().sum();
    kernel.iter_mut().for_each(|w| *w /= ksum);

    let mut out = vec![0.0; n];
    for (j, &mj) in grid.mass().iter().enumerate() {
        if mj == 0.0 {
            continue;
        }
        let k_lo = radius.saturating_sub(j);
        let k_hi = (2 * radius + 1).min(radius + n - j);
        for k in k_lo..k_hi {
            out[j + k - radius] += mj * kernel[k];
        }
    }
    let total: f64 = out.iter().sum();
    if 1.0 - total > MASS_TOL {
        return Err(Error::Tolerance(format!(
            "heat flow leaked {:.3e} mass; the grid margin is too small for t = {t}",
            1.0 - total
        )));
    }
    out.iter_mut().for_each(|m| *m /= total);
    Ok(Grid1D {
        lo: grid.lo,
        hi: grid.hi,
        mass: out,
    })
}

/// One In-and-Out step on [a, b] with variance h, optionally capped at N
/// backward trials. Precomputes the quadrature tables once; `apply` is then a
/// pair of dense passes.
pub struct InOutKernel1d {
    a: f64,
    b: f64,
    h: f64,
    cap: Option<f64>,
    lattice: Grid1D,
    core: std::ops::Range<usize>,
    /// Per node: quadrature weight, ℓ(y), log ℓ(y), and (1−ℓ)^N for the cap.
    node_weight: Vec<f64>,
    node_ell: Vec<f64>,
    node_fail: Vec<f64>,
    /// mass rows[node][j] = P(N(y_node, h) ∈ cell j), j ∈ core, flattened.
    rows: Vec<f64>,
}

impl InOutKernel1d {
    pub fn new(template: &Grid1D, a: f64, b: f64, h: f64, cap: Option<u64>) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter("h must be > 0".into()));
        }
        if !(b > a) {
            return Err(Error::InvalidParameter("interval needs b > a".into()));
        }
        if let Some(0) = cap {
            return Err(Error::InvalidParameter("trial cap must be ≥ 1".into()));
        }
        let dx = template.dx();
        let sigma = h.sqrt();
        // [a, b] must be a union of whole cells.
        let fa = (a - template.lo()) / dx;
        let fb = (b - template.lo()) / dx;
        if (fa - fa.round()).abs() > LATTICE_EPS || (fb - fb.round()).abs() > LATTICE_EPS {
            return Err(Error::InvalidParameter(
                "interval endpoints must lie on cell edges".into(),
            ));
        }
        let core = fa.round() as usize..fb.round() as usize;
        if core.is_empty() || core.end > template.n() {
            return Err(Error::InvalidParameter("interval outside the grid".into()));
        }
        if (a - template.lo()) < MARGIN_SIGMAS * sigma - LATTICE_EPS
            || (template.hi() - b) < MARGIN_SIGMAS * sigma - LATTICE_EPS
        {
            return Err(Error::Tolerance(format!(
                "grid margin must be ≥ {MARGIN_SIGMAS}·√h = {} on both sides of [a, b]",
                MARGIN_SIGMAS * sigma
            )));
        }

        // Composite Gauss–Legendre mesh over the whole grid; panels of ~σ/4
        // make the smooth Gaussian integrands converge far below 1e-12.
        let n_panels = (((template.hi() - template.lo()) / (0.25 * sigma)).ceil() as usize).max(4);
        let panel_w = (template.hi() - template.lo()) / n_panels as f64;
        let core_len = core.len();
        let mut node_weight = Vec::with_capacity(8 * n_panels);
        let mut node_ell = Vec::with_capacity(8 * n_panels);
        let mut node_fail = Vec::with_capacity(8 * n_panels);
        let mut rows = Vec::with_capacity(8 * n_panels * core_len);
        let cap_f = cap.map(|n| n as f64);
        for p in 0..n_panels {
            let mid = template.lo() + (p as f64 + 0.5) * panel_w;
            for &(xi, wi) in &GAUSS_LEGENDRE_8 {
                let y = mid + 0.5 * panel_w * xi;
                let w = 0.5 * panel_w * wi;
                let alpha = (a - y) / sigma;
                let beta = (b - y) / sigma;
                let ell = gauss_mass(alpha, beta);
                let ln_ell = ln_gauss_mass(alpha, beta);
                node_weight.push(w);
                node_ell.push(if ell > 0.0 { ell } else { ln_ell.exp() });
                node_fail.push(match cap_f {
                    Some(n) => pow_one_minus(ell.min(1.0), n),
                    None => 0.0,
                });
                for j in core.clone() {
                    let e0 = (template.lo() + j as f64 * dx - y) / sigma;
                    let e1 = (template.lo() + (j + 1) as f64 * dx - y) / sigma;
                    rows.push(gauss_mass(e0, e1));
                }
            }
        }
        Ok(Self {
            a,
            b,
            h,
            cap: cap_f,
            lattice: template.clone(),
            core,
            node_weight,
            node_ell,
            node_fail,
            rows,
        })
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn is_capped(&self) -> bool {
        self.cap.is_some()
    }

    /// Uniform law on [a, b] over this kernel's lattice.
    pub fn uniform_target(&self) -> Grid1D {
        let mut weights = vec![0.0; self.lattice.n()];
        for w in &mut weights[self.core.clone()] {
            *w = 1.0;
        }
        Grid1D::new(self.lattice.lo(), self.lattice.hi(), weights).expect("valid lattice")
    }

    /// Apply one In-and-Out step to a law supported on [a, b].
    pub fn apply(&self, mu: &Grid1D) -> Result<KernelStep> {
        if !mu.same_lattice(&self.lattice) {
            return Err(Error::InvalidParameter(
                "input grid lattice does not match the kernel".into(),
            ));
        }
        let outside: f64 = mu
            .mass()
            .iter()
            .enumerate()
            .filter(|(j, _)| !self.core.contains(j))
            .map(|(_, m)| m)
            .sum();
        if outside > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "input law has {outside:.3e} mass outside [a, b]"
            )));
        }
        let dx = self.lattice.dx();
        let core_len = self.core.len();
        let core_mass = &mu.mass()[self.core.clone()];
        let n_nodes = self.node_weight.len();

        // Forward density (μ * φ_h)(y) at every quadrature node.
        let mut forward = vec![0.0; n_nodes];
        for (node, f) in forward.iter_mut().enumerate() {
            let row = &self.rows[node * core_len..(node + 1) * core_len];
            let mut acc = 0.0;
            for (r, m) in row.iter().zip(core_mass) {
                acc += r * m;
            }
            *f = acc / dx;
        }
        let forward_mass: f64 = self
            .node_weight
            .iter()
            .zip(&forward)
            .map(|(w, f)| w * f)
            .sum();
        if 1.0 - forward_mass > MASS_TOL {
            return Err(Error::Tolerance(format!(
                "forward density lost {:.3e} mass beyond the grid; enlarge the margin",
                1.0 - forward_mass
            )));
        }

        // Backward pass: spread w·ρ(y)·s(y)/ℓ(y) over the cells of [a, b].
        let mut out = vec![0.0; self.lattice.n()];
        let mut failure = 0.0;
        for (node, &rho) in forward.iter().enumerate() {
            if rho == 0.0 {
                continue;
            }
            let w = self.node_weight[node];
            let fail_frac = self.node_fail[node];
            failure += w * rho * fail_frac;
            let coeff = w * rho * (1.0 - fail_frac) / self.node_ell[node];
            if coeff == 0.0 {
                continue;
            }
            let row = &self.rows[node * core_len..(node + 1) * core_len];
            for (o, r) in out[self.core.clone()].iter_mut().zip(row) {
                *o += coeff * r;
            }
        }
        let success_mass: f64 = out.iter().sum();
        if !(success_mass > 0.0) {
            return Err(Error::Tolerance(
                "capped kernel annihilated all mass; cap far too small".into(),
            ));
        }
        out.iter_mut().for_each(|m| *m /= success_mass);
        Ok(KernelStep {
            grid: Grid1D {
                lo: self.lattice.lo(),
                hi: self.lattice.hi(),
                mass: out,
            },
            failure_mass: failure / forward_mass,
        })
    }
}

/// Output of one kernel application: the (conditioned, for capped kernels)
/// next law and the failure probability mass of the step.
#[derive(Debug, Clone)]
pub struct KernelStep {
    pub grid: Grid1D,
    pub failure_mass: f64,
}

/// Divergence kinds for grid laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Div {
    Tv,
    Kl,
    /// χ^q for q > 1 (q = 2 is the usual χ²).
    ChiQ(f64),
    /// Rényi of order q > 1; `f64::INFINITY` gives log sup dμ/dν.
    RenyiQ(f64),
}

/// Riemann-sum divergence of μ against ν on a shared lattice. Returns +∞ when
/// absolute continuity fails for the kinds that need it.
pub fn divergence(mu: &Grid1D, nu: &Grid1D, kind: Div) -> Result<f64> {
    if !mu.same_lattice(nu) {
        return Err(Error::InvalidParameter(
            "grids on different lattices".into(),
        ));
    }
    match kind {
        Div::Tv => Ok(0.5 * mu.l1(nu)),
        Div::Kl => {
            let mut acc = 0.0;
            for (&m, &v) in mu.mass().iter().zip(nu.mass()) {
                if m > 0.0 {
                    if v <= 0.0 {
                        return Ok(f64::INFINITY);
                    }
                    acc += m * (m / v).ln();
                }
            }
            Ok(acc)
        }
        Div::ChiQ(q) => {
            if !(q > 1.0) || !q.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "chi_q needs finite q > 1, got {q} (KL is provided separately)"
                )));
            }
            chi_q(mu, nu, q)
        }
        Div::RenyiQ(q) => {
            if q.is_infinite() {
                return Ok(sup_ratio(mu, nu).ln());
            }
            if !(q > 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "Rényi order must be > 1, got {q}"
                )));
            }
            Ok((chi_q(mu, nu, q)? + 1.0).ln() / (q - 1.0))
        }
    }
}

fn chi_q(mu: &Grid1D, nu: &Grid1D, q: f64) -> Result<f64> {
    let mut acc = 0.0;
    for (&m, &v) in mu.mass().iter().zip(nu.mass()) {
        if v > 0.0 {
            acc += v * (m / v).powf(q);
        } else if m > 0.0 {
            return Ok(f64::INFINITY);
        }
    }
    Ok(acc - 1.0)
}

/// Right side of the general de Bruijn identity at a fixed time:
/// −q(q−1)/2 · E_ν[(dμ/dν)^q |∇ log dμ/dν|²], gradients by central differences
/// with one-sided fallback at the ends of the common support.
pub fn debruijn_rhs(mu_t: &Grid1D, nu_t: &Grid1D, q: f64) -> f64 {
    let ln_r = log_ratio(mu_t, nu_t);
    let grad = finite_diff(&ln_r, mu_t.dx());
    let mut acc = 0.0;
    for i in 0..mu_t.n() {
        if let (Some(lr), Some(g)) = (ln_r[i], grad[i]) {
            acc += nu_t.mass()[i] * (q * lr).exp() * g * g;
        }
    }
    -0.5 * q * (q - 1.0) * acc
}

/// Direct χ² form ∂_t χ² = −E_ν[|∇ dμ/dν|²] evaluated with central
/// differences of the ratio itself; used to cross-check `debruijn_rhs` at q=2.
pub fn chi2_gradient_rhs(mu_t: &Grid1D, nu_t: &Grid1D) -> f64 {
    let r: Vec<Option<f64>> = mu_t
        .mass()
        .iter()
        .zip(nu_t.mass())
        .map(|(&m, &v)| (v > 1e-280).then(|| m / v))
        .collect();
    let grad = finite_diff(&r, mu_t.dx());
    let mut acc = 0.0;
    for (g, &v) in grad.iter().zip(nu_t.mass()) {
        if let Some(g) = g {
            acc += v * g * g;
        }
    }
    -acc
}

fn log_ratio(mu: &Grid1D, nu: &Grid1D) -> Vec<Option<f64>> {
    mu.mass()
        .iter()
        .zip(nu.mass())
        .map(|(&m, &v)| (m > 1e-280 && v > 1e-280).then(|| (m / v).ln()))
        .collect()
}

/// Central difference over the valid region, one-sided at its ends.
fn finite_diff(values: &[Option<f64>], dx: f64) -> Vec<Option<f64>> {
    let n = values.len();
    let mut out = vec![None; n];
    for i in 0..n {
        let here = match values[i] {
            Some(v) => v,
            None => continue,
        };
        let left = if i > 0 { values[i - 1] } else { None };
        let right = if i + 1 < n { values[i + 1] } else { None };
        out[i] = match (left, right) {
            (Some(l), Some(r)) => Some((r - l) / (2.0 * dx)),
            (None, Some(r)) => Some((r - here) / dx),
            (Some(l), None) => Some((here - l) / dx),
            (None, None) => None,
        };
    }
    out
}

/// Both sides of the de Bruijn identity for χ^q along simultaneous heat flow
/// at time `t`, with the derivative estimated by a central difference of
/// half-width `dt`.
#[derive(Debug, Clone, Copy)]
pub struct DebruijnCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
}

pub fn debruijn_check(mu: &Grid1D, nu: &Grid1D, t: f64, dt: f64, q: f64) -> Result<DebruijnCheck> {
    if !(q > 1.0) {
        return Err(Error::InvalidParameter(
            "de Bruijn check needs q > 1".into(),
        ));
    }
    if !(dt > 0.0 && t > dt) {
        return Err(Error::InvalidParameter("need 0 < Δt < t".into()));
    }
    let dx = mu.dx();
    // Smoothness precondition: inputs must effectively be pre-convolved by
    // ≥ 10·Δx² before we differentiate on the grid.
    if t - dt < 10.0 * dx * dx {
        return Err(Error::InvalidParameter(format!(
            "t − Δt = {} is below the smoothing floor 10·Δx² = {}",
            t - dt,
            10.0 * dx * dx
        )));
    }
    let chi_at = |tau: f64| -> Result<f64> {
        divergence(
            &heat_convolve(mu, tau)?,
            &heat_convolve(nu, tau)?,
            Div::ChiQ(q),
        )
    };
    let lhs = (chi_at(t + dt)? - chi_at(t - dt)?) / (2.0 * dt);
    let rhs = debruijn_rhs(&heat_convolve(mu, t)?, &heat_convolve(nu, t)?, q);
    let rel_err = (lhs - rhs).abs() / rhs.abs().max(1e-12);
    Ok(DebruijnCheck { lhs, rhs, rel_err })
}

/// Apply the kernel `steps` times, recording the divergence to Unif[a, b]
/// before the first step and after every step.
pub fn contraction_measured(
    kernel: &InOutKernel1d,
    start: &Grid1D,
    steps: usize,
    kind: Div,
) -> Result<Vec<f64>> {
    let target = kernel.uniform_target();
    let mut series = Vec::with_capacity(steps + 1);
    series.push(divergence(start, &target, kind)?);
    let mut current = start.clone();
    for _ in 0..steps {
        current = kernel.apply(&current)?.grid;
        series.push(divergence(&current, &target, kind)?);
    }
    Ok(series)
}

/// Poincaré constant of Unif[a, b] by brute force: reciprocal of the smallest
/// nonzero eigenvalue of the n-cell Neumann Laplacian, located by Sturm
/// bisection on the tridiagonal matrix. Converges to (b−a)²/π².
pub fn interval_cpi(a: f64, b: f64, n: usize) -> f64 {
    assert!(b > a && n >= 4);
    let dx = (b - a) / n as f64;
    let scale = 1.0 / (dx * dx);
    // diag: [1, 2, …, 2, 1]·scale, off-diagonal −scale.
    let diag = |i: usize| -> f64 {
        if i == 0 || i == n - 1 {
            scale
        } else {
            2.0 * scale
        }
    };
    let count_below = |sigma: f64| -> usize {
        let mut count = 0;
        let mut d = diag(0) - sigma;
        if d < 0.0 {
            count += 1;
        }
        for i in 1..n {
            if d == 0.0 {
                d = -1e-300;
            }
            d = diag(i) - sigma - scale * scale / d;
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };
    let mut lo = 0.0;
    let mut hi = 4.1 * scale;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count_below(mid) >= 2 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    2.0 / (lo + hi)
}
