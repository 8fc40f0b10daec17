//! Convex-body zoo behind a well-defined membership oracle.
//!
//! Every body is normalized at construction so that the unit ball around its
//! center is inscribed and the circumradius `D` is known:
//! `B_1(x0) ⊆ K ⊆ B_D(x0)`. Constructors reject inputs violating this.
//!
//! Beyond membership (the only query the samplers may use), analytic bodies
//! expose exact auxiliaries for tests and diagnostics: Euclidean distance,
//! blowup membership, ground-truth uniform sampling, and exact moments.

use crate::error::{Error, Result};
use crate::numerics::{dist2, norm};
use crate::rng::SamplerRng;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};
use statrs::function::gamma::ln_gamma;
use std::path::Path;

const PROJECTION_TOL: f64 = 1e-10;
const PROJECTION_MAX_SWEEPS: usize = 10_000;

/// One halfspace `normal · x ≤ offset`.
#[derive(Debug, Clone)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

#[derive(Debug, Clone)]
pub enum BodyKind {
    /// Ball of radius `r` (r ≥ 1) around the center.
    Ball { radius: f64 },
    /// Axis-aligned box given by per-axis bounds; every halfwidth ≥ 1.
    AxisBox { lo: Vec<f64>, hi: Vec<f64> },
    /// `scale · {x ≥ 0, Σx ≤ 1}` with `scale = d + √d`, so the inscribed ball
    /// centered at (1,…,1) has radius exactly 1.
    Simplex { scale: f64 },
    /// Bounded intersection of halfspaces.
    HalfspacePolytope { rows: Vec<Halfspace> },
    /// Axis-aligned ellipsoid with semi-axes `a_i ≥ 1` (principal axes stored
    /// directly; no factorization in the hot path).
    Ellipsoid { semi_axes: Vec<f64> },
}

/// A convex body with the oracle contract `B_1(x0) ⊆ K ⊆ B_D(x0)`.
#[derive(Debug, Clone)]
pub struct ConvexBody {
    kind: BodyKind,
    dim: usize,
    center: Vec<f64>,
    circumradius: f64,
    exact_volume: Option<f64>,
    exact_cov_opnorm: Option<f64>,
}

fn ln_unit_ball_volume(d: usize) -> f64 {
    let d = d as f64;
    0.5 * d * std::f64::consts::PI.ln() - ln_gamma(0.5 * d + 1.0)
}

impl ConvexBody {
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be ≥ 1".into()));
        }
        if !(radius >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "ball radius {radius} < 1 violates the inscribed-unit-ball normalization"
            )));
        }
        Ok(Self {
            kind: BodyKind::Ball { radius },
            dim,
            center: vec![0.0; dim],
            circumradius: radius,
            exact_volume: Some((ln_unit_ball_volume(dim) + dim as f64 * radius.ln()).exp()),
            exact_cov_opnorm: Some(radius * radius / (dim as f64 + 2.0)),
        })
    }

    pub fn axis_box(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(Error::InvalidParameter("box bounds length mismatch".into()));
        }
        let mut volume = 1.0;
        let mut cov_op: f64 = 0.0;
        let mut rad2 = 0.0;
        for (&a, &b) in lo.iter().zip(&hi) {
            let half = 0.5 * (b - a);
            if !(half >= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "box halfwidth {half} < 1 violates the inscribed-unit-ball normalization"
                )));
            }
            volume *= b - a;
            cov_op = cov_op.max((b - a) * (b - a) / 12.0);
            rad2 += half * half;
        }
        let center: Vec<f64> = lo.iter().zip(&hi).map(|(&a, &b)| 0.5 * (a + b)).collect();
        Ok(Self {
            dim: lo.len(),
            kind: BodyKind::AxisBox { lo, hi },
            center,
            circumradius: rad2.sqrt(),
            exact_volume: Some(volume),
            exact_cov_opnorm: Some(cov_op),
        })
    }

    /// The symmetric cube `[a, b]^d`.
    pub fn cube(dim: usize, a: f64, b: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be ≥ 1".into()));
        }
        if !(a < b) {
            return Err(Error::InvalidParameter("box needs a < b".into()));
        }
        Self::axis_box(vec![a; dim], vec![b; dim])
    }

    pub fn simplex(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be ≥ 1".into()));
        }
        let d = dim as f64;
        let scale = d + d.sqrt();
        // Farthest vertex from the center (1,…,1) is scale·e_i.
        let circumradius = ((scale - 1.0) * (scale - 1.0) + (d - 1.0)).sqrt();
        // ln(scale^d / d!)
        let ln_vol = d * scale.ln() - ln_gamma(d + 1.0);
        // Dirichlet(1,…,1) covariance scaled by `scale²`: top eigenvalue 1/((d+1)(d+2)).
        let cov_op = scale * scale / ((d + 1.0) * (d + 2.0));
        Ok(Self {
            kind: BodyKind::Simplex { scale },
            dim,
            center: vec![1.0; dim],
            circumradius,
            exact_volume: Some(ln_vol.exp()),
            exact_cov_opnorm: Some(cov_op),
        })
    }

    /// Bounded halfspace polytope. The caller supplies the certified center and
    /// circumradius; the inscribed-unit-ball side is verified exactly.
    pub fn halfspace_polytope(
        rows: Vec<Halfspace>,
        center: Vec<f64>,
        circumradius: f64,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter(
                "polytope needs ≥ 1 halfspace".into(),
            ));
        }
        let dim = center.len();
        if !(circumradius >= 1.0) {
            return Err(Error::InvalidParameter("circumradius must be ≥ 1".into()));
        }
        for row in &rows {
            if row.normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.normal.len(),
                });
            }
            let nn = norm(&row.normal);
            if nn == 0.0 || !nn.is_finite() {
                return Err(Error::InvalidParameter(
                    "degenerate halfspace normal".into(),
                ));
            }
            let slack = row.offset - dot(&row.normal, &center);
            if slack / nn < 1.0 - 1e-12 {
                return Err(Error::InvalidParameter(format!(
                    "halfspace at distance {} < 1 from the center breaks the inscribed ball",
                    slack / nn
                )));
            }
        }
        Ok(Self {
            kind: BodyKind::HalfspacePolytope { rows },
            dim,
            center,
            circumradius,
            exact_volume: None,
            exact_cov_opnorm: None,
        })
    }

    pub fn ellipsoid(semi_axes: Vec<f64>) -> Result<Self> {
        if semi_axes.is_empty() {
            return Err(Error::InvalidParameter("dimension must be ≥ 1".into()));
        }
        let mut max_axis: f64 = 0.0;
        for &a in &semi_axes {
            if !(a >= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "semi-axis {a} < 1 violates the inscribed-unit-ball normalization"
                )));
            }
            max_axis = max_axis.max(a);
        }
        let dim = semi_axes.len();
        let ln_vol = ln_unit_ball_volume(dim) + semi_axes.iter().map(|a| a.ln()).sum::<f64>();
        let cov_op = max_axis * max_axis / (dim as f64 + 2.0);
        Ok(Self {
            dim,
            center: vec![0.0; dim],
            circumradius: max_axis,
            exact_volume: Some(ln_vol.exp()),
            exact_cov_opnorm: Some(cov_op),
            kind: BodyKind::Ellipsoid { semi_axes },
        })
    }

    pub fn kind(&self) -> &BodyKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The certified interior point x0.
    pub fn center(&self) -> &[f64] {
        &self.center
    }

    /// The certified D with K ⊆ B_D(x0).
    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    pub fn exact_volume(&self) -> Option<f64> {
        self.exact_volume
    }

    pub fn exact_cov_opnorm(&self) -> Option<f64> {
        self.exact_cov_opnorm
    }

    /// Membership oracle: answers x ∈ K exactly.
    pub fn contains(&self, x: &[f64]) -> bool {
        assert_eq!(x.len(), self.dim, "point dimension mismatch");
        match &self.kind {
            BodyKind::Ball { radius } => dist2(x, &self.center) <= radius * radius,
            BodyKind::AxisBox { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(&v, (&a, &b))| a <= v && v <= b),
            BodyKind::Simplex { scale } => {
                x.iter().all(|&v| v >= 0.0) && x.iter().sum::<f64>() <= *scale
            }
            BodyKind::HalfspacePolytope { rows } => {
                rows.iter().all(|row| dot(&row.normal, x) <= row.offset)
            }
            BodyKind::Ellipsoid { semi_axes } => {
                x.iter()
                    .zip(semi_axes)
                    .map(|(&v, &a)| (v / a) * (v / a))
                    .sum::<f64>()
                    <= 1.0
            }
        }
    }

    /// Euclidean distance d(x, K); zero iff x ∈ K.
    ///
    /// Only needed by the blowup diagnostics, never by the samplers, which see
    /// K exclusively through `contains`.
    pub fn distance(&self, x: &[f64]) -> Result<f64> {
        assert_eq!(x.len(), self.dim, "point dimension mismatch");
        match &self.kind {
            BodyKind::Ball { radius } => Ok((dist2(x, &self.center).sqrt() - radius).max(0.0)),
            BodyKind::AxisBox { lo, hi } => {
                let mut s = 0.0;
                for (&v, (&a, &b)) in x.iter().zip(lo.iter().zip(hi)) {
                    let excess = (a - v).max(v - b).max(0.0);
                    s += excess * excess;
                }
                Ok(s.sqrt())
            }
            BodyKind::Ellipsoid { semi_axes } => Ok(ellipsoid_distance(x, semi_axes)),
            BodyKind::HalfspacePolytope { rows } => dykstra_distance(x, rows),
            BodyKind::Simplex { .. } => Err(Error::Unsupported(
                "distance_to_body is not provided for the simplex kind".into(),
            )),
        }
    }

    /// Membership in the δ-blowup K_δ = {x : d(x, K) ≤ δ}.
    pub fn blowup_contains(&self, x: &[f64], delta: f64) -> Result<bool> {
        if delta < 0.0 {
            return Err(Error::InvalidParameter("blowup δ must be ≥ 0".into()));
        }
        Ok(self.distance(x)? <= delta)
    }

    /// Ground-truth sample from Unif(K) for kinds with an exact sampler.
    pub fn exact_uniform_sample(&self, rng: &mut SamplerRng) -> Result<Vec<f64>> {
        match &self.kind {
            BodyKind::Ball { radius } => Ok(sample_in_ball(&self.center, *radius, self.dim, rng)),
            BodyKind::AxisBox { lo, hi } => Ok(lo
                .iter()
                .zip(hi)
                .map(|(&a, &b)| rng.gen_range(a..b))
                .collect()),
            BodyKind::Simplex { scale } => {
                // Exponential spacings: (E_1,…,E_{d+1})/ΣE is Dirichlet(1,…,1);
                // the first d coordinates are uniform on the standard simplex.
                let mut e: Vec<f64> = (0..=self.dim).map(|_| rng.sample::<f64, _>(Exp1)).collect();
                let total: f64 = e.iter().sum();
                e.truncate(self.dim);
                Ok(e.into_iter().map(|v| scale * v / total).collect())
            }
            _ => Err(Error::Unsupported(format!(
                "no exact uniform sampler for {:?}",
                std::mem::discriminant(&self.kind)
            ))),
        }
    }

    pub fn has_exact_sampler(&self) -> bool {
        matches!(
            self.kind,
            BodyKind::Ball { .. } | BodyKind::AxisBox { .. } | BodyKind::Simplex { .. }
        )
    }

    /// CDF of the coordinate marginal of Unif(K) along `axis`, where closed
    /// forms exist (box and ball). Used by the stationarity tests.
    pub fn coordinate_marginal_cdf(&self, axis: usize) -> Option<Box<dyn Fn(f64) -> f64>> {
        use statrs::distribution::{Beta, ContinuousCDF};
        assert!(axis < self.dim);
        match &self.kind {
            BodyKind::AxisBox { lo, hi } => {
                let (a, b) = (lo[axis], hi[axis]);
                Some(Box::new(move |t: f64| ((t - a) / (b - a)).clamp(0.0, 1.0)))
            }
            BodyKind::Ball { radius } => {
                // x_axis/R is distributed as 2·Beta((d+1)/2, (d+1)/2) − 1.
                let d = self.dim as f64;
                let beta = Beta::new(0.5 * (d + 1.0), 0.5 * (d + 1.0)).unwrap();
                let (c, r) = (self.center[axis], *radius);
                Some(Box::new(move |t: f64| {
                    beta.cdf((((t - c) / r + 1.0) / 2.0).clamp(0.0, 1.0))
                }))
            }
            _ => None,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Uniform draw from the ball B_radius(center): Gaussian direction, radial
/// scaling by U^{1/d}.
pub fn sample_in_ball(center: &[f64], radius: f64, dim: usize, rng: &mut SamplerRng) -> Vec<f64> {
    loop {
        let z: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = norm(&z);
        if n > 0.0 {
            let r = radius * rng.gen::<f64>().powf(1.0 / dim as f64);
            return center
                .iter()
                .zip(&z)
                .map(|(&c, &zi)| c + r * zi / n)
                .collect();
        }
    }
}

/// Distance to an axis-aligned ellipsoid via the secular equation for the
/// projection: z_i = a_i² x_i / (a_i² + λ), with λ ≥ 0 the root of
/// Σ (a_i z_i / (a_i² + λ))² … bisected to machine tolerance.
fn ellipsoid_distance(x: &[f64], semi_axes: &[f64]) -> f64 {
    let inside: f64 = x
        .iter()
        .zip(semi_axes)
        .map(|(&v, &a)| (v / a) * (v / a))
        .sum();
    if inside <= 1.0 {
        return 0.0;
    }
    let f = |lambda: f64| -> f64 {
        x.iter()
            .zip(semi_axes)
            .map(|(&v, &a)| {
                let t = a * v / (a * a + lambda);
                t * t
            })
            .sum::<f64>()
            - 1.0
    };
    // f is decreasing with f(0) > 0; double until negative, then bisect.
    let mut hi = 1.0;
    while f(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e300 {
            break;
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    let proj: Vec<f64> = x
        .iter()
        .zip(semi_axes)
        .map(|(&v, &a)| a * a * v / (a * a + lambda))
        .collect();
    dist2(x, &proj).sqrt()
}

/// Exact projection distance onto an intersection of halfspaces via Dykstra's
/// alternating projections (plain alternation finds a feasible point but not
/// the projection). Tolerance 1e-10, at most 1e4 sweeps.
fn dykstra_distance(x: &[f64], rows: &[Halfspace]) -> Result<f64> {
    let d = x.len();
    let mut z = x.to_vec();
    let mut corrections = vec![vec![0.0; d]; rows.len()];
    let scale = norm(x).max(1.0);
    for _ in 0..PROJECTION_MAX_SWEEPS {
        let mut sweep_move: f64 = 0.0;
        for (row, corr) in rows.iter().zip(corrections.iter_mut()) {
            let mut w: Vec<f64> = z.iter().zip(corr.iter()).map(|(a, b)| a + b).collect();
            let nn2 = dot(&row.normal, &row.normal);
            let violation = (dot(&row.normal, &w) - row.offset).max(0.0) / nn2;
            for (wi, &ni) in w.iter_mut().zip(&row.normal) {
                *wi -= violation * ni;
            }
            for ((ci, &wi), &zi_old) in corr.iter_mut().zip(&w).zip(&z) {
                let new_corr = zi_old + *ci - wi;
                *ci = new_corr;
            }
            sweep_move = sweep_move.max(
                z.iter()
                    .zip(&w)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max),
            );
            z = w;
        }
        let feasible = rows
            .iter()
            .all(|row| dot(&row.normal, &z) <= row.offset + PROJECTION_TOL * scale);
        if sweep_move < PROJECTION_TOL * scale && feasible {
            return Ok(dist2(x, &z).sqrt());
        }
    }
    Err(Error::Tolerance(
        "polytope projection did not converge within the sweep budget".into(),
    ))
}

/// Parse a body description like `ball(3,2.0)`, `box(5,-1,1)`, `simplex(2)`,
/// `ellipsoid(3, 1.5 2 2.5)` or `polytope(path/to/file)`.
pub fn parse_body_spec(spec: &str) -> Result<ConvexBody> {
    let spec = spec.trim();
    let open = spec
        .find('(')
        .ok_or_else(|| Error::Config(format!("malformed body spec `{spec}`")))?;
    if !spec.ends_with(')') {
        return Err(Error::Config(format!("malformed body spec `{spec}`")));
    }
    let name = &spec[..open];
    let args: Vec<&str> = spec[open + 1..spec.len() - 1]
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let parse_usize = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::Config(format!("bad integer `{s}` in body spec")))
    };
    let parse_f64 = |s: &str| -> Result<f64> {
        s.parse()
            .map_err(|_| Error::Config(format!("bad number `{s}` in body spec")))
    };
    match name {
        "ball" => {
            if args.len() != 2 {
                return Err(Error::Config("ball(d,R) takes two arguments".into()));
            }
            ConvexBody::ball(parse_usize(args[0])?, parse_f64(args[1])?)
        }
        "box" => {
            if args.len() != 3 {
                return Err(Error::Config("box(d,a,b) takes three arguments".into()));
            }
            ConvexBody::cube(
                parse_usize(args[0])?,
                parse_f64(args[1])?,
                parse_f64(args[2])?,
            )
        }
        "simplex" => {
            if args.len() != 1 {
                return Err(Error::Config("simplex(d) takes one argument".into()));
            }
            ConvexBody::simplex(parse_usize(args[0])?)
        }
        "ellipsoid" => {
            if args.len() < 2 {
                return Err(Error::Config(
                    "ellipsoid(d, a1 a2 … ad) takes the dimension then the semi-axes".into(),
                ));
            }
            let d = parse_usize(args[0])?;
            let axes: Vec<f64> = args[1]
                .split_whitespace()
                .map(parse_f64)
                .collect::<Result<_>>()?;
            if axes.len() != d {
                return Err(Error::Config(format!(
                    "ellipsoid expected {d} semi-axes, found {}",
                    axes.len()
                )));
            }
            ConvexBody::ellipsoid(axes)
        }
        "polytope" => {
            if args.len() != 1 {
                return Err(Error::Config(
                    "polytope(file) takes the row file path".into(),
                ));
            }
            load_polytope_file(Path::new(args[0]))
        }
        other => Err(Error::Config(format!("unknown body kind `{other}`"))),
    }
}

/// Load a polytope from a text file of rows `n₁ … n_d b` meaning `n·x ≤ b`.
/// Metadata lines `D <value>` and `x0 v₁ … v_d` certify the oracle constants;
/// `D` is required, `x0` defaults to the origin. `#` starts a comment.
pub fn load_polytope_file(path: &Path) -> Result<ConvexBody> {
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    let mut circumradius = None;
    let mut center: Option<Vec<f64>> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| Error::Config(format!("{}:{}: {msg}", path.display(), lineno + 1));
        if fields[0] == "D" {
            circumradius = Some(
                fields
                    .get(1)
                    .ok_or_else(|| bad("missing value after D"))?
                    .parse()
                    .map_err(|_| bad("bad circumradius"))?,
            );
            continue;
        }
        if fields[0] == "x0" {
            center = Some(
                fields[1..]
                    .iter()
                    .map(|s| s.parse().map_err(|_| bad("bad center coordinate")))
                    .collect::<Result<_>>()?,
            );
            continue;
        }
        let nums: Vec<f64> = fields
            .iter()
            .map(|s| s.parse().map_err(|_| bad("bad row entry")))
            .collect::<Result<_>>()?;
        if nums.len() < 2 {
            return Err(bad(
                "row needs at least one normal component and the offset",
            ));
        }
        rows.push(Halfspace {
            normal: nums[..nums.len() - 1].to_vec(),
            offset: nums[nums.len() - 1],
        });
    }
    let circumradius = circumradius.ok_or_else(|| {
        Error::Config(format!(
            "{}: polytope file must certify the circumradius with a `D <value>` line",
            path.display()
        ))
    })?;
    let dim = rows
        .first()
        .map(|r| r.normal.len())
        .ok_or_else(|| Error::Config(format!("{}: no rows", path.display())))?;
    let center = center.unwrap_or_else(|| vec![0.0; dim]);
    ConvexBody::halfspace_polytope(rows, center, circumradius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::chain_rng;

    fn square_polytope() -> ConvexBody {
        // {x₁ ≤ 1, −x₁ ≤ 1, x₂ ≤ 1, −x₂ ≤ 1} = [−1,1]²
        let rows = vec![
            Halfspace {
                normal: vec![1.0, 0.0],
                offset: 1.0,
            },
            Halfspace {
                normal: vec![-1.0, 0.0],
                offset: 1.0,
            },
            Halfspace {
                normal: vec![0.0, 1.0],
                offset: 1.0,
            },
            Halfspace {
                normal: vec![0.0, -1.0],
                offset: 1.0,
            },
        ];
        ConvexBody::halfspace_polytope(rows, vec![0.0, 0.0], 2.0f64.sqrt()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let ball = ConvexBody::ball(3, 1.0).unwrap();
        assert!(ball.contains(&[0.0, 0.0, 0.0]));

        let cube = ConvexBody::cube(3, -1.0, 1.0).unwrap();
        assert!(!cube.contains(&[1.0001, 0.0, 0.0]));

        // Checked by hand: all four inequalities hold at (0.5, −0.5).
        assert!(square_polytope().contains(&[0.5, -0.5]));
    }

    #[test]
    fn distance_examples() {
        let ball = ConvexBody::ball(2, 1.0).unwrap();
        assert!((ball.distance(&[2.0, 0.0]).unwrap() - 1.0).abs() < 1e-12);

        // Nearest point of [−1,1]² to (2,2) is (1,1).
        let cube = ConvexBody::cube(2, -1.0, 1.0).unwrap();
        assert!((cube.distance(&[2.0, 2.0]).unwrap() - 2.0f64.sqrt()).abs() < 1e-12);
        assert_eq!(cube.distance(&[0.3, -0.9]).unwrap(), 0.0);

        let simplex = ConvexBody::simplex(2).unwrap();
        assert!(matches!(
            simplex.distance(&[5.0, 5.0]),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn blowup_examples() {
        let ball = ConvexBody::ball(2, 1.0).unwrap();
        assert!(ball.blowup_contains(&[1.5, 0.0], 0.5).unwrap());
        assert!(!ball.blowup_contains(&[1.5, 0.0], 0.4).unwrap());

        // d((1.1, 1.1), [−1,1]²) = √0.02 ≈ 0.1414 ≤ 0.2
        let cube = ConvexBody::cube(2, -1.0, 1.0).unwrap();
        assert!(cube.blowup_contains(&[1.1, 1.1], 0.2).unwrap());
    }

    #[test]
    fn polytope_distance_matches_box_formula() {
        let poly = square_polytope();
        let cube = ConvexBody::cube(2, -1.0, 1.0).unwrap();
        let pts = [
            [2.0, 2.0],
            [1.5, 0.2],
            [-3.0, 0.9],
            [0.1, -0.2],
            [-1.4, -1.7],
        ];
        for p in pts {
            let a = poly.distance(&p).unwrap();
            let b = cube.distance(&p).unwrap();
            assert!((a - b).abs() < 1e-8, "{p:?}: {a} vs {b}");
        }
    }

    #[test]
    fn ellipsoid_distance_sphere_case_and_membership_consistency() {
        let sphere = ConvexBody::ellipsoid(vec![2.0, 2.0, 2.0]).unwrap();
        assert!((sphere.distance(&[4.0, 0.0, 0.0]).unwrap() - 2.0).abs() < 1e-10);

        let ell = ConvexBody::ellipsoid(vec![1.0, 3.0]).unwrap();
        // Distance to the boundary point (0, 3) from (0, 5).
        assert!((ell.distance(&[0.0, 5.0]).unwrap() - 2.0).abs() < 1e-10);
        // Brute-force check against a dense boundary sweep.
        let x = [1.7, 1.3];
        let exact = ell.distance(&x).unwrap();
        let brute = (0..200_000)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * i as f64 / 200_000.0;
                let p = [th.cos(), 3.0 * th.sin()];
                dist2(&x, &p).sqrt()
            })
            .fold(f64::INFINITY, f64::min);
        assert!((exact - brute).abs() < 1e-4);
    }

    #[test]
    fn membership_distance_consistency_random_points() {
        let bodies = [
            ConvexBody::ball(4, 1.5).unwrap(),
            ConvexBody::cube(3, -1.0, 2.0).unwrap(),
            ConvexBody::ellipsoid(vec![1.0, 2.0, 4.0]).unwrap(),
            square_polytope(),
        ];
        let mut rng = chain_rng(11, 0);
        for body in &bodies {
            for _ in 0..10_000 {
                let x: Vec<f64> = (0..body.dim()).map(|_| rng.gen_range(-5.0..5.0)).collect();
                let dist = body.distance(&x).unwrap();
                assert_eq!(body.contains(&x), dist <= 1e-12, "{x:?} dist={dist}");
            }
        }
    }

    #[test]
    fn convexity_spot_check() {
        let bodies = [
            ConvexBody::ball(3, 2.0).unwrap(),
            ConvexBody::cube(3, -1.0, 1.0).unwrap(),
            ConvexBody::simplex(3).unwrap(),
        ];
        let mut rng = chain_rng(12, 0);
        for body in &bodies {
            for _ in 0..2_000 {
                let x = body.exact_uniform_sample(&mut rng).unwrap();
                let y = body.exact_uniform_sample(&mut rng).unwrap();
                let t: f64 = rng.gen();
                let mid: Vec<f64> = x
                    .iter()
                    .zip(&y)
                    .map(|(&a, &b)| t * a + (1.0 - t) * b)
                    .collect();
                assert!(body.contains(&mid));
            }
        }
    }

    #[test]
    fn oracle_normalization_direction_sweep() {
        let bodies = [
            ConvexBody::ball(3, 2.0).unwrap(),
            ConvexBody::cube(4, -1.5, 1.5).unwrap(),
            ConvexBody::simplex(3).unwrap(),
            ConvexBody::ellipsoid(vec![1.0, 2.5]).unwrap(),
            square_polytope(),
        ];
        let mut rng = chain_rng(13, 0);
        for body in &bodies {
            assert!(body.circumradius() >= 1.0);
            for _ in 0..500 {
                let mut u: Vec<f64> = (0..body.dim())
                    .map(|_| rng.sample::<f64, _>(StandardNormal))
                    .collect();
                let n = norm(&u);
                u.iter_mut().for_each(|v| *v /= n);
                let inner: Vec<f64> = body
                    .center()
                    .iter()
                    .zip(&u)
                    .map(|(&c, &ui)| c + 0.999 * ui)
                    .collect();
                assert!(body.contains(&inner), "inscribed ball violated");
                let outer: Vec<f64> = body
                    .center()
                    .iter()
                    .zip(&u)
                    .map(|(&c, &ui)| c + 1.001 * body.circumradius() * ui)
                    .collect();
                assert!(!body.contains(&outer), "circumradius violated");
            }
        }
    }

    #[test]
    fn circumradius_holds_for_exact_samples() {
        let bodies = [
            ConvexBody::ball(5, 3.0).unwrap(),
            ConvexBody::cube(5, -1.0, 1.0).unwrap(),
            ConvexBody::simplex(4).unwrap(),
        ];
        let mut rng = chain_rng(14, 0);
        for body in &bodies {
            for _ in 0..100_000 {
                let x = body.exact_uniform_sample(&mut rng).unwrap();
                assert!(dist2(&x, body.center()).sqrt() <= body.circumradius() + 1e-12);
            }
        }
    }

    #[test]
    fn exact_sampler_laws() {
        let mut rng = chain_rng(15, 0);

        // Ball d=2: P(|x| ≤ 1/2) = 1/4 by area ratio.
        let ball = ConvexBody::ball(2, 1.0).unwrap();
        let n = 100_000;
        let hits = (0..n)
            .filter(|_| {
                let x = ball.exact_uniform_sample(&mut rng).unwrap();
                norm(&x) <= 0.5
            })
            .count();
        let p = hits as f64 / n as f64;
        assert!((p - 0.25).abs() < 0.006, "p={p}");

        // Simplex d=2: E[x₁/scale] = 1/3 (Dirichlet(1,1,1) mean on the standard simplex).
        let simplex = ConvexBody::simplex(2).unwrap();
        let scale = match simplex.kind() {
            BodyKind::Simplex { scale } => *scale,
            _ => unreachable!(),
        };
        let mean: f64 = (0..n)
            .map(|_| simplex.exact_uniform_sample(&mut rng).unwrap()[0] / scale)
            .sum::<f64>()
            / n as f64;
        assert!((mean - 1.0 / 3.0).abs() < 0.003, "mean={mean}");
    }

    #[test]
    fn box_marginals_are_uniform() {
        use crate::stats::{ks_pvalue, ks_statistic};
        let cube = ConvexBody::cube(4, -1.0, 1.0).unwrap();
        let mut rng = chain_rng(16, 0);
        let samples: Vec<Vec<f64>> = (0..4000)
            .map(|_| cube.exact_uniform_sample(&mut rng).unwrap())
            .collect();
        for axis in 0..4 {
            let cdf = cube.coordinate_marginal_cdf(axis).unwrap();
            let mut xs: Vec<f64> = samples.iter().map(|s| s[axis]).collect();
            let d = ks_statistic(&mut xs, cdf);
            assert!(ks_pvalue(d, xs.len()) > 0.01);
        }
    }

    #[test]
    fn constructors_reject_denormalized_bodies() {
        assert!(ConvexBody::ball(3, 0.5).is_err());
        assert!(ConvexBody::cube(2, -0.5, 0.5).is_err());
        assert!(ConvexBody::ellipsoid(vec![0.9, 3.0]).is_err());
        let rows = vec![Halfspace {
            normal: vec![1.0, 0.0],
            offset: 0.5,
        }];
        assert!(ConvexBody::halfspace_polytope(rows, vec![0.0, 0.0], 2.0).is_err());
    }

    #[test]
    fn polytope_boundedness_direction_sweep() {
        // Every direction must be blocked by some constraint for the zoo polytope.
        let poly = square_polytope();
        let rows = match poly.kind() {
            BodyKind::HalfspacePolytope { rows } => rows,
            _ => unreachable!(),
        };
        let mut rng = chain_rng(17, 0);
        for _ in 0..1_000 {
            let u: Vec<f64> = (0..2)
                .map(|_| rng.sample::<f64, _>(StandardNormal))
                .collect();
            assert!(rows.iter().any(|r| dot(&r.normal, &u) > 1e-12));
        }
    }

    #[test]
    fn body_spec_parsing() {
        assert!(parse_body_spec("ball(3, 2.0)").is_ok());
        assert!(parse_body_spec("box(5,-1,1)").is_ok());
        assert!(parse_body_spec("simplex(2)").is_ok());
        assert!(parse_body_spec("ellipsoid(2, 1.5 2.5)").is_ok());
        assert!(parse_body_spec("torus(2)").is_err());
        assert!(parse_body_spec("ball(3)").is_err());
    }
}
