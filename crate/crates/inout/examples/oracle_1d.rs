//! The 1-d exact-kernel oracle at a glance: stationarity of the uniform law,
//! χ² contraction against the Poincaré rate, the de Bruijn identity, and the
//! capped-kernel conditioning bias.
//!
//!     cargo run --release --example oracle_1d

use inout::oracle1d::{
    contraction_measured, debruijn_check, interval_cpi, sup_ratio, Div, Grid1D, InOutKernel1d,
};

fn main() {
    let h = 0.05;
    let grid = Grid1D::around_interval(-1.0, 1.0, 4096, h).unwrap();
    let kernel = InOutKernel1d::new(&grid, -1.0, 1.0, h, None).unwrap();
    let uniform = kernel.uniform_target();

    let gap = kernel.apply(&uniform).unwrap().grid.l1(&uniform);
    println!("stationarity: ‖K(unif) − unif‖₁ = {gap:.2e}");

    let c_pi = interval_cpi(-1.0, 1.0, 4096);
    println!(
        "interval Poincaré constant: {c_pi:.6} (brute force) vs 4/π² = {:.6}",
        4.0 / (std::f64::consts::PI * std::f64::consts::PI)
    );

    let start = uniform
        .map_density(|x| {
            if (-1.0..=1.0).contains(&x) {
                1.0 + 0.5 * x
            } else {
                0.0
            }
        })
        .unwrap();
    let series = contraction_measured(&kernel, &start, 12, Div::ChiQ(2.0)).unwrap();
    let bound = 1.0 / (1.0 + h / c_pi);
    println!("\nχ² contraction from a tilted start (per-step bound {bound:.4}):");
    for (k, w) in series.windows(2).enumerate() {
        println!(
            "  step {:2}: χ² = {:.4e}, ratio = {:.4}",
            k + 1,
            w[1],
            w[1] / w[0]
        );
    }

    println!("\nde Bruijn identity on the Gaussian pair N(0.3, 0.5) vs N(0, 0.5):");
    let mu = Grid1D::gaussian(-7.0, 7.0, 4096, 0.3, 0.5).unwrap();
    let nu = Grid1D::gaussian(-7.0, 7.0, 4096, 0.0, 0.5).unwrap();
    for q in [2.0, 3.0] {
        let c = debruijn_check(&mu, &nu, 0.1, 1e-4, q).unwrap();
        println!(
            "  q = {q}: ∂_t χ^q = {:.6e} (finite diff) vs {:.6e} (Fisher form), rel err {:.1e}",
            c.lhs, c.rhs, c.rel_err
        );
    }

    println!("\ncapped-kernel bias from a boundary point mass (h = 0.04):");
    let bias_grid = Grid1D::around_interval(-1.0, 1.0, 1024, 0.04).unwrap();
    let point = bias_grid
        .point_mass_at(-1.0 + 0.5 * bias_grid.dx())
        .unwrap();
    let uncapped = InOutKernel1d::new(&bias_grid, -1.0, 1.0, 0.04, None).unwrap();
    let base = uncapped.apply(&point).unwrap();
    for cap in [1u64, 3, 9, 30] {
        let capped = InOutKernel1d::new(&bias_grid, -1.0, 1.0, 0.04, Some(cap)).unwrap();
        let step = capped.apply(&point).unwrap();
        println!(
            "  N = {cap:2}: failure mass {:.4}, sup ratio vs uncapped {:.6} ≤ 1/(1−fail) = {:.6}",
            step.failure_mass,
            sup_ratio(&step.grid, &base.grid),
            1.0 / (1.0 - step.failure_mass)
        );
    }
}
