//! The convex-body zoo: membership, exact distance, blowup membership, exact
//! sampling, and loading a polytope from a row file.
//!
//!     cargo run --release --example body_zoo

use inout::geometry::{load_polytope_file, parse_body_spec, ConvexBody};
use inout::rng::derived_rng;

fn main() {
    let bodies = [
        ("ball(3, 2.0)", parse_body_spec("ball(3,2.0)").unwrap()),
        ("box(3, -1, 1)", parse_body_spec("box(3,-1,1)").unwrap()),
        ("simplex(3)", parse_body_spec("simplex(3)").unwrap()),
        (
            "ellipsoid(3, 1 2 4)",
            parse_body_spec("ellipsoid(3, 1 2 4)").unwrap(),
        ),
    ];
    println!(
        "{:<22} {:>4} {:>8} {:>12} {:>12}",
        "body", "dim", "D", "volume", "cov opnorm"
    );
    for (name, body) in &bodies {
        println!(
            "{:<22} {:>4} {:>8.3} {:>12.4} {:>12.4}",
            name,
            body.dim(),
            body.circumradius(),
            body.exact_volume().unwrap_or(f64::NAN),
            body.exact_cov_opnorm().unwrap_or(f64::NAN),
        );
    }

    let ball = &bodies[0].1;
    println!("\nball(3, 2.0) queries:");
    for x in [[0.0, 0.0, 0.0], [1.9, 0.0, 0.0], [3.0, 0.0, 0.0]] {
        println!(
            "  x = {x:?}: inside = {}, distance = {:.3}, in K_0.5 blowup = {}",
            ball.contains(&x),
            ball.distance(&x).unwrap(),
            ball.blowup_contains(&x, 0.5).unwrap()
        );
    }

    let mut rng = derived_rng(3, 0);
    let sample = ball.exact_uniform_sample(&mut rng).unwrap();
    println!("  exact uniform sample: {sample:?}");

    // Polytope rows: `n₁ … n_d b` meaning n·x ≤ b, plus the certified D.
    let dir = std::env::temp_dir().join("inout_body_zoo");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("diamond.poly");
    std::fs::write(
        &path,
        "# octahedron-ish diamond scaled to hold the unit ball\nD 3\n1 1 0 2\n1 -1 0 2\n-1 1 0 2\n-1 -1 0 2\n0 0 1 2\n0 0 -1 2\n",
    )
    .unwrap();
    let poly = load_polytope_file(&path).unwrap();
    println!("\npolytope from {}:", path.display());
    for x in [[0.0, 0.0, 0.0], [1.3, 0.8, 0.0], [0.0, 0.0, 2.5]] {
        println!(
            "  x = {x:?}: inside = {}, distance = {:.4}",
            poly.contains(&x),
            poly.distance(&x).unwrap()
        );
    }

    // Constructors enforce the inscribed-unit-ball normalization.
    match ConvexBody::ball(3, 0.5) {
        Err(e) => println!("\nball(3, 0.5) is rejected as expected: {e}"),
        Ok(_) => unreachable!(),
    }
}
