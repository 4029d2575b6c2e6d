//! Normalized determinants of a few hand-made configurations.
//!
//! ```bash
//! cargo run -p ashyp --example compute_determinant
//! ```

use ashyp::asdet::{normalized_det, Variant};
use ashyp::geometry::{apply_isometry, direction_matrix, embed_h2, random_isometry, BallPoint};
use ashyp::{Configuration, Tolerances};

fn report(name: &str, cfg: &Configuration, tol: &Tolerances) -> ashyp::Result<()> {
    let dm = direction_matrix(cfg, tol)?;
    let d = normalized_det(&dm, Variant::Observer, tol)?;
    let ds = normalized_det(&dm, Variant::Star, tol)?;
    println!("{name:<28} D = {:>10.6} {:+.1e}i   D^s = {:>10.6} {:+.1e}i", d.re, d.im, ds.re, ds.im);
    Ok(())
}

fn main() -> ashyp::Result<()> {
    let tol = Tolerances::default();

    // points on a diameter
    let line = embed_h2(&[[-0.6, 0.0], [-0.1, 0.0], [0.3, 0.0], [0.7, 0.0]], &tol)?;
    report("collinear", &line, &tol)?;

    let square = embed_h2(&[[0.4, 0.4], [-0.4, 0.4], [-0.4, -0.4], [0.4, -0.4]], &tol)?;
    report("square", &square, &tol)?;

    let inner = embed_h2(&[[0.0, 0.0], [0.6, 0.0], [-0.3, 0.5], [-0.3, -0.5]], &tol)?;
    report("point inside a triangle", &inner, &tol)?;

    let tetra = Configuration::new(
        vec![
            BallPoint::new(0.5, 0.5, 0.5)?,
            BallPoint::new(0.5, -0.5, -0.5)?,
            BallPoint::new(-0.5, 0.5, -0.5)?,
            BallPoint::new(-0.5, -0.5, 0.5)?,
        ],
        &tol,
    )?;
    report("regular tetrahedron", &tetra, &tol)?;
    report("  moved by an isometry", &apply_isometry(&random_isometry(7), &tetra), &tol)?;
    Ok(())
}
