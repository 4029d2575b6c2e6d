//! Monte Carlo sweeps of |D| over random configurations of several shapes.
//!
//! ```bash
//! cargo run --release -p ashyp --example conjecture_sweep
//! ```

use ashyp::experiments::{sweep, Shape, SweepOptions};
use ashyp::{Tolerances, Variant};

fn main() -> ashyp::Result<()> {
    let tol = Tolerances::default();
    let runs = [
        (4, Shape::ConvexCoplanar, Variant::Observer),
        (4, Shape::NonconvexCoplanar, Variant::Observer),
        (5, Shape::Generic, Variant::Observer),
        (5, Shape::ConvexCoplanar, Variant::Star),
        (6, Shape::Collinear, Variant::Star),
    ];
    for (n, shape, variant) in runs {
        let r = sweep(&SweepOptions::new(n, shape, variant, 2000, 2024), &tol)?;
        println!(
            "n={n} {shape:<18} {variant:<8} min|D|={:.9} minRe={:.9} violations={} sign={} skipped={}",
            r.min_abs_d, r.min_real, r.violations, r.sign_violations, r.skipped
        );
    }
    Ok(())
}
