//! Nelder–Mead search for configurations with small |D|.
//!
//! ```bash
//! cargo run --release -p ashyp --example minimize_counterexample
//! ```

use ashyp::experiments::{minimize_abs_d, MinimizeOptions, Shape};
use ashyp::{Tolerances, Variant};

fn main() -> ashyp::Result<()> {
    let tol = Tolerances::default();
    for (n, shape) in [(3, Shape::Generic), (4, Shape::ConvexCoplanar), (4, Shape::Generic)] {
        let r = minimize_abs_d(&MinimizeOptions::new(n, shape, Variant::Observer, 4, 5), &tol)?;
        println!(
            "n={n} {shape:<16} best |D| = {:.12} ({} evaluations, violations {})",
            r.min_abs_d, r.evaluations, r.violations
        );
        if let Some(cfg) = &r.argmin {
            println!("  {}", serde_json::to_string(cfg).expect("serializable"));
        }
    }
    Ok(())
}
