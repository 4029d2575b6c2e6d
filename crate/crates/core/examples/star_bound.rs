//! Star determinant lower bound on random convex configurations, with the
//! exact sign check of every group summand.

use ashyp::experiments::{sample_config, Shape};
use ashyp::star::theorem2_check;
use ashyp::{Caps, Tolerances};

fn main() -> ashyp::Result<()> {
    let tol = Tolerances::default();
    let caps = Caps::default();
    for n in [4, 5] {
        for seed in 0..4 {
            let cfg = sample_config(n, Shape::ConvexCoplanar, seed, &tol)?;
            let r = theorem2_check(&cfg, &tol, &caps)?;
            println!(
                "n={n} seed={seed} D^s={:.6} bound={} ordered={} summands={:?} pass={} ({} ms)",
                r.d_star, r.bound, r.convex_order, r.summands, r.pass, r.elapsed_ms
            );
        }
    }
    Ok(())
}
