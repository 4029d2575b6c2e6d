//! Convexity classes and the circular order of directions.

use ashyp::experiments::convex::classify_convexity;
use ashyp::experiments::ordering::{convex_pattern, ordered_real_directions, ordering_pattern};
use ashyp::geometry::embed_h2;
use ashyp::symbolic::OrderingId;
use ashyp::Tolerances;

fn main() -> ashyp::Result<()> {
    let tol = Tolerances::default();
    let cases: [(&str, [[f64; 2]; 4]); 3] = [
        ("kite", [[0.5, 0.0], [0.0, 0.4], [-0.5, 0.0], [0.0, -0.4]]),
        ("inner point", [[0.05, 0.0], [0.6, 0.0], [-0.3, 0.5], [-0.3, -0.5]]),
        ("three on a diameter", [[-0.5, 0.0], [0.0, 0.0], [0.5, 0.0], [0.0, 0.6]]),
    ];
    for (name, pts) in cases {
        let cfg = embed_h2(&pts, &tol)?;
        let class = classify_convexity(&cfg, &tol)?;
        let convex = ordered_real_directions(&cfg, &convex_pattern(4), &tol)?;
        let inner = ordered_real_directions(&cfg, &ordering_pattern(OrderingId::Zhangma), &tol)?;
        println!("{name:<20} {class:?}");
        if let Some(o) = convex {
            println!("  convex order after relabeling {:?} (reversed: {})", o.relabeling.perm, o.relabeling.reversed);
        }
        if let Some(o) = inner {
            println!("  inner-point order after relabeling {:?} (reversed: {})", o.relabeling.perm, o.relabeling.reversed);
        }
    }
    Ok(())
}
