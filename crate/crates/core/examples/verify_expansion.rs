//! The star determinant as an average over the column-permutation group.
//!
//! ```bash
//! cargo run --release -p ashyp --example verify_expansion
//! ```

use ashyp::star::{c_n, group_order, verify_expansion};
use ashyp::Caps;

fn main() -> ashyp::Result<()> {
    let caps = Caps::default();
    for n in 2..=5 {
        println!("n = {n}: |P| = {}, c_n = {}", group_order(n), c_n(n));
        let r = verify_expansion(n, &caps, 1)?;
        println!(
            "  {} over {} points: {} ({} ms)",
            r.method,
            r.points_tested,
            if r.pass { "identity holds" } else { "MISMATCH" },
            r.elapsed_ms
        );
    }
    match verify_expansion(7, &caps, 1) {
        Err(e) => println!("n = 7: {e}"),
        Ok(_) => unreachable!("above the default cap"),
    }
    Ok(())
}
