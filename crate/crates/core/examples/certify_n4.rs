//! Reproduce the four-point positivity certificates in exact arithmetic.
//!
//! ```bash
//! cargo run --release -p ashyp --example certify_n4
//! ```

use ashyp::symbolic::{build_certificates, OrderingId};

fn main() {
    for ordering in [OrderingId::Thm1, OrderingId::Zhangma] {
        let start = std::time::Instant::now();
        let certs = build_certificates(ordering, false);
        println!("ordering {ordering} ({:.2?})", start.elapsed());
        println!("  directions: {}", certs[0].direction_order.join(" < "));
        for c in &certs {
            println!(
                "  {:<6} y0-free={:<5} monomials={:<5} (+{} / -{}) sign={:?} -> {:?}",
                c.polynomial.to_string(),
                c.y0_free,
                c.n_monomials,
                c.n_pos,
                c.n_neg,
                c.uniform_sign,
                c.verdict
            );
        }
    }
}
