//! Sampling, convexity, Monte Carlo sweeps and a local minimizer.

pub mod convex;
pub mod minimize;
pub mod ordering;
pub mod sampling;
pub mod sweep;

pub use convex::{classify_convexity, is_convex, ConvexityClass};
pub use minimize::{minimize_abs_d, MinimizeOptions};
pub use ordering::{convex_pattern, ordered_real_directions, ordering_pattern};
pub use sampling::{sample_config, Shape};
pub use sweep::{sweep, SweepOptions, SweepResult};
