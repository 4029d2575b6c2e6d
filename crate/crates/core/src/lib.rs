//! Normalized Atiyah–Sutcliffe determinants of point configurations in
//! hyperbolic 3-space, exact positivity certificates, the star-determinant
//! expansion, and numerical experiments.

pub mod algebra;
pub mod asdet;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod poly;
pub mod star;
pub mod symbolic;
pub mod tolerance;

pub use asdet::{normalized_det, ExtendedComplex, Variant};
pub use error::{Error, Result};
pub use geometry::{BallPoint, Configuration};
pub use tolerance::{Caps, Tolerances};
