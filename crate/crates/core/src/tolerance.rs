use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by the floating-point layers.
///
/// Every field can be overridden from the command line or a JSON config
/// file; unknown keys in the file are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Minimum Euclidean separation between two configuration points.
    pub eps_sep: f64,
    /// Minimum distance of a point from the unit sphere.
    pub eps_boundary: f64,
    /// Allowed deviation of a sphere direction from unit norm.
    pub eps_unit: f64,
    /// Modulus below which a denominator bracket counts as zero.
    pub eps_den: f64,
    /// Klein-model distance below which a point is "on" a hull edge.
    pub eps_hull: f64,
    /// Allowed |y| for a point to count as lying in the y = 0 plane.
    pub eps_plane: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_sep: 1e-9,
            eps_boundary: 1e-12,
            eps_unit: 1e-9,
            eps_den: 1e-13,
            eps_hull: 1e-9,
            eps_plane: 1e-12,
        }
    }
}

/// Largest n for which group sums are carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    pub symbolic_n: usize,
    pub numeric_n: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            symbolic_n: 4,
            numeric_n: 5,
        }
    }
}
