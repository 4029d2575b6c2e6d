//! Seeded configuration sampling.
//!
//! Points are uniform in hyperbolic area (or volume) within a hyperbolic
//! radius `R` of the origin. Shape contracts are checked after sampling and
//! failing draws are resampled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::convex::{classify_convexity, ConvexityClass};
use crate::error::{Error, Result};
use crate::geometry::{apply_isometry, embed_h2, mobius_translate, BallPoint, Configuration, Isometry};
use crate::tolerance::Tolerances;

/// Default sampling radius (hyperbolic).
pub const DEFAULT_RADIUS: f64 = 2.0;

/// Maximum number of rejected draws per sample.
pub const MAX_REJECTIONS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// Points anywhere in the ball.
    #[value(name = "generic")]
    Generic,
    /// Points in the y = 0 plane.
    #[value(name = "coplanar")]
    Coplanar,
    #[value(name = "convex_coplanar")]
    ConvexCoplanar,
    /// Coplanar with a point strictly inside the hull of the others.
    #[value(name = "nonconvex_coplanar")]
    NonconvexCoplanar,
    /// All points on one geodesic.
    #[value(name = "collinear")]
    Collinear,
}

impl Shape {
    pub fn is_coplanar(&self) -> bool {
        !matches!(self, Shape::Generic | Shape::Collinear)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Shape::Generic => "generic",
            Shape::Coplanar => "coplanar",
            Shape::ConvexCoplanar => "convex_coplanar",
            Shape::NonconvexCoplanar => "nonconvex_coplanar",
            Shape::Collinear => "collinear",
        }
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-trial seed derived from a base seed (splitmix64 finalizer).
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Euclidean radius of a point at hyperbolic distance `rho` from the origin.
pub fn euclidean_radius(rho: f64) -> f64 {
    (rho / 2.0).tanh()
}

/// Hyperbolic distance from the origin, uniform in area within `radius`.
pub fn area_uniform_distance(u: f64, radius: f64) -> f64 {
    (1.0 + u * (radius.cosh() - 1.0)).acosh()
}

/// Hyperbolic distance from the origin, uniform in volume within `radius`.
pub fn volume_uniform_distance(u: f64, radius: f64) -> f64 {
    let cdf = |r: f64| r.sinh() * r.cosh() - r;
    let target = u * cdf(radius);
    let (mut lo, mut hi) = (0.0, radius);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if cdf(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn disk_point(rng: &mut impl Rng, radius: f64) -> [f64; 2] {
    let r = euclidean_radius(area_uniform_distance(rng.gen(), radius));
    let theta = rng.gen::<f64>() * std::f64::consts::TAU;
    [r * theta.cos(), r * theta.sin()]
}

fn ball_point(rng: &mut impl Rng, radius: f64) -> BallPoint {
    let r = euclidean_radius(volume_uniform_distance(rng.gen(), radius));
    let dir = crate::geometry::random_unit_vector(rng);
    BallPoint {
        x: r * dir[0],
        y: r * dir[1],
        z: r * dir[2],
    }
}

/// Whether all points lie on one geodesic, up to `tol`.
pub fn is_collinear(cfg: &Configuration, tol: f64) -> bool {
    let pts = cfg.points();
    let base = &pts[0];
    let dirs: Vec<[f64; 3]> = pts[1..]
        .iter()
        .filter_map(|p| mobius_translate(base, p, &Tolerances::default()).ok())
        .map(|q| {
            let c = q.coords();
            let r = q.norm();
            [c[0] / r, c[1] / r, c[2] / r]
        })
        .collect();
    if dirs.len() + 1 != pts.len() {
        return false;
    }
    let d0 = dirs[0];
    dirs.iter().all(|d| {
        let c = [
            d0[1] * d[2] - d0[2] * d[1],
            d0[2] * d[0] - d0[0] * d[2],
            d0[0] * d[1] - d0[1] * d[0],
        ];
        (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt() <= tol
    })
}

fn draw(n: usize, shape: Shape, rng: &mut ChaCha8Rng, radius: f64, tol: &Tolerances) -> Result<Configuration> {
    match shape {
        Shape::Generic => {
            let pts = (0..n).map(|_| ball_point(rng, radius)).collect();
            Configuration::new(pts, tol)
        }
        Shape::Coplanar | Shape::ConvexCoplanar | Shape::NonconvexCoplanar => {
            let pts: Vec<[f64; 2]> = (0..n).map(|_| disk_point(rng, radius)).collect();
            embed_h2(&pts, tol)
        }
        Shape::Collinear => {
            let pts: Vec<[f64; 2]> = (0..n)
                .map(|_| [euclidean_radius(rng.gen_range(-radius..radius)), 0.0])
                .collect();
            let line = embed_h2(&pts, tol)?;
            let moved = apply_isometry(&Isometry::random(rng.gen()), &line);
            Configuration::new(moved.points().to_vec(), tol)
        }
    }
}

fn accepted(cfg: &Configuration, shape: Shape, tol: &Tolerances) -> Result<bool> {
    Ok(match shape {
        Shape::Generic | Shape::Coplanar => true,
        Shape::ConvexCoplanar => classify_convexity(cfg, tol)? == ConvexityClass::Convex,
        Shape::NonconvexCoplanar => classify_convexity(cfg, tol)? == ConvexityClass::NonConvex,
        Shape::Collinear => is_collinear(cfg, 1e-9),
    })
}

/// Seeded sample of the given shape within hyperbolic radius `radius`.
pub fn sample_config_within(
    n: usize,
    shape: Shape,
    seed: u64,
    radius: f64,
    tol: &Tolerances,
) -> Result<Configuration> {
    if n < 2 {
        return Err(Error::InvalidPoint(format!("a configuration needs at least 2 points, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..=MAX_REJECTIONS {
        if let Ok(cfg) = draw(n, shape, &mut rng, radius, tol) {
            if accepted(&cfg, shape, tol)? {
                return Ok(cfg);
            }
        }
    }
    Err(Error::SamplingExhausted {
        shape: shape.to_string(),
        rejections: MAX_REJECTIONS,
    })
}

/// Seeded sample of the given shape within the default radius.
pub fn sample_config(n: usize, shape: Shape, seed: u64, tol: &Tolerances) -> Result<Configuration> {
    sample_config_within(n, shape, seed, DEFAULT_RADIUS, tol)
}
