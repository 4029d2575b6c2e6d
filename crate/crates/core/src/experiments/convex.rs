//! Hyperbolic convexity of coplanar configurations, decided in the Klein
//! model where geodesics are straight chords.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::Configuration;
use crate::tolerance::Tolerances;

type P2 = [f64; 2];

/// Poincaré disk to Klein disk, `p ↦ 2p / (1 + |p|²)`.
pub fn klein(p: P2) -> P2 {
    let s = 2.0 / (1.0 + p[0] * p[0] + p[1] * p[1]);
    [p[0] * s, p[1] * s]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvexityClass {
    /// Every point is a strict vertex of the hull.
    Convex,
    /// Some point lies strictly inside the hull of the others.
    NonConvex,
    /// Some point lies within `eps_hull` of the hull of the others.
    Degenerate,
}

fn cross(o: P2, a: P2, b: P2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn segment_distance(p: P2, a: P2, b: P2) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let s = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0)
    };
    (p[0] - a[0] - s * d[0]).hypot(p[1] - a[1] - s * d[1])
}

/// Counter-clockwise hull vertices (monotone chain, collinear points dropped).
pub fn convex_hull(points: &[P2]) -> Vec<P2> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<P2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &P2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Signed distance from `p` to the hull of `others`: positive outside,
/// negative strictly inside.
pub fn signed_hull_distance(p: P2, others: &[P2]) -> f64 {
    let hull = convex_hull(others);
    match hull.len() {
        0 => f64::INFINITY,
        1 => (p[0] - hull[0][0]).hypot(p[1] - hull[0][1]),
        2 => segment_distance(p, hull[0], hull[1]),
        m => {
            let dist = (0..m)
                .map(|i| segment_distance(p, hull[i], hull[(i + 1) % m]))
                .fold(f64::INFINITY, f64::min);
            let inside = (0..m).all(|i| cross(hull[i], hull[(i + 1) % m], p) > 0.0);
            if inside {
                -dist
            } else {
                dist
            }
        }
    }
}

/// Convexity class of a coplanar configuration.
pub fn classify_convexity(cfg: &Configuration, tol: &Tolerances) -> Result<ConvexityClass> {
    let k: Vec<P2> = cfg.disk_points(tol)?.into_iter().map(klein).collect();
    let mut class = ConvexityClass::Convex;
    for i in 0..k.len() {
        let others: Vec<P2> = k.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &q)| q).collect();
        let d = signed_hull_distance(k[i], &others);
        if d < -tol.eps_hull {
            return Ok(ConvexityClass::NonConvex);
        }
        if d <= tol.eps_hull {
            class = ConvexityClass::Degenerate;
        }
    }
    // two points, or three collinear ones, have no interior
    if k.len() >= 3 && convex_hull(&k).len() < 3 {
        class = ConvexityClass::Degenerate;
    }
    Ok(class)
}

/// True iff every point is a strict vertex of the hyperbolic convex hull.
pub fn is_convex(cfg: &Configuration, tol: &Tolerances) -> Result<bool> {
    Ok(classify_convexity(cfg, tol)? == ConvexityClass::Convex)
}
