//! Circular order of the real directions of a coplanar configuration.
//!
//! For a configuration in the y = 0 plane every endpoint lies on the circle
//! `v = 0` of the sphere, so each direction has an angle. A pattern is a
//! list of index pairs; a configuration follows it when, after relabeling
//! and possibly reversing orientation, the angles increase cyclically along
//! the pattern. Cutting the circle in the gap before the first pattern entry
//! and using `t = −cot(φ/2)` (a real Möbius coordinate) turns the cyclic
//! order into the linear order `t_{p_0} < t_{p_1} < …`.

use std::f64::consts::TAU;

use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::permutations;
use crate::asdet::OffDiagonal;
use crate::error::Result;
use crate::geometry::{endpoint_matrix, Configuration};
use crate::symbolic::OrderingId;
use crate::tolerance::Tolerances;

/// The convex order: column blocks `b = 0, 1, …`, rows within block `b`
/// running `b+1, …, n−1, 0, …, b−1`. Entries are `(a, b)`, 0-based.
pub fn convex_pattern(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1));
    for b in 0..n {
        for a in (b + 1..n).chain(0..b) {
            out.push((a, b));
        }
    }
    out
}

/// The n = 4 pattern certified by a built-in ordering, 0-based.
pub fn ordering_pattern(ordering: OrderingId) -> Vec<(usize, usize)> {
    ordering
        .direction_order()
        .iter()
        .map(|name| {
            let d: Vec<usize> = name[1..].bytes().map(|c| (c - b'1') as usize).collect();
            (d[0], d[1])
        })
        .collect()
}

/// New label `i` is old label `perm[i]`; `reversed` flips orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relabeling {
    pub perm: Vec<usize>,
    pub reversed: bool,
}

/// Real directions, in new labels, that increase strictly along `pattern`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedDirections {
    pub relabeling: Relabeling,
    pub pattern: Vec<(usize, usize)>,
    pub t: OffDiagonal<f64>,
}

impl OrderedDirections {
    /// Whether exact affine values still increase strictly along the pattern.
    pub fn strictly_ordered_exact(&self, exact: &OffDiagonal<[BigRational; 2]>) -> bool {
        self.pattern.windows(2).all(|w| {
            let (x, y) = (&exact.get(w[0].0, w[0].1)[0], &exact.get(w[1].0, w[1].1)[0]);
            x < y
        })
    }
}

/// Endpoint angles `atan2(z, x)` of a coplanar configuration.
pub fn endpoint_angles(cfg: &Configuration, tol: &Tolerances) -> Result<OffDiagonal<f64>> {
    cfg.disk_points(tol)?;
    Ok(endpoint_matrix(cfg, tol)?.map(|_, _, d| d.w.atan2(d.u)))
}

/// Gaps between consecutive pattern entries, if they wind exactly once.
fn cyclic_gaps(angles: &[f64]) -> Option<Vec<f64>> {
    let m = angles.len();
    let gaps: Vec<f64> = (0..m)
        .map(|k| (angles[(k + 1) % m] - angles[k]).rem_euclid(TAU))
        .collect();
    let total: f64 = gaps.iter().sum();
    (gaps.iter().all(|&g| g > 1e-12) && (total - TAU).abs() < 1e-6).then_some(gaps)
}

/// Search all relabelings and both orientations for one under which the
/// directions follow `pattern` cyclically.
pub fn find_relabeling(angles: &OffDiagonal<f64>, pattern: &[(usize, usize)]) -> Option<(Relabeling, Vec<f64>)> {
    let n = angles.n();
    for perm in permutations(n) {
        for reversed in [false, true] {
            let sign = if reversed { -1.0 } else { 1.0 };
            let seq: Vec<f64> = pattern
                .iter()
                .map(|&(a, b)| sign * angles.get(perm[a], perm[b]))
                .collect();
            if cyclic_gaps(&seq).is_some() {
                return Some((Relabeling { perm, reversed }, seq));
            }
        }
    }
    None
}

/// Relabel, orient and cut so that the real directions increase along
/// `pattern`; `None` when no relabeling matches.
pub fn ordered_real_directions(
    cfg: &Configuration,
    pattern: &[(usize, usize)],
    tol: &Tolerances,
) -> Result<Option<OrderedDirections>> {
    let angles = endpoint_angles(cfg, tol)?;
    let Some((relabeling, seq)) = find_relabeling(&angles, pattern) else {
        return Ok(None);
    };
    let gaps = cyclic_gaps(&seq).expect("matched");
    let last = seq.len() - 1;
    let cut = seq[last] + gaps[last] / 2.0;
    let mut t = OffDiagonal::from_fn(cfg.n(), |_, _| 0.0);
    for (&(a, b), &theta) in pattern.iter().zip(&seq) {
        let phi = (theta - cut).rem_euclid(TAU);
        t.set(a, b, -(phi / 2.0).cos() / (phi / 2.0).sin());
    }
    Ok(Some(OrderedDirections {
        relabeling,
        pattern: pattern.to_vec(),
        t,
    }))
}
