//! Nelder–Mead search for small `|D|`.
//!
//! Each point is parameterized by a tangent vector `v` at the origin and
//! placed at hyperbolic distance `min(|v|, ρ_max)` along it, so every
//! proposal lies inside the ball. Shape constraints are enforced with an
//! infinite penalty. Restarts begin at the worst configurations of a short
//! sweep.

use serde::Serialize;

use super::convex::{classify_convexity, ConvexityClass};
use super::sampling::{euclidean_radius, sample_config, trial_seed, Shape};
use super::sweep::{exact_recheck, threshold, VIOLATION_SLACK};
use crate::asdet::{normalized_det, Variant};
use crate::error::{Error, Result};
use crate::geometry::{direction_matrix, BallPoint, Configuration, ConfigurationFile};
use crate::tolerance::Tolerances;

/// Largest hyperbolic distance from the origin a parameter can reach.
pub const RHO_MAX: f64 = 6.0;

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeOptions {
    pub n: usize,
    pub shape: Shape,
    pub variant: Variant,
    pub restarts: usize,
    pub seed: u64,
    /// Objective evaluations per restart.
    pub max_evals: usize,
    /// Sampled candidates per restart when choosing starting points.
    pub pool: usize,
}

impl MinimizeOptions {
    pub fn new(n: usize, shape: Shape, variant: Variant, restarts: usize, seed: u64) -> Self {
        Self {
            n,
            shape,
            variant,
            restarts,
            seed,
            max_evals: 3000,
            pool: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizeResult {
    pub n: usize,
    pub variant: Variant,
    pub shape: Shape,
    pub restarts: usize,
    pub seed: u64,
    pub threshold: f64,
    pub evaluations: usize,
    pub min_abs_d: f64,
    pub argmin: Option<ConfigurationFile>,
    /// Best value reached by each restart.
    pub restart_minima: Vec<f64>,
    /// Minima below `threshold − 1e−9` that survived exact re-evaluation.
    pub violations: usize,
}

fn dims(shape: Shape) -> usize {
    match shape {
        Shape::Generic => 3,
        Shape::Collinear => 1,
        _ => 2,
    }
}

fn point_of(v: &[f64]) -> BallPoint {
    let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let s = if len == 0.0 { 0.0 } else { euclidean_radius(len.min(RHO_MAX)) / len };
    match v.len() {
        1 => BallPoint { x: v[0] * s, y: 0.0, z: 0.0 },
        2 => BallPoint { x: v[0] * s, y: 0.0, z: v[1] * s },
        _ => BallPoint { x: v[0] * s, y: v[1] * s, z: v[2] * s },
    }
}

/// Inverse of [`point_of`] for points closer than `RHO_MAX`.
fn params_of(p: &BallPoint, d: usize) -> Vec<f64> {
    let r = p.norm();
    let rho = 2.0 * r.atanh();
    let s = if r == 0.0 { 0.0 } else { rho / r };
    match d {
        1 => vec![p.x * s],
        2 => vec![p.x * s, p.z * s],
        _ => vec![p.x * s, p.y * s, p.z * s],
    }
}

fn configuration(x: &[f64], d: usize, tol: &Tolerances) -> Result<Configuration> {
    Configuration::new(x.chunks(d).map(point_of).collect(), tol)
}

fn objective(x: &[f64], opts: &MinimizeOptions, tol: &Tolerances) -> f64 {
    let d = dims(opts.shape);
    let Ok(cfg) = configuration(x, d, tol) else {
        return f64::INFINITY;
    };
    let wanted = match opts.shape {
        Shape::ConvexCoplanar => Some(ConvexityClass::Convex),
        Shape::NonconvexCoplanar => Some(ConvexityClass::NonConvex),
        _ => None,
    };
    if let Some(w) = wanted {
        if classify_convexity(&cfg, tol).ok() != Some(w) {
            return f64::INFINITY;
        }
    }
    direction_matrix(&cfg, tol)
        .and_then(|dm| normalized_det(&dm, opts.variant, tol))
        .map(|v| v.norm())
        .unwrap_or(f64::INFINITY)
}

/// Plain Nelder–Mead (reflection 1, expansion 2, contraction and shrink 1/2).
pub fn nelder_mead(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    max_evals: usize,
) -> (Vec<f64>, f64, usize) {
    let m = x0.len();
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..m {
        let mut x = x0.to_vec();
        x[i] += step;
        simplex.push(x);
    }
    let mut vals: Vec<f64> = simplex.iter().map(|x| f(x)).collect();
    let mut evals = m + 1;
    while evals < max_evals {
        let mut idx: Vec<usize> = (0..=m).collect();
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        simplex = idx.iter().map(|&i| simplex[i].clone()).collect();
        vals = idx.iter().map(|&i| vals[i]).collect();
        if vals[m].is_finite() && vals[m] - vals[0] <= 1e-15 * vals[0].abs().max(1.0) {
            break;
        }
        let centroid: Vec<f64> = (0..m)
            .map(|j| simplex[..m].iter().map(|x| x[j]).sum::<f64>() / m as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&simplex[m]).map(|(c, w)| c + t * (c - w)).collect()
        };
        let xr = along(1.0);
        let fr = f(&xr);
        evals += 1;
        if fr < vals[0] {
            let xe = along(2.0);
            let fe = f(&xe);
            evals += 1;
            if fe < fr {
                simplex[m] = xe;
                vals[m] = fe;
            } else {
                simplex[m] = xr;
                vals[m] = fr;
            }
        } else if fr < vals[m - 1] {
            simplex[m] = xr;
            vals[m] = fr;
        } else {
            let (xc, fc) = if fr < vals[m] {
                let x = along(0.5);
                let v = f(&x);
                (x, v)
            } else {
                let x = along(-0.5);
                let v = f(&x);
                (x, v)
            };
            evals += 1;
            if fc < vals[m].min(fr) {
                simplex[m] = xc;
                vals[m] = fc;
            } else {
                for i in 1..=m {
                    simplex[i] = simplex[0]
                        .iter()
                        .zip(&simplex[i])
                        .map(|(b, x)| b + 0.5 * (x - b))
                        .collect();
                    vals[i] = f(&simplex[i]);
                }
                evals += m;
            }
        }
    }
    let best = (0..=m).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).expect("non-empty");
    (simplex[best].clone(), vals[best], evals)
}

/// Minimize `|D|` (or `|D^s|`) over configurations of the given shape.
pub fn minimize_abs_d(opts: &MinimizeOptions, tol: &Tolerances) -> Result<MinimizeResult> {
    if opts.restarts == 0 {
        return Err(Error::Precondition("minimize needs restarts >= 1".into()));
    }
    let d = dims(opts.shape);
    let thr = threshold(opts.n, opts.shape, opts.variant);

    // worst configurations of a short sweep
    let mut starts: Vec<(f64, Vec<f64>)> = (0..opts.restarts * opts.pool)
        .filter_map(|i| {
            let cfg = sample_config(opts.n, opts.shape, trial_seed(opts.seed, i as u64), tol).ok()?;
            let x: Vec<f64> = cfg.points().iter().flat_map(|p| params_of(p, d)).collect();
            let f = objective(&x, opts, tol);
            f.is_finite().then_some((f, x))
        })
        .collect();
    starts.sort_by(|a, b| a.0.total_cmp(&b.0));
    starts.truncate(opts.restarts);

    let mut best = (f64::INFINITY, None::<Vec<f64>>);
    let mut evaluations = 0;
    let mut restart_minima = Vec::new();
    for (_, x0) in starts {
        let mut f = |x: &[f64]| objective(x, opts, tol);
        let (x, v, e) = nelder_mead(&mut f, &x0, 0.3, opts.max_evals);
        evaluations += e;
        restart_minima.push(v);
        if v < best.0 {
            best = (v, Some(x));
        }
    }

    let argmin = match &best.1 {
        Some(x) => Some(configuration(x, d, tol)?),
        None => None,
    };
    let mut violations = 0;
    if let Some(cfg) = &argmin {
        if best.0 < thr - VIOLATION_SLACK {
            let tight = Tolerances {
                eps_den: tol.eps_den / 10.0,
                ..*tol
            };
            let confirmed = match exact_recheck(cfg, opts.variant, &tight)? {
                Some(e) => e.norm() < thr - VIOLATION_SLACK / 10.0,
                None => true,
            };
            violations += confirmed as usize;
        }
    }
    Ok(MinimizeResult {
        n: opts.n,
        variant: opts.variant,
        shape: opts.shape,
        restarts: opts.restarts,
        seed: opts.seed,
        threshold: thr,
        evaluations,
        min_abs_d: best.0,
        argmin: argmin.as_ref().map(ConfigurationFile::from_configuration),
        restart_minima,
        violations,
    })
}
