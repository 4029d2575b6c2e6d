//! Monte Carlo sweeps of the normalized determinant over sampled shapes.

use rayon::prelude::*;
use serde::Serialize;

use super::sampling::{sample_config_within, trial_seed, Shape, DEFAULT_RADIUS};
use crate::algebra::{rational_to_f64, C64};
use crate::asdet::{exact_normalized_det, exactify, normalized_det, Variant};
use crate::error::Result;
use crate::geometry::{direction_matrix, Configuration, ConfigurationFile};
use crate::star::c_n;
use crate::tolerance::Tolerances;

/// Slack below the threshold before a trial counts as a violation.
pub const VIOLATION_SLACK: f64 = 1e-9;

/// Largest imaginary part accepted as "real" for coplanar shapes.
pub const REAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub n: usize,
    pub shape: Shape,
    pub variant: Variant,
    pub trials: usize,
    pub seed: u64,
    pub radius: f64,
    /// Keep one row per evaluated trial (for CSV output).
    pub keep_rows: bool,
}

impl SweepOptions {
    pub fn new(n: usize, shape: Shape, variant: Variant, trials: usize, seed: u64) -> Self {
        Self {
            n,
            shape,
            variant,
            trials,
            seed,
            radius: DEFAULT_RADIUS,
            keep_rows: false,
        }
    }
}

/// Lower bound checked by a sweep: 1 for the observer variant, `c_n` for
/// the star variant on convex and collinear shapes, and none (0) otherwise.
pub fn threshold(n: usize, shape: Shape, variant: Variant) -> f64 {
    match (variant, shape) {
        (Variant::Observer, _) => 1.0,
        (Variant::Star, Shape::ConvexCoplanar | Shape::Collinear) => rational_to_f64(&c_n(n)),
        (Variant::Star, _) => 0.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramBucket {
    /// Bounds on `log10(|D| / threshold)` (or `log10 |D|` without threshold).
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub trial: usize,
    pub seed: u64,
    pub abs_d: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub n: usize,
    pub variant: Variant,
    pub shape: Shape,
    pub trials: usize,
    pub seed: u64,
    pub threshold: f64,
    pub evaluated: usize,
    pub skipped: usize,
    pub min_abs_d: f64,
    pub min_real: f64,
    pub max_imag_abs: f64,
    pub argmin_trial: Option<usize>,
    pub argmin_seed: Option<u64>,
    pub argmin: Option<ConfigurationFile>,
    /// Trials confirmed below `threshold − 1e−9` after exact re-evaluation.
    pub violations: usize,
    /// Coplanar trials with `|Im D| > 1e−9` or `Re D ≤ 0`, confirmed exactly.
    pub sign_violations: usize,
    /// Float-level suspicions that exact re-evaluation did not confirm.
    pub cleared: usize,
    pub histogram: Vec<HistogramBucket>,
    #[serde(skip)]
    pub rows: Vec<TrialRow>,
}

impl SweepResult {
    /// Per-trial rows as CSV with header `trial,seed,abs_d,re,im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,seed,abs_d,re,im\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{:e},{:e},{:e}\n", r.trial, r.seed, r.abs_d, r.re, r.im));
        }
        out
    }
}

/// `D` recomputed exactly on the rationalized direction pairs.
pub fn exact_recheck(cfg: &Configuration, variant: Variant, tol: &Tolerances) -> Result<Option<C64>> {
    let exact = exactify(&direction_matrix(cfg, tol)?);
    Ok(exact_normalized_det(&exact, variant).map(|d| C64::new(rational_to_f64(&d.re), rational_to_f64(&d.im))))
}

/// The ten-times tighter cut used when re-verifying a suspicion.
fn confirmed_below(d: C64, thr: f64) -> bool {
    d.norm() < thr - VIOLATION_SLACK / 10.0
}

fn confirmed_sign(d: C64) -> bool {
    d.im.abs() > REAL_TOLERANCE / 10.0 || d.re <= 0.0
}

struct Outcome {
    seed: u64,
    value: Option<(C64, Configuration)>,
}

const BUCKETS: usize = 14;

fn bucket_of(x: f64) -> usize {
    if x < 0.0 {
        0
    } else {
        ((x / 0.25) as usize + 1).min(BUCKETS - 1)
    }
}

/// Sample `trials` configurations and evaluate `D` (or `D^s`) on each.
///
/// Evaluation failures count as skipped trials. Trials suspected of
/// breaking the bound (or, for coplanar shapes, the sign) are re-evaluated
/// exactly before being counted.
pub fn sweep(opts: &SweepOptions, tol: &Tolerances) -> Result<SweepResult> {
    if opts.trials == 0 {
        return Err(crate::error::Error::Precondition("sweep needs trials >= 1".into()));
    }
    let thr = threshold(opts.n, opts.shape, opts.variant);
    let outcomes: Vec<Outcome> = (0..opts.trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(opts.seed, i as u64);
            let value = sample_config_within(opts.n, opts.shape, seed, opts.radius, tol)
                .and_then(|cfg| {
                    let d = normalized_det(&direction_matrix(&cfg, tol)?, opts.variant, tol)?;
                    Ok((d, cfg))
                })
                .ok();
            Outcome { seed, value }
        })
        .collect();

    let mut res = SweepResult {
        n: opts.n,
        variant: opts.variant,
        shape: opts.shape,
        trials: opts.trials,
        seed: opts.seed,
        threshold: thr,
        evaluated: 0,
        skipped: 0,
        min_abs_d: f64::INFINITY,
        min_real: f64::INFINITY,
        max_imag_abs: 0.0,
        argmin_trial: None,
        argmin_seed: None,
        argmin: None,
        violations: 0,
        sign_violations: 0,
        cleared: 0,
        histogram: (0..BUCKETS)
            .map(|k| HistogramBucket {
                lo: if k == 0 { f64::NEG_INFINITY } else { 0.25 * (k - 1) as f64 },
                hi: if k == BUCKETS - 1 { f64::INFINITY } else { 0.25 * k as f64 },
                count: 0,
            })
            .collect(),
        rows: Vec::new(),
    };
    let scale = if thr > 0.0 { thr } else { 1.0 };
    for (i, o) in outcomes.into_iter().enumerate() {
        let Some((d, cfg)) = o.value else {
            res.skipped += 1;
            continue;
        };
        res.evaluated += 1;
        let abs = d.norm();
        if abs < res.min_abs_d {
            res.min_abs_d = abs;
            res.argmin_trial = Some(i);
            res.argmin_seed = Some(o.seed);
            res.argmin = Some(ConfigurationFile::from_configuration(&cfg));
        }
        res.min_real = res.min_real.min(d.re);
        res.max_imag_abs = res.max_imag_abs.max(d.im.abs());
        res.histogram[bucket_of((abs / scale).log10())].count += 1;
        if opts.keep_rows {
            res.rows.push(TrialRow {
                trial: i,
                seed: o.seed,
                abs_d: abs,
                re: d.re,
                im: d.im,
            });
        }
        let bound_suspect = abs < thr - VIOLATION_SLACK;
        let sign_suspect = opts.shape.is_coplanar() && (d.im.abs() > REAL_TOLERANCE || d.re <= 0.0);
        if bound_suspect || sign_suspect {
            let exact = exact_recheck(&cfg, opts.variant, tol)?;
            let mut confirmed = false;
            if bound_suspect && exact.map_or(true, |e| confirmed_below(e, thr)) {
                res.violations += 1;
                confirmed = true;
            }
            if sign_suspect && exact.map_or(true, confirmed_sign) {
                res.sign_violations += 1;
                confirmed = true;
            }
            if !confirmed {
                res.cleared += 1;
            }
        }
    }
    Ok(res)
}
