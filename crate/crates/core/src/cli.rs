//! Command-line front end.
//!
//! Exit codes: 0 success, 1 other failure, 2 parse or input error,
//! 3 degenerate configuration, 4 certificate failure, 5 verification
//! failure, 6 group sum above the cap.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::asdet::{normalized_det, Variant};
use crate::error::{Error, Result};
use crate::experiments::minimize::{minimize_abs_d, MinimizeOptions};
use crate::experiments::sampling::{Shape, DEFAULT_RADIUS};
use crate::experiments::sweep::{sweep, SweepOptions};
use crate::geometry::{direction_matrix, ConfigurationFile};
use crate::star::verify_expansion;
use crate::symbolic::{build_certificates, check_certificates, OrderingId, Verdict};
use crate::tolerance::{Caps, Tolerances};

#[derive(Debug, Parser)]
#[command(name = "ashyp", version, about = "Normalized Atiyah–Sutcliffe determinants in hyperbolic space")]
pub struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// JSON run configuration; flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub overrides: Overrides,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// Minimum separation between points
    #[arg(long, global = true)]
    pub eps_sep: Option<f64>,
    /// Minimum distance from the boundary sphere
    #[arg(long, global = true)]
    pub eps_boundary: Option<f64>,
    /// Allowed deviation of endpoints from unit length
    #[arg(long, global = true)]
    pub eps_unit: Option<f64>,
    /// Smallest admissible denominator bracket
    #[arg(long, global = true)]
    pub eps_den: Option<f64>,
    /// Hull distance below which convexity is degenerate
    #[arg(long, global = true)]
    pub eps_hull: Option<f64>,
    /// Largest |y| still counted as coplanar
    #[arg(long, global = true)]
    pub eps_plane: Option<f64>,
    /// Largest n for exact group sums
    #[arg(long, global = true)]
    pub cap_symbolic_n: Option<usize>,
    /// Largest n for numeric group sums
    #[arg(long, global = true)]
    pub cap_numeric_n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print D and D^s for a configuration file.
    Compute {
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reproduce the four-point positivity certificates.
    Certify {
        #[arg(value_enum, default_value = "both")]
        ordering: CertifyTarget,
        /// Directory for the certificate JSON files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Include every monomial of each expansion.
        #[arg(long)]
        terms: bool,
    },
    /// Check the star-determinant group expansion.
    VerifyExpansion {
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Monte Carlo sweep of |D| over sampled configurations.
    Sweep {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        shape: Option<Shape>,
        #[arg(long, value_enum)]
        variant: Option<Variant>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Hyperbolic sampling radius.
        #[arg(long)]
        radius: Option<f64>,
        /// Per-trial rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Local search for small |D|.
    Minimize {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        shape: Option<Shape>,
        #[arg(long, value_enum)]
        variant: Option<Variant>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Objective evaluations per restart.
        #[arg(long)]
        max_evals: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CertifyTarget {
    Thm1,
    Zhangma,
    Both,
}

/// Contents of a `--config` file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub n: Option<usize>,
    pub variant: Option<Variant>,
    pub shape: Option<Shape>,
    pub trials: Option<usize>,
    pub restarts: Option<usize>,
    pub seed: Option<u64>,
    pub tolerances: Option<Tolerances>,
    pub caps: Option<Caps>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = read(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::InvalidPoint(_) | Error::NotCoplanar { .. } => 2,
        Error::DegenerateRay { .. } | Error::DegenerateDenominator { .. } | Error::NumericalDegeneracy(_) => 3,
        Error::CertificateFailed { .. } => 4,
        Error::VerificationFailed { .. } | Error::BoundViolated(_) => 5,
        Error::CapExceeded { .. } => 6,
        _ => 1,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

struct Ctx<'a> {
    json: bool,
    tol: Tolerances,
    caps: Caps,
    file: RunConfig,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, value: &serde_json::Value, human: &str) {
        let _ = if self.json {
            writeln!(self.out, "{}", serde_json::to_string_pretty(value).expect("serializable"))
        } else {
            write!(self.out, "{human}")
        };
    }
}

fn complex(z: crate::algebra::C64) -> String {
    let sign = if z.im.is_sign_negative() && z.im != 0.0 { '-' } else { '+' };
    format!("{} {sign} {}i", z.re, z.im.abs())
}

fn required<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("missing --{name}")))
}

fn resolve(cli: &Cli) -> Result<(RunConfig, Tolerances, Caps)> {
    let file = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let name = match cli.command {
        Command::Compute { .. } => "compute",
        Command::Certify { .. } => "certify",
        Command::VerifyExpansion { .. } => "verify-expansion",
        Command::Sweep { .. } => "sweep",
        Command::Minimize { .. } => "minimize",
    };
    if let Some(c) = &file.command {
        if c != name {
            return Err(Error::Parse(format!("config is for command {c:?}, not {name:?}")));
        }
    }
    let o = &cli.overrides;
    let mut tol = file.tolerances.unwrap_or_default();
    for (slot, v) in [
        (&mut tol.eps_sep, o.eps_sep),
        (&mut tol.eps_boundary, o.eps_boundary),
        (&mut tol.eps_unit, o.eps_unit),
        (&mut tol.eps_den, o.eps_den),
        (&mut tol.eps_hull, o.eps_hull),
        (&mut tol.eps_plane, o.eps_plane),
    ] {
        if let Some(v) = v {
            *slot = v;
        }
    }
    let mut caps = file.caps.unwrap_or_default();
    if let Some(v) = o.cap_symbolic_n {
        caps.symbolic_n = v;
    }
    if let Some(v) = o.cap_numeric_n {
        caps.numeric_n = v;
    }
    Ok((file, tol, caps))
}

fn compute(ctx: &mut Ctx, input: Option<PathBuf>, output: Option<PathBuf>) -> Result<i32> {
    let input = required(input.or(ctx.file.input.clone()), "input")?;
    let cfg = ConfigurationFile::parse(&read(&input)?)?.to_configuration(&ctx.tol)?;
    let dm = direction_matrix(&cfg, &ctx.tol)?;
    let d = normalized_det(&dm, Variant::Observer, &ctx.tol)?;
    let ds = normalized_det(&dm, Variant::Star, &ctx.tol)?;
    let infinite = dm.iter().filter(|(_, _, e)| e.is_infinite()).count();
    let coplanar = cfg.is_coplanar(&ctx.tol);
    let report = json!({
        "n": cfg.n(),
        "D": {"re": d.re, "im": d.im},
        "abs_D": d.norm(),
        "D_star": {"re": ds.re, "im": ds.im},
        "abs_D_star": ds.norm(),
        "coplanar": coplanar,
        "infinite_directions": infinite,
        "degenerate": false,
    });
    if let Some(p) = output.or(ctx.file.output.clone()) {
        write(&p, &(serde_json::to_string_pretty(&report).expect("serializable") + "\n"))?;
    }
    let human = format!(
        "n       = {}\nD       = {}\n|D|     = {}\nD^s     = {}\n|D^s|   = {}\ncoplanar: {coplanar}, infinite directions: {infinite}, degenerate: no\n",
        cfg.n(),
        complex(d),
        d.norm(),
        complex(ds),
        ds.norm()
    );
    ctx.emit(&report, &human);
    Ok(0)
}

fn certify(ctx: &mut Ctx, target: CertifyTarget, out_dir: &Path, terms: bool) -> Result<i32> {
    let orderings = match target {
        CertifyTarget::Thm1 => vec![OrderingId::Thm1],
        CertifyTarget::Zhangma => vec![OrderingId::Zhangma],
        CertifyTarget::Both => vec![OrderingId::Thm1, OrderingId::Zhangma],
    };
    std::fs::create_dir_all(out_dir).map_err(|e| Error::Parse(format!("{}: {e}", out_dir.display())))?;
    let mut all = Vec::new();
    let mut human = String::new();
    for ordering in orderings {
        let certs = build_certificates(ordering, terms);
        human.push_str(&format!("{ordering}: {}\n", certs[0].direction_order.join(" < ")));
        for c in &certs {
            let path = out_dir.join(format!("certificate_{}_{}.json", ordering, c.polynomial));
            write(&path, &c.to_canonical_string())?;
            human.push_str(&format!(
                "  {:<7} y0-free {:<5} monomials {:<5} +{:<5} -{:<5} sign {:<6} {}\n",
                c.polynomial.to_string(),
                c.y0_free,
                c.n_monomials,
                c.n_pos,
                c.n_neg,
                serde_json::to_value(c.uniform_sign).expect("serializable").as_str().unwrap_or(""),
                if c.verdict == Verdict::Pass { "pass" } else { "FAIL" },
            ));
        }
        all.extend(certs);
    }
    let mut summary: Vec<serde_json::Value> = all.iter().map(|c| c.to_json()).collect();
    if terms {
        for s in &mut summary {
            s.as_object_mut().expect("object").remove("terms");
        }
    }
    ctx.emit(&json!({"certificates": summary}), &human);
    check_certificates(&all)?;
    Ok(0)
}

fn verify(ctx: &mut Ctx, n: Option<usize>, seed: Option<u64>) -> Result<i32> {
    let n = required(n.or(ctx.file.n), "n")?;
    let report = verify_expansion(n, &ctx.caps, seed.or(ctx.file.seed).unwrap_or(0))?;
    let human = format!(
        "n = {}, method {}, group order {}, {} ({} ms)\n{}",
        report.n,
        report.method,
        report.group_order,
        if report.pass { "pass" } else { "FAIL" },
        report.elapsed_ms,
        report.witnesses.iter().map(|w| format!("  witness: {w}\n")).collect::<String>()
    );
    ctx.emit(&serde_json::to_value(&report).expect("serializable"), &human);
    report.into_result().map(|_| 0)
}

#[allow(clippy::too_many_arguments)]
fn run_sweep(
    ctx: &mut Ctx,
    n: Option<usize>,
    shape: Option<Shape>,
    variant: Option<Variant>,
    trials: Option<usize>,
    seed: Option<u64>,
    radius: Option<f64>,
    csv: Option<PathBuf>,
    output: Option<PathBuf>,
) -> Result<i32> {
    let f = &ctx.file;
    let mut opts = SweepOptions::new(
        required(n.or(f.n), "n")?,
        shape.or(f.shape).unwrap_or(Shape::Generic),
        variant.or(f.variant).unwrap_or(Variant::Observer),
        trials.or(f.trials).unwrap_or(1000),
        seed.or(f.seed).unwrap_or(0),
    );
    opts.radius = radius.unwrap_or(DEFAULT_RADIUS);
    opts.keep_rows = csv.is_some();
    let output = output.or(f.output.clone());
    let res = sweep(&opts, &ctx.tol)?;
    let value = serde_json::to_value(&res).expect("serializable");
    if let Some(p) = output {
        write(&p, &(serde_json::to_string_pretty(&value).expect("serializable") + "\n"))?;
    }
    if let Some(p) = csv {
        write(&p, &res.to_csv())?;
    }
    let human = format!(
        "n={} shape={} variant={} trials={} seed={}\nevaluated {} skipped {}\nmin |D| = {:.12} (trial {})\nmin Re D = {:.12}, max |Im D| = {:e}\nthreshold {} -> violations {}, sign violations {}, cleared {}\n",
        res.n, res.shape, res.variant, res.trials, res.seed, res.evaluated, res.skipped, res.min_abs_d,
        res.argmin_trial.map_or("-".to_string(), |t| t.to_string()), res.min_real, res.max_imag_abs, res.threshold, res.violations, res.sign_violations, res.cleared
    );
    ctx.emit(&value, &human);
    let theorem_sign = res.variant == Variant::Observer
        && matches!(res.shape, Shape::ConvexCoplanar | Shape::NonconvexCoplanar);
    Ok(if res.violations > 0 || (theorem_sign && res.sign_violations > 0) { 5 } else { 0 })
}

#[allow(clippy::too_many_arguments)]
fn run_minimize(
    ctx: &mut Ctx,
    n: Option<usize>,
    shape: Option<Shape>,
    variant: Option<Variant>,
    restarts: Option<usize>,
    seed: Option<u64>,
    max_evals: Option<usize>,
    output: Option<PathBuf>,
) -> Result<i32> {
    let f = &ctx.file;
    let mut opts = MinimizeOptions::new(
        required(n.or(f.n), "n")?,
        shape.or(f.shape).unwrap_or(Shape::Generic),
        variant.or(f.variant).unwrap_or(Variant::Observer),
        restarts.or(f.restarts).unwrap_or(4),
        seed.or(f.seed).unwrap_or(0),
    );
    if let Some(m) = max_evals {
        opts.max_evals = m;
    }
    let output = output.or(f.output.clone());
    let res = minimize_abs_d(&opts, &ctx.tol)?;
    let value = serde_json::to_value(&res).expect("serializable");
    if let Some(p) = output {
        write(&p, &(serde_json::to_string_pretty(&value).expect("serializable") + "\n"))?;
    }
    let human = format!(
        "n={} shape={} variant={} restarts={}\nmin |D| = {:.12} after {} evaluations (threshold {})\nviolations {}\n",
        res.n, res.shape, res.variant, res.restarts, res.min_abs_d, res.evaluations, res.threshold, res.violations
    );
    ctx.emit(&value, &human);
    Ok(if res.violations > 0 { 5 } else { 0 })
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let (file, tol, caps) = resolve(&cli)?;
    let mut ctx = Ctx {
        json: cli.json,
        tol,
        caps,
        file,
        out,
    };
    match cli.command {
        Command::Compute { input, output } => compute(&mut ctx, input, output),
        Command::Certify { ordering, out_dir, terms } => certify(&mut ctx, ordering, &out_dir, terms),
        Command::VerifyExpansion { n, seed } => verify(&mut ctx, n, seed),
        Command::Sweep { n, shape, variant, trials, seed, radius, csv, output } => {
            run_sweep(&mut ctx, n, shape, variant, trials, seed, radius, csv, output)
        }
        Command::Minimize { n, shape, variant, restarts, seed, max_evals, output } => {
            run_minimize(&mut ctx, n, shape, variant, restarts, seed, max_evals, output)
        }
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let pool = match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let (result, buf) = pool.install(|| {
        let mut buf = Vec::new();
        (dispatch(cli, &mut buf), buf)
    });
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::CertificateFailed { offending, .. } = &e {
                for m in offending {
                    let _ = writeln!(err, "  offending: {m}");
                }
            }
            if let Error::VerificationFailed { witness: Some(w), .. } = &e {
                let _ = writeln!(err, "  witness: {w}");
            }
            exit_code(&e)
        }
    }
}
