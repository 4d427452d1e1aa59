use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use elastica_core::curve::CurveGeometry;
use elastica_core::verify::SuiteConfig;
use rayon::prelude::*;

use crate::config::{CurveSpec, RunConfig};
use crate::error::{AppError, AppResult};
use crate::{io, run, verify_report};

#[derive(Debug, Parser)]
#[command(name = "elastica", version, about = "Elastic flow of closed curves in the hyperbolic half-plane")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the flow and write a trajectory directory.
    Flow(FlowArgs),
    /// Run the numerical verification suite and write a JSON report.
    Verify(VerifyArgs),
    /// Turn a trajectory directory into plot-ready CSV.
    Report(ReportArgs),
    /// Write an initial curve.
    MakeCurve(MakeCurveArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Circle,
    PerturbedCircle,
    Random,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CurveArgs {
    /// Initial curve; parameters not given keep their configured values.
    #[arg(long)]
    pub curve: Option<Kind>,
    #[arg(long)]
    pub center_y: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub mode: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub amplitude: Option<f64>,
    /// Read the initial curve from a JSON or CSV file.
    #[arg(long, conflicts_with = "curve")]
    pub curve_file: Option<PathBuf>,
}

impl CurveArgs {
    fn apply(&self, spec: &CurveSpec) -> AppResult<CurveSpec> {
        if let Some(path) = &self.curve_file {
            return Ok(CurveSpec::File { path: path.clone() });
        }
        let CurveSpec::PerturbedCircle { center_y: cy, radius: r, mode: m, amplitude: a } = CurveSpec::default() else {
            unreachable!()
        };
        let (cy0, r0, m0, a0) = match spec {
            CurveSpec::Circle { center_y, radius } => (*center_y, *radius, m, 0.0),
            CurveSpec::PerturbedCircle { center_y, radius, mode, amplitude } => (*center_y, *radius, *mode, *amplitude),
            _ => (cy, r, m, a),
        };
        let (cy, r) = (self.center_y.unwrap_or(cy0), self.radius.unwrap_or(r0));
        let touched = self.center_y.is_some() || self.radius.is_some() || self.mode.is_some() || self.amplitude.is_some();
        Ok(match self.curve {
            Some(Kind::Circle) => CurveSpec::Circle { center_y: cy, radius: r },
            Some(Kind::PerturbedCircle) => CurveSpec::PerturbedCircle {
                center_y: cy,
                radius: r,
                mode: self.mode.unwrap_or(m0),
                amplitude: self.amplitude.unwrap_or(a0),
            },
            Some(Kind::Random) => CurveSpec::Random,
            None if !touched => spec.clone(),
            None => match spec {
                CurveSpec::Circle { .. } => CurveSpec::Circle { center_y: cy, radius: r },
                CurveSpec::PerturbedCircle { .. } => CurveSpec::PerturbedCircle {
                    center_y: cy,
                    radius: r,
                    mode: self.mode.unwrap_or(m0),
                    amplitude: self.amplitude.unwrap_or(a0),
                },
                _ => return Err(AppError::Config("curve parameters need --curve for this curve kind".into())),
            },
        })
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct FlowArgs {
    /// TOML or JSON config, or a run_manifest.json to replay.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub dt: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_end: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub grad_tol: Option<f64>,
    #[arg(long)]
    pub max_steps: Option<u64>,
    #[arg(long)]
    pub snapshot_every: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "run")]
    pub out: PathBuf,
    /// PARAM=v1,v2,... runs one flow per value in parallel, each into
    /// OUT/PARAM_value. PARAM is lambda, n, dt, t_end, grad_tol or seed.
    #[arg(long)]
    pub sweep: Option<String>,
    #[command(flatten)]
    pub curve: CurveArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-5)]
    pub h: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub first_variation_curves: usize,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    pub dir: PathBuf,
    /// Defaults to DIR/report.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MakeCurveArgs {
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// .json or .csv; JSON on stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub curve: CurveArgs,
}

/// Resolves defaults < config file < flags.
pub fn resolve(args: &FlowArgs) -> AppResult<RunConfig> {
    let mut c = match &args.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(v) = args.lambda {
        c.lambda = v;
    }
    if let Some(v) = args.n {
        c.n_samples = v;
    }
    if let Some(v) = args.dt {
        c.dt_init = Some(v);
    }
    if let Some(v) = args.t_end {
        c.t_end = v;
    }
    if let Some(v) = args.grad_tol {
        c.grad_tol = v;
    }
    if let Some(v) = args.max_steps {
        c.max_steps = v;
    }
    if let Some(v) = args.snapshot_every {
        c.snapshot_every = v;
    }
    if let Some(v) = args.seed {
        c.seed = v;
    }
    c.curve = args.curve.apply(&c.curve)?;
    c.validate()?;
    Ok(c)
}

fn parse_sweep(spec: &str, base: &RunConfig) -> AppResult<Vec<(String, RunConfig)>> {
    let bad = |m: String| AppError::Config(format!("--sweep {spec}: {m}"));
    let (param, values) = spec.split_once('=').ok_or_else(|| bad("expected PARAM=v1,v2,...".into()))?;
    let mut out = Vec::new();
    for v in values.split(',').map(str::trim).filter(|v| !v.is_empty()) {
        let mut c = base.clone();
        let float = || v.parse::<f64>().map_err(|e| bad(format!("{v}: {e}")));
        let int = || v.parse::<u64>().map_err(|e| bad(format!("{v}: {e}")));
        match param {
            "lambda" => c.lambda = float()?,
            "dt" => c.dt_init = Some(float()?),
            "t_end" => c.t_end = float()?,
            "grad_tol" => c.grad_tol = float()?,
            "n" => c.n_samples = int()? as usize,
            "seed" => c.seed = int()?,
            _ => return Err(bad(format!("unknown parameter {param}"))),
        }
        c.validate()?;
        out.push((format!("{param}_{v}"), c));
    }
    if out.is_empty() {
        return Err(bad("no values".into()));
    }
    Ok(out)
}

fn summary_line(name: &str, o: &run::RunOutcome) -> String {
    let k = CurveGeometry::new(&o.curve).map(|g| g.kappa_norm).unwrap_or_default();
    let kmin = k.iter().cloned().fold(f64::INFINITY, f64::min);
    let kmax = k.iter().cloned().fold(0.0, f64::max);
    let m = &o.manifest;
    format!(
        "{name}termination={} t={:.6e} steps={} rejected={} E_lambda={:.12e} grad_l2={:.3e} kappa=[{kmin:.6}, {kmax:.6}]",
        m.termination, m.t_final, m.steps_accepted, m.steps_rejected, o.report.penalized, o.report.grad_l2
    )
}

pub fn cmd_flow(args: &FlowArgs) -> AppResult<()> {
    let base = resolve(args)?;
    let Some(sweep) = &args.sweep else {
        let o = run::run_flow(&base, &args.out)?;
        println!("{}", summary_line("", &o));
        return Ok(());
    };
    let jobs = parse_sweep(sweep, &base)?;
    let results: Vec<(String, AppResult<run::RunOutcome>)> =
        jobs.into_par_iter().map(|(name, c)| { let r = run::run_flow(&c, &args.out.join(&name)); (name, r) }).collect();
    let mut worst: Option<AppError> = None;
    for (name, r) in results {
        match r {
            Ok(o) => println!("{}", summary_line(&format!("{name}: "), &o)),
            Err(e) => {
                eprintln!("{name}: {e}");
                if worst.as_ref().is_none_or(|w| e.exit_code() > w.exit_code()) {
                    worst = Some(e);
                }
            }
        }
    }
    worst.map_or(Ok(()), Err)
}

pub fn cmd_verify(args: &VerifyArgs) -> AppResult<()> {
    let cfg = SuiteConfig {
        n: args.n,
        h: args.h,
        seed: args.seed,
        first_variation_curves: args.first_variation_curves,
        ..SuiteConfig::default()
    };
    let rep = verify_report::run(&cfg)?;
    let mut text = serde_json::to_string_pretty(&rep).expect("report serializes");
    text.push('\n');
    match &args.out {
        Some(p) => fs::write(p, text).map_err(AppError::io(p))?,
        None => print!("{text}"),
    }
    for r in rep.records.iter().filter(|r| !r.pass) {
        eprintln!("FAIL {} [{}] {} = {:.3e} not in [{:e}, {:e}]", r.check, r.family, r.measure, r.value, r.lo, r.hi);
    }
    if rep.failed > 0 {
        return Err(AppError::Verify { failed: rep.failed });
    }
    Ok(())
}

pub fn cmd_report(args: &ReportArgs) -> AppResult<()> {
    let s = run::report(&args.dir, args.out.as_deref())?;
    println!("L0={:.12e} p={:.12e} alpha={:.12e} final={}", s.l0, s.p, s.alpha, s.final_snapshot.display());
    Ok(())
}

pub fn cmd_make_curve(args: &MakeCurveArgs) -> AppResult<()> {
    let spec = args.curve.apply(&CurveSpec::default())?;
    let c = spec.build(args.n, args.seed)?;
    match &args.out {
        Some(p) => io::write_curve(p, &c),
        None => {
            print!("{}", io::curve_to_json(&c));
            Ok(())
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let r = match &cli.command {
        Command::Flow(a) => cmd_flow(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Report(a) => cmd_report(a),
        Command::MakeCurve(a) => cmd_make_curve(a),
    };
    match r {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

