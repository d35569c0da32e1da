//! `heavytail`: peaks-over-threshold tail inference from the command line.
//!
//! Subcommands: `fit` (one threshold level), `trajectory` (estimates over a
//! threshold grid), `simulate` (Monte Carlo estimator comparison on a
//! reference model) and `dist` (distribution utilities). CSV in, CSV out,
//! optional self-contained SVG charts.
//!
//! Exit codes: 0 success, 2 usage or parse errors, 3 numeric or estimation
//! failures. `HEAVYTAIL_THREADS` caps the simulation worker count.

mod csv_io;
mod model_spec;
mod svg;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use heavytail::estimators::{fit_epd, fit_gpd_mle, hill};
use heavytail::simulation::{resolve_rho, run_monte_carlo, run_trajectory, McConfig, RhoMode};
use heavytail::tail::ci_gamma;
use heavytail::{EstimatorKind, McSummary, Sample, SortedSample, TrajectoryTable};

use csv_io::{cell, opt_cell, push_row, read_positive_column};
use model_spec::{parse_dist, parse_k_grid, parse_model, DistSpec};

#[derive(Debug)]
enum CliError {
    /// Bad input, flags or file contents -> exit 2.
    Usage(String),
    /// Estimation or numeric failure -> exit 3.
    Numeric(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) => f.write_str(m),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<heavytail::Error> for CliError {
    fn from(e: heavytail::Error) -> Self {
        use heavytail::Error::*;
        match e {
            InvalidParam { .. } | Domain(_) | Argument(_) | UnsupportedModel(_) => {
                CliError::Usage(e.to_string())
            }
            DegenerateSample(_) | SingularSystem(_) | EstimationFailed(_) | Convergence(_) => {
                CliError::Numeric(e.to_string())
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "heavytail",
    version,
    about = "Second-order refined peaks-over-threshold tail inference"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the tail at one threshold level and print the estimates
    Fit(FitArgs),
    /// Estimate trajectories over a threshold grid, with tail probabilities at a query level
    Trajectory(TrajectoryArgs),
    /// Monte Carlo comparison of the Hill, GPD and EPD estimators
    Simulate(SimulateArgs),
    /// Evaluate or sample a distribution
    Dist(DistArgs),
}

#[derive(Args)]
struct RhoArgs {
    /// Fixed (negative) second-order parameter rho
    #[arg(long, allow_negative_numbers = true, conflicts_with = "estimate_rho")]
    rho: Option<f64>,
    /// Estimate rho from the data (the default)
    #[arg(long)]
    estimate_rho: bool,
    /// Tuning exponent of the rho estimator: 0, 0.5 or 1
    #[arg(long, default_value_t = 0.0)]
    tuning: f64,
}

impl RhoArgs {
    fn mode(&self) -> RhoMode {
        match self.rho {
            Some(v) => RhoMode::Fixed(v),
            None => RhoMode::Estimated {
                k_rho: None,
                tuning: self.tuning,
            },
        }
    }
}

#[derive(Args)]
struct FitArgs {
    /// Input CSV of positive values (single headerless column unless --column)
    #[arg(long)]
    input: PathBuf,
    /// Number of upper order statistics
    #[arg(long)]
    k: usize,
    /// Column name for headered input files
    #[arg(long)]
    column: Option<String>,
    #[command(flatten)]
    rho: RhoArgs,
    /// Confidence level is 1 - alpha
    #[arg(long, default_value_t = 0.10)]
    alpha: f64,
}

#[derive(Args)]
struct TrajectoryArgs {
    #[arg(long)]
    input: PathBuf,
    /// Threshold grid as start:stop:step
    #[arg(long)]
    k_grid: String,
    /// Query level for the tail probability estimates
    #[arg(long)]
    x_star: f64,
    #[arg(long)]
    column: Option<String>,
    #[command(flatten)]
    rho: RhoArgs,
    #[arg(long, default_value_t = 0.10)]
    alpha: f64,
    /// Write the table here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write an SVG chart next to --output
    #[arg(long)]
    svg: bool,
}

#[derive(Args)]
struct SimulateArgs {
    /// Reference model, e.g. frechet:1, student-t:4, pareto-mixture:2,2,
    /// burr:0.3,-1,1, gpd:0.5,1, loggamma:4,2
    #[arg(long)]
    model: String,
    /// Sample size per replication
    #[arg(long)]
    n: usize,
    /// Number of replications
    #[arg(long, default_value_t = 2000)]
    reps: usize,
    /// Threshold grid as start:stop:step
    #[arg(long)]
    k_grid: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Comma-separated subset of hill,gpd,epd
    #[arg(long, default_value = "hill,gpd,epd")]
    estimators: String,
    #[command(flatten)]
    rho: RhoArgs,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write an SVG with variance/bias/MSE panels next to --output
    #[arg(long)]
    svg: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum DistOp {
    Cdf,
    Sf,
    Pdf,
    Quantile,
    Sample,
}

#[derive(Args)]
struct DistArgs {
    /// Distribution: epd:gamma,delta,tau or a reference model spec
    #[arg(long)]
    dist: String,
    #[arg(long, value_enum)]
    op: DistOp,
    /// Argument of cdf/sf/pdf (a level) or quantile (a probability)
    #[arg(allow_negative_numbers = true)]
    value: Option<f64>,
    /// Number of draws for --op sample
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_thread_pool();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

#[cfg(feature = "parallel")]
fn init_thread_pool() {
    if let Ok(raw) = std::env::var("HEAVYTAIL_THREADS") {
        if let Ok(threads) = raw.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn init_thread_pool() {}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fit(args) => cmd_fit(args),
        Command::Trajectory(args) => cmd_trajectory(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Dist(args) => cmd_dist(args),
    }
}

fn cmd_fit(args: FitArgs) -> Result<(), CliError> {
    let values = read_positive_column(&args.input, args.column.as_deref())?;
    let sorted = SortedSample::new(values).map_err(CliError::from)?;
    let n = sorted.n();
    let rho = resolve_rho(&sorted, &args.rho.mode())?;
    let h = hill(&sorted, args.k)?;
    let epd = fit_epd(&sorted, args.k, rho)?;
    let gpd = fit_gpd_mle(&sorted, args.k)?;
    let (ci_lo, ci_hi) = ci_gamma(epd.gamma_hat, rho, args.k, args.alpha)?;

    let mut out = String::new();
    push_row(
        &mut out,
        &"k,n,threshold,gamma_hill,gamma_gpd,gamma_epd,delta_epd,rho_hat,gamma_ci_lo,gamma_ci_hi"
            .split(',')
            .map(String::from)
            .collect::<Vec<_>>(),
    );
    push_row(
        &mut out,
        &[
            args.k.to_string(),
            n.to_string(),
            cell(epd.threshold),
            cell(h),
            cell(gpd.gamma_hat),
            cell(epd.gamma_hat),
            cell(epd.delta_hat),
            cell(rho),
            cell(ci_lo),
            cell(ci_hi),
        ],
    );
    print!("{out}");
    Ok(())
}

const TRAJECTORY_HEADER: &str = "k,threshold,gamma_hill,gamma_gpd,gamma_epd,delta_epd,rho_hat,\
gamma_ci_lo,gamma_ci_hi,p_weissman,p_gpd,p_epd,p_ci_lo,p_ci_hi";

fn trajectory_csv(table: &TrajectoryTable) -> String {
    let mut out = String::new();
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for row in &table.rows {
        push_row(
            &mut out,
            &[
                row.k.to_string(),
                cell(row.threshold),
                opt_cell(row.gamma_hill),
                opt_cell(row.gamma_gpd),
                opt_cell(row.gamma_epd),
                opt_cell(row.delta_epd),
                cell(row.rho_hat),
                opt_cell(row.gamma_ci.map(|c| c.0)),
                opt_cell(row.gamma_ci.map(|c| c.1)),
                opt_cell(row.p_weissman),
                opt_cell(row.p_gpd),
                opt_cell(row.p_epd),
                opt_cell(row.p_ci.map(|c| c.0)),
                opt_cell(row.p_ci.map(|c| c.1)),
            ],
        );
    }
    out
}

fn trajectory_svg(table: &TrajectoryTable) -> String {
    let pick = |get: fn(&heavytail::simulation::TrajectoryRow) -> Option<f64>| -> Vec<(f64, f64)> {
        table
            .rows
            .iter()
            .filter_map(|r| get(r).map(|v| (r.k as f64, v)))
            .collect()
    };
    let panel = svg::Panel {
        title: format!("extreme value index estimates (n = {})", table.n),
        y_label: "gamma".into(),
        series: vec![
            svg::Series {
                label: "hill".into(),
                points: pick(|r| r.gamma_hill),
            },
            svg::Series {
                label: "gpd".into(),
                points: pick(|r| r.gamma_gpd),
            },
            svg::Series {
                label: "epd".into(),
                points: pick(|r| r.gamma_epd),
            },
        ],
    };
    svg::render(&[panel], "k")
}

fn cmd_trajectory(args: TrajectoryArgs) -> Result<(), CliError> {
    let values = read_positive_column(&args.input, args.column.as_deref())?;
    let sample = Sample::new(values).map_err(CliError::from)?;
    let grid = parse_k_grid(&args.k_grid).map_err(CliError::Usage)?;
    let table = run_trajectory(&sample, &grid, args.x_star, &args.rho.mode(), args.alpha)?;
    let csv = trajectory_csv(&table);
    let svg = args.svg.then(|| trajectory_svg(&table));
    emit(csv, svg, args.output.as_deref(), args.svg)
}

const SUMMARY_HEADER: &str = "estimator,k,bias,variance,mse,fail_count,theory_var,theory_bias";

fn summary_csv(summary: &McSummary) -> String {
    let mut out = String::new();
    out.push_str(SUMMARY_HEADER);
    out.push('\n');
    for c in &summary.cells {
        push_row(
            &mut out,
            &[
                c.estimator.name().to_string(),
                c.k.to_string(),
                cell(c.bias),
                cell(c.variance),
                cell(c.mse),
                c.fail_count.to_string(),
                cell(c.theory_var),
                cell(c.theory_bias),
            ],
        );
    }
    out
}

fn summary_svg(summary: &McSummary, estimators: &[EstimatorKind]) -> String {
    let panel = |title: &str, get: fn(&heavytail::simulation::McCell) -> f64| -> svg::Panel {
        svg::Panel {
            title: title.into(),
            y_label: title.into(),
            series: estimators
                .iter()
                .map(|&e| svg::Series {
                    label: e.name().into(),
                    points: summary
                        .cells
                        .iter()
                        .filter(|c| c.estimator == e)
                        .map(|c| (c.k as f64, get(c)))
                        .collect(),
                })
                .collect(),
        }
    };
    let panels = vec![
        panel("variance", |c| c.variance),
        panel("bias", |c| c.bias),
        panel("mse", |c| c.mse),
    ];
    svg::render(&panels, "k")
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let model = parse_model(&args.model).map_err(CliError::Usage)?;
    let k_grid = parse_k_grid(&args.k_grid).map_err(CliError::Usage)?;
    let estimators: Vec<EstimatorKind> = args
        .estimators
        .split(',')
        .map(|tok| match tok.trim() {
            "hill" => Ok(EstimatorKind::Hill),
            "gpd" => Ok(EstimatorKind::Gpd),
            "epd" => Ok(EstimatorKind::Epd),
            other => Err(CliError::Usage(format!(
                "unknown estimator `{other}` (expected hill, gpd, epd)"
            ))),
        })
        .collect::<Result<_, _>>()?;
    let cfg = McConfig {
        model,
        n: args.n,
        reps: args.reps,
        k_grid,
        estimators: estimators.clone(),
        seed: args.seed,
        rho_mode: args.rho.mode(),
    };
    let summary = run_monte_carlo(&cfg)?;
    for c in summary.cells.iter().filter(|c| c.flagged) {
        eprintln!(
            "warning: {}/{} replications failed for {} at k={}",
            c.fail_count,
            args.reps,
            c.estimator.name(),
            c.k
        );
    }
    let csv = summary_csv(&summary);
    let svg = args.svg.then(|| summary_svg(&summary, &estimators));
    emit(csv, svg, args.output.as_deref(), args.svg)
}

fn emit(
    csv: String,
    svg: Option<String>,
    output: Option<&Path>,
    want_svg: bool,
) -> Result<(), CliError> {
    match output {
        None => {
            if want_svg {
                return Err(CliError::Usage("--svg requires --output".into()));
            }
            print!("{csv}");
        }
        Some(path) => {
            std::fs::write(path, csv)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            if let Some(svg_text) = svg {
                let svg_path = path.with_extension("svg");
                std::fs::write(&svg_path, svg_text).map_err(|e| {
                    CliError::Usage(format!("cannot write {}: {e}", svg_path.display()))
                })?;
            }
        }
    }
    Ok(())
}

fn cmd_dist(args: DistArgs) -> Result<(), CliError> {
    let spec = parse_dist(&args.dist).map_err(CliError::Usage)?;
    let need_value = || {
        args.value
            .ok_or_else(|| CliError::Usage("this --op needs a positional VALUE argument".into()))
    };
    match args.op {
        DistOp::Cdf => {
            let v = need_value()?;
            let out = match spec {
                DistSpec::Epd(p) => p.cdf(v),
                DistSpec::Reference(m) => 1.0 - m.survival(v),
            };
            println!("{}", cell(out));
        }
        DistOp::Sf => {
            let v = need_value()?;
            let out = match spec {
                DistSpec::Epd(p) => p.sf(v),
                DistSpec::Reference(m) => m.survival(v),
            };
            println!("{}", cell(out));
        }
        DistOp::Pdf => {
            let v = need_value()?;
            let out = match spec {
                DistSpec::Epd(p) => p.pdf(v)?,
                DistSpec::Reference(_) => {
                    return Err(CliError::Usage(
                        "densities are only provided for the epd distribution".into(),
                    ))
                }
            };
            println!("{}", cell(out));
        }
        DistOp::Quantile => {
            let v = need_value()?;
            let out = match spec {
                DistSpec::Epd(p) => p.quantile(v)?,
                DistSpec::Reference(m) => m.quantile(v)?,
            };
            println!("{}", cell(out));
        }
        DistOp::Sample => {
            let n = args
                .n
                .ok_or_else(|| CliError::Usage("--op sample needs --n".into()))?;
            let sample = match spec {
                DistSpec::Epd(p) => p.sample(args.seed, n),
                DistSpec::Reference(m) => m.sample(args.seed, n),
            };
            let mut out = String::with_capacity(n * 24);
            for &v in sample.values() {
                out.push_str(&cell(v));
                out.push('\n');
            }
            print!("{out}");
        }
    }
    Ok(())
}
