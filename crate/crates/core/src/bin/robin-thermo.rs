use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};
use serde::Serialize;

use robin_thermo::canonical::{resonance_predictors, ResonancePredictors};
use robin_thermo::grand_canonical::{
    asymptotic_mu_cn, be_critical_asymptotic, fd_plateau, fd_single_peak, EnsembleSpec, FdPeak,
    GcAsymptotics, Statistics,
};
use robin_thermo::selftest::run_selftest;
use robin_thermo::spectrum::{Spectrum, WallKind, WallSpec, N_EXACT_DEFAULT};
use robin_thermo::sweep_io::{self, BetaGrid, Ensemble, Format, Spacing, SweepSpec};
use robin_thermo::{Error, Result};

const REGRESSION_FAILURE: u8 = 4;

#[derive(Parser)]
#[command(name = "robin-thermo", version, about = "Thermodynamics of a particle at a Robin wall in a uniform field")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the lowest levels of a wall.
    Spectrum(SpectrumArgs),
    /// Evaluate thermodynamics on a temperature grid.
    Sweep(SweepArgs),
    /// Reproduce the reference table of heat-capacity peaks.
    Table1(Table1Args),
    /// Evaluate the weak-field asymptotic formulas.
    Predict(PredictArgs),
    /// Run the invariant suite.
    Selftest(OutArgs),
}

#[derive(Args)]
struct WallArgs {
    /// dirichlet, neumann, robin- or robin+
    #[arg(long, default_value = "robin-")]
    wall: String,
    #[arg(long)]
    field: f64,
}

impl WallArgs {
    fn spec(&self) -> Result<WallSpec> {
        WallSpec::new(self.wall.parse::<WallKind>()?, self.field)
    }
}

#[derive(Args)]
struct OutArgs {
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    wall: WallArgs,
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Minimum number of root-solved levels.
    #[arg(long, default_value_t = N_EXACT_DEFAULT)]
    levels: usize,
    #[arg(long, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    wall: WallArgs,
    /// canonical, fd or be
    #[arg(long, default_value = "canonical")]
    ensemble: String,
    #[arg(long, default_value_t = 1)]
    particles: u64,
    #[arg(long, default_value_t = 0.02)]
    beta_inv_min: f64,
    #[arg(long, default_value_t = 100.0)]
    beta_inv_max: f64,
    #[arg(long, default_value_t = 400)]
    points: usize,
    /// Logarithmic spacing in T; pass `--log-grid false` for linear.
    #[arg(long, default_value_t = true, action = ArgAction::Set, num_args = 0..=1, default_missing_value = "true")]
    log_grid: bool,
    /// Read the grid bounds as T / T_cr (bosons only).
    #[arg(long)]
    normalize_tcr: bool,
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Minimum number of root-solved levels.
    #[arg(long, default_value_t = N_EXACT_DEFAULT)]
    levels: usize,
    /// Extremum refinement tolerance in ln T.
    #[arg(long, default_value_t = robin_thermo::canonical::EXTREMUM_TOL)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct Table1Args {
    /// Only cells at this field.
    #[arg(long)]
    field: Option<f64>,
    /// Only cells of this ensemble: canonical, fd or be.
    #[arg(long)]
    ensemble: Option<String>,
    /// Only cells with this particle number.
    #[arg(long)]
    particles: Option<u64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    field: f64,
    #[arg(long, default_value_t = 1)]
    particles: u64,
    /// Also evaluate the high-temperature chemical potential at this β.
    #[arg(long)]
    beta: Option<f64>,
    #[command(flatten)]
    out: OutArgs,
}

fn parse_ensemble(name: &str, particles: u64) -> Result<Ensemble> {
    if name.eq_ignore_ascii_case("canonical") {
        return Ok(Ensemble::Canonical);
    }
    let statistics: Statistics = name.parse()?;
    Ok(Ensemble::Grand(EnsembleSpec::new(statistics, particles)?))
}

fn emit(out: &OutArgs, text: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Spec(format!("writing output: {e}"));
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(io),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(io),
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::Spec(e.to_string()))
}

#[derive(Serialize)]
struct SpectrumDump {
    wall: WallSpec,
    n_exact: usize,
    handoff_error: f64,
    levels: Vec<f64>,
}

fn spectrum_cmd(a: &SpectrumArgs) -> Result<u8> {
    let sp = Spectrum::with_root_solved(a.wall.spec()?, a.count, a.levels)?;
    let levels = sp.levels()[..a.count].to_vec();
    let text = match a.format {
        Format::Json => json(&SpectrumDump {
            wall: sp.wall(),
            n_exact: sp.n_exact(),
            handoff_error: sp.handoff_error(),
            levels,
        })?,
        Format::Csv => {
            let mut s = format!("# wall {} field {}\nn,energy\n", sp.wall().kind, sweep_io::format_number(sp.wall().field));
            for (n, e) in levels.iter().enumerate() {
                s += &format!("{n},{}\n", sweep_io::format_number(*e));
            }
            s
        }
    };
    emit(&a.out, &text)?;
    Ok(0)
}

fn sweep_cmd(a: &SweepArgs) -> Result<u8> {
    let mut spec = SweepSpec::new(a.wall.spec()?, parse_ensemble(&a.ensemble, a.particles)?);
    spec.beta_grid = BetaGrid {
        min: a.beta_inv_min,
        max: a.beta_inv_max,
        points: a.points,
        spacing: if a.log_grid { Spacing::LogInT } else { Spacing::LinearInT },
    };
    spec.normalize_by_tcr = a.normalize_tcr;
    spec.root_solved_levels = a.levels;
    spec.extremum_tol = a.tol;
    let result = sweep_io::run_sweep(&spec)?;
    emit(&a.out, &sweep_io::render(&result, a.format)?)?;
    for e in &result.errors {
        eprintln!("row {} (T = {}): {}", e.index, e.beta_inv, e.message);
    }
    Ok(result.exit_code() as u8)
}

fn table1_cmd(a: &Table1Args) -> Result<u8> {
    let wanted = match &a.ensemble {
        Some(name) => Some(parse_ensemble(name, a.particles.unwrap_or(1))?),
        None => None,
    };
    let report = sweep_io::table1_harness_with(|c| {
        a.field.is_none_or(|f| (c.field / f - 1.0).abs() < 1e-9)
            && match (wanted, a.particles) {
                (Some(Ensemble::Canonical), _) => c.ensemble == Ensemble::Canonical,
                (Some(Ensemble::Grand(w)), Some(_)) => c.ensemble.grand() == Some(w),
                (Some(Ensemble::Grand(w)), None) => {
                    c.ensemble.grand().map(|g| g.statistics) == Some(w.statistics)
                }
                (None, Some(n)) => c.ensemble.grand().map(|g| g.n_particles) == Some(n),
                (None, None) => true,
            }
    })?;
    if report.cells.is_empty() {
        return Err(Error::Spec("no reference cells match the filters".into()));
    }
    emit(&a.out, &report.render())?;
    Ok(if report.passed() { 0 } else { REGRESSION_FAILURE })
}

#[derive(Serialize)]
struct Predictions {
    field: f64,
    particles: u64,
    canonical: ResonancePredictors,
    fermi_single_peak: FdPeak,
    fermi_plateau: f64,
    bose_critical_beta: f64,
    high_t: Option<HighT>,
}

#[derive(Serialize)]
struct HighT {
    beta: f64,
    fermi: GcAsymptotics,
    bose: GcAsymptotics,
}

fn predict_cmd(a: &PredictArgs) -> Result<u8> {
    let high_t = match a.beta {
        Some(beta) => Some(HighT {
            beta,
            fermi: asymptotic_mu_cn(beta, a.field, EnsembleSpec::fermions(a.particles)?)?,
            bose: asymptotic_mu_cn(beta, a.field, EnsembleSpec::bosons(a.particles)?)?,
        }),
        None => None,
    };
    let p = Predictions {
        field: a.field,
        particles: a.particles,
        canonical: resonance_predictors(a.field)?,
        fermi_single_peak: fd_single_peak(a.field)?,
        fermi_plateau: fd_plateau(a.particles)?,
        bose_critical_beta: be_critical_asymptotic(a.field, a.particles)?,
        high_t,
    };
    emit(&a.out, &json(&p)?)?;
    Ok(0)
}

fn selftest_cmd(a: &OutArgs) -> Result<u8> {
    let report = run_selftest();
    emit(a, &report.render())?;
    Ok(if report.passed() { 0 } else { REGRESSION_FAILURE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Spectrum(a) => spectrum_cmd(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Table1(a) => table1_cmd(a),
        Command::Predict(a) => predict_cmd(a),
        Command::Selftest(a) => selftest_cmd(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
