use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use jmatrix::{emit_outputs, run_sweep, verify, FigurePreset, SweepConfig, SweepMethod};
use jmatrix_core::{CouplingConstants, PotentialClass, PotentialSpec, RelativisticParams};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassArg {
    Laguerre,
    Gaussian,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Numeric,
}

/// S-wave phase shifts of relativistic separable potentials by the J-matrix method.
///
/// Without --preset the run starts from the fig1a parameters; every flag
/// given explicitly overrides the starting values.
#[derive(Debug, Parser)]
#[command(name = "jmatrix", version)]
struct Cli {
    /// fig1a..fig2d, or `all`
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, value_enum)]
    class: Option<ClassArg>,
    #[arg(long)]
    nu: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Small-component strength C
    #[arg(long, conflicts_with = "cc_ratio")]
    cc: Option<f64>,
    /// C = alpha / ratio
    #[arg(long)]
    cc_ratio: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    vplus: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    vminus: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    vzero: Option<f64>,
    /// Lowest nonrelativistic energy (hartree)
    #[arg(long)]
    emin: Option<f64>,
    /// Highest nonrelativistic energy (hartree)
    #[arg(long)]
    emax: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    log_grid: bool,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Inner box size of the numeric route (default nu + 10)
    #[arg(long)]
    n_basis: Option<usize>,
    /// Also compute the nonrelativistic column (always on for presets)
    #[arg(long)]
    nonrel: bool,
    /// Cross-check analytic and numeric routes (nu <= 2)
    #[arg(long)]
    verify: bool,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Skip the plot script
    #[arg(long)]
    no_plot: bool,
}

const EXIT_VERIFY: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

fn build(cli: &Cli, preset: Option<FigurePreset>) -> Result<SweepConfig, String> {
    let base = preset.unwrap_or(FigurePreset::Fig1a).config();
    let class = match cli.class {
        Some(ClassArg::Laguerre) => PotentialClass::Laguerre,
        Some(ClassArg::Gaussian) => PotentialClass::Gaussian,
        None => base.spec.class,
    };
    let alpha = cli.alpha.unwrap_or(base.params.alpha);
    let cc = match (cli.cc, cli.cc_ratio) {
        (Some(cc), _) => cc,
        (None, Some(r)) => alpha / r,
        // keep the preset's ratio when only alpha changes
        (None, None) => alpha * base.params.cc / base.params.alpha,
    };
    let lambda = cli.lambda.unwrap_or(base.params.lambda);
    let params = RelativisticParams::new(alpha, cc, lambda, 0).map_err(|e| e.to_string())?;
    let couplings = CouplingConstants::new(
        cli.vplus.unwrap_or(base.couplings.v_plus),
        cli.vminus.unwrap_or(base.couplings.v_minus),
        cli.vzero.unwrap_or(base.couplings.v_zero),
    )
    .map_err(|e| e.to_string())?;
    let mut config = SweepConfig::new(
        PotentialSpec::new(class, cli.nu.unwrap_or(base.spec.nu)),
        params,
        couplings,
    );
    config.e_min = cli.emin.unwrap_or(base.e_min);
    config.e_max = cli.emax.unwrap_or(base.e_max);
    config.n_points = cli.points.unwrap_or(base.n_points);
    config.log_grid = cli.log_grid;
    config.method = match cli.method {
        MethodArg::Auto => SweepMethod::AnalyticAuto,
        MethodArg::Numeric => SweepMethod::NumericOnly,
    };
    config.n_basis = cli.n_basis;
    config.emit_nonrel = preset.is_some() || cli.nonrel;
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

fn run_one(cli: &Cli, preset: Option<FigurePreset>) -> Result<(), u8> {
    let stem = preset.map_or("custom", FigurePreset::id);
    let config = build(cli, preset).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_CONFIG
    })?;
    let table = run_sweep(&config).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_CONFIG
    })?;
    for n in &table.notices {
        eprintln!("{stem}: note: {n}");
    }
    let files = emit_outputs(&table, &cli.out, stem, !cli.no_plot).map_err(|e| {
        eprintln!("error: cannot write to {}: {e}", cli.out.display());
        EXIT_CONFIG
    })?;
    println!("{stem}: wrote {}", files.csv.display());
    if let Some(p) = &files.plot {
        println!("{stem}: wrote {}", p.display());
    }
    if table.all_failed() {
        eprintln!("{stem}: error: every grid point failed");
        return Err(EXIT_NUMERIC);
    }
    if cli.verify {
        match verify(&config).map_err(|_| EXIT_CONFIG)? {
            None => eprintln!("{stem}: verify skipped: no closed form for nu = {}", config.spec.nu),
            Some(report) => {
                println!(
                    "{stem}: verify max |tau_analytic - tau_numeric| = {:.3e} over {} points ({} skipped)",
                    report.max_deviation, report.compared, report.skipped
                );
                if !report.passed() {
                    eprintln!("{stem}: verify FAILED");
                    return Err(EXIT_VERIFY);
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let presets: Vec<Option<FigurePreset>> = match cli.preset.as_deref() {
        None => vec![None],
        Some("all") => FigurePreset::all().into_iter().map(Some).collect(),
        Some(id) => match id.parse() {
            Ok(p) => vec![Some(p)],
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_CONFIG);
            }
        },
    };
    let mut status = 0u8;
    for p in presets {
        if let Err(code) = run_one(&cli, p) {
            if code == EXIT_CONFIG {
                return ExitCode::from(code);
            }
            status = status.max(code);
        }
    }
    ExitCode::from(status)
}
