use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use spinsweep_core::ScheduleKind;

use spinsweep_cli::config::{ExperimentConfig, Mode, ModelKind, SweepSpec};
use spinsweep_cli::{presets, runner};

#[derive(Parser)]
#[command(
    name = "spinsweep",
    version,
    about = "Spin-lattice sweep simulator: spectra, schedules, and state evolution as CSV"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lowest eigenvalues at a single parameter point
    Spectrum(SpectrumArgs),
    /// Low-spectrum sweeps over gamma and lambda (or s under a schedule)
    Sweep(SpectrumArgs),
    /// Integrate a trajectory along a schedule; a swept --gamma produces a surface
    Evolve(EvolveArgs),
    /// Regenerate a named dataset (fig1b, fig2a, fig2b, fig3a, fig3b, fig4, fig5, fig6)
    Preset(PresetArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Lattice model: xy | ising2d
    #[arg(long, default_value = "xy")]
    model: String,
    /// XY chain size, or a comma list for one block per size
    #[arg(long)]
    n: Option<String>,
    /// Grid rows (ising2d)
    #[arg(long)]
    rows: Option<usize>,
    /// Grid columns (ising2d)
    #[arg(long)]
    cols: Option<usize>,
    /// Anisotropy: a number, or start:stop:count to sweep (xy only)
    #[arg(long)]
    gamma: Option<String>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Transverse field: a number, or start:stop:count to sweep
    #[arg(long)]
    lambda: Option<String>,
    /// Evaluate H(s) under this schedule instead of at fixed lambda
    #[arg(long)]
    schedule: Option<String>,
    /// Dimensionless time: a number, or start:stop:count (requires --schedule)
    #[arg(long)]
    s: Option<String>,
    /// Number of eigenvalues per point
    #[arg(long, default_value_t = 6)]
    k: usize,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Concurrent parameter points (default: available cores)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Interpolation schedule: linear | square | roundtrip
    #[arg(long)]
    schedule: String,
    /// Total run time
    #[arg(long = "T")]
    total_time: f64,
    /// Integrator steps (default: ceil(200 T))
    #[arg(long)]
    steps: Option<usize>,
    /// Observable samples along s, endpoints included
    #[arg(long, default_value_t = 201)]
    samples: usize,
    /// Instantaneous eigenvalues per sample (0 = none)
    #[arg(long, default_value_t = 0)]
    k: usize,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Concurrent trajectories / spectrum points
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct PresetArgs {
    /// Preset name
    name: String,
    /// Directory for the output CSV
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Concurrent parameter points (default: available cores)
    #[arg(long)]
    jobs: Option<usize>,
}

fn parse_model(args: &ModelArgs) -> Result<(ModelKind, Vec<usize>, usize, usize, Option<SweepSpec>)> {
    let model: ModelKind = args.model.parse()?;
    let sizes = match (&args.n, model) {
        (Some(list), ModelKind::Xy) => list
            .split(',')
            .map(|x| x.trim().parse::<usize>().context("bad --n entry"))
            .collect::<Result<Vec<_>>>()?,
        (None, ModelKind::Xy) => bail!("the xy model needs --n"),
        (Some(_), ModelKind::Ising2d) => bail!("--n does not apply to ising2d"),
        (None, ModelKind::Ising2d) => Vec::new(),
    };
    let (rows, cols) = match model {
        ModelKind::Xy => (0, 0),
        ModelKind::Ising2d => (
            args.rows.context("ising2d needs --rows")?,
            args.cols.context("ising2d needs --cols")?,
        ),
    };
    let gamma = match (&args.gamma, model) {
        (Some(g), ModelKind::Xy) => Some(g.parse::<SweepSpec>()?),
        (None, ModelKind::Xy) => bail!("the xy model needs --gamma"),
        (Some(_), ModelKind::Ising2d) => bail!("--gamma does not apply to ising2d"),
        (None, ModelKind::Ising2d) => None,
    };
    Ok((model, sizes, rows, cols, gamma))
}

fn spectrum_config(args: &SpectrumArgs, single_point: bool) -> Result<ExperimentConfig> {
    let (model, sizes, rows, cols, gamma) = parse_model(&args.model)?;
    let lambda = args.lambda.as_deref().map(str::parse).transpose()?;
    let schedule = args
        .schedule
        .as_deref()
        .map(|s| s.parse::<ScheduleKind>().map_err(anyhow::Error::msg))
        .transpose()?;
    let s_axis = args.s.as_deref().map(str::parse).transpose()?;
    let config = ExperimentConfig {
        preset: None,
        mode: Mode::Spectrum,
        model,
        sizes,
        rows,
        cols,
        gamma,
        lambda,
        schedule,
        s_axis,
        total_time: None,
        num_steps: None,
        samples: None,
        k: args.k,
        columns: Vec::new(),
    }
    .resolve()?;
    if single_point {
        let swept = config.gamma.is_some_and(|g| g.is_sweep())
            || config.lambda.is_some_and(|l| l.is_sweep())
            || config.s_axis.is_some_and(|s| s.is_sweep())
            || config.sizes.len() > 1;
        if swept {
            bail!("`spectrum` takes a single parameter point; use `sweep` for grids");
        }
    }
    Ok(config)
}

fn evolve_config(args: &EvolveArgs) -> Result<ExperimentConfig> {
    let (model, sizes, rows, cols, gamma) = parse_model(&args.model)?;
    if sizes.len() > 1 {
        bail!("evolution runs take a single --n");
    }
    let mode = if matches!(gamma, Some(g) if g.is_sweep()) {
        Mode::Surface
    } else {
        Mode::Evolve
    };
    ExperimentConfig {
        preset: None,
        mode,
        model,
        sizes,
        rows,
        cols,
        gamma,
        lambda: None,
        schedule: Some(
            args.schedule
                .parse::<ScheduleKind>()
                .map_err(anyhow::Error::msg)?,
        ),
        s_axis: None,
        total_time: Some(args.total_time),
        num_steps: args.steps,
        samples: Some(args.samples),
        k: args.k,
        columns: Vec::new(),
    }
    .resolve()
}

fn emit(config: &ExperimentConfig, out: &Option<PathBuf>, jobs: Option<usize>) -> Result<()> {
    match out {
        Some(path) => {
            for written in runner::run_experiment(config, path, jobs)? {
                println!("wrote {}", written.display());
            }
        }
        None => {
            let rows = runner::compute_rows(config, jobs)?;
            let stdout = std::io::stdout();
            runner::write_csv(config, &rows, &mut stdout.lock())?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Spectrum(args) => {
            let config = spectrum_config(&args, true)?;
            emit(&config, &args.out, args.jobs)
        }
        Command::Sweep(args) => {
            let config = spectrum_config(&args, false)?;
            emit(&config, &args.out, args.jobs)
        }
        Command::Evolve(args) => {
            let config = evolve_config(&args)?;
            emit(&config, &args.out, args.jobs)
        }
        Command::Preset(args) => {
            let config = presets::preset(&args.name)?;
            let path = args.out_dir.join(format!("{}.csv", args.name));
            for written in runner::run_experiment(&config, &path, args.jobs)? {
                println!("wrote {}", written.display());
            }
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
