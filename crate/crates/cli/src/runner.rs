//! Experiment execution: expand a config into parameter points, compute
//! rows (in parallel where points are independent), and write CSV.
//!
//! Determinism contract: data rows depend only on the config. Parallel
//! maps are indexed so assembly order is independent of scheduling, and
//! the eigensolver uses a fixed seed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use rayon::prelude::*;
use spinsweep_core::{
    build_ising_grid, build_xy_chain, evolve, lowest_eigenvalues, make_paramagnetic,
    split_driver_problem, EvolutionParams, GridParams, Hamiltonian, ModelParams, Schedule,
    SlicePoint, SpectrumSlice, TraceSample, XyParams,
};

use crate::config::{ExperimentConfig, Mode, ModelKind};

/// One CSV cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Float(x) => {
                if x.is_infinite() {
                    write!(f, "{}", if x > 0.0 { "inf" } else { "-inf" })
                } else {
                    // 17 significant digits: enough to reproduce any f64
                    write!(f, "{x:.16e}")
                }
            }
        }
    }
}

pub type Row = Vec<Value>;

/// Run inside a rayon pool sized by `jobs` (default: available cores).
fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().context("building worker pool")?;
    Ok(pool.install(f))
}

/// Compute the data rows for a config.
pub fn compute_rows(config: &ExperimentConfig, jobs: Option<usize>) -> Result<Vec<Row>> {
    config.validate()?;
    with_pool(jobs, || match config.mode {
        Mode::Spectrum => spectrum_rows(config),
        Mode::Evolve => trace_rows(config),
        Mode::Surface => surface_rows(config),
    })?
}

fn model_params(config: &ExperimentConfig, n: usize, gamma: f64, lambda: f64) -> ModelParams {
    match config.model {
        ModelKind::Xy => ModelParams::Xy(XyParams::new(n, gamma, lambda)),
        ModelKind::Ising2d => ModelParams::Grid(GridParams::new(config.rows, config.cols, lambda)),
    }
}

fn build_at(config: &ExperimentConfig, n: usize, gamma: f64, lambda: f64) -> Result<Hamiltonian> {
    Ok(match config.model {
        ModelKind::Xy => build_xy_chain(&XyParams::new(n, gamma, lambda))?,
        ModelKind::Ising2d => {
            build_ising_grid(&GridParams::new(config.rows, config.cols, lambda))?
        }
    })
}

fn spectrum_rows(config: &ExperimentConfig) -> Result<Vec<Row>> {
    let sizes: Vec<usize> = match config.model {
        ModelKind::Xy => config.sizes.clone(),
        ModelKind::Ising2d => vec![config.rows * config.cols],
    };
    let gammas: Vec<Option<f64>> = match &config.gamma {
        Some(g) => g.values().into_iter().map(Some).collect(),
        None => vec![None],
    };

    let mut points = Vec::new();
    for &n in &sizes {
        for &gamma in &gammas {
            if let Some(axis) = &config.lambda {
                for lambda in axis.values() {
                    points.push(SlicePoint {
                        n_sites: n,
                        gamma,
                        lambda: Some(lambda),
                        s: None,
                        schedule: None,
                    });
                }
            } else {
                let schedule = Schedule::new(config.schedule.unwrap());
                for s in config.s_axis.as_ref().unwrap().values() {
                    points.push(SlicePoint {
                        n_sites: n,
                        gamma,
                        lambda: Some(schedule.lambda(s)?),
                        s: Some(s),
                        schedule: config.schedule,
                    });
                }
            }
        }
    }

    points
        .par_iter()
        .map(|pt| -> Result<Row> {
            let gamma = pt.gamma.unwrap_or(0.0);
            let eigenvalues = match pt.s {
                None => {
                    let h = build_at(config, pt.n_sites, gamma, pt.lambda.unwrap())?;
                    lowest_eigenvalues(&h, config.k)?
                }
                Some(s) => {
                    let schedule = Schedule::new(config.schedule.unwrap());
                    let (f, g) = schedule.coefficients(s)?;
                    let model = model_params(config, pt.n_sites, gamma, 0.0);
                    let (h0, hp) = split_driver_problem(&model)?;
                    let h = Hamiltonian::linear_combination(f, &h0, g, &hp)?;
                    lowest_eigenvalues(&h, config.k)?
                }
            };
            let slice = SpectrumSlice::new(*pt, eigenvalues);
            config
                .columns
                .iter()
                .map(|col| spectrum_value(col, &slice))
                .collect()
        })
        .collect()
}

fn spectrum_value(col: &str, slice: &SpectrumSlice) -> Result<Value> {
    let pt = slice.params();
    let delta01 = || slice.delta01().ok_or_else(|| anyhow!("delta01 needs k >= 2"));
    Ok(match col {
        "gamma" => Value::Float(pt.gamma.ok_or_else(|| anyhow!("no gamma"))?),
        "lambda" => Value::Float(pt.lambda.ok_or_else(|| anyhow!("no lambda"))?),
        "s" => Value::Float(pt.s.ok_or_else(|| anyhow!("no s"))?),
        "n" => Value::Int(pt.n_sites as i64),
        "delta01" => Value::Float(delta01()?),
        "delta12" => Value::Float(
            slice
                .delta12()
                .ok_or_else(|| anyhow!("delta12 needs k >= 3"))?,
        ),
        "delta01_per_n" => Value::Float(delta01()? / pt.n_sites as f64),
        other => {
            let i = other
                .strip_prefix('e')
                .and_then(|x| x.parse::<usize>().ok())
                .ok_or_else(|| anyhow!("unknown column '{other}'"))?;
            Value::Float(slice.eigenvalues()[i])
        }
    })
}

fn run_trace(
    config: &ExperimentConfig,
    n: usize,
    gamma: Option<f64>,
) -> Result<(Vec<TraceSample>, Vec<Vec<f64>>)> {
    let model = model_params(config, n, gamma.unwrap_or(0.0), 0.0);
    let (h0, hp) = split_driver_problem(&model)?;
    let schedule = Schedule::new(config.schedule.unwrap());
    let params = EvolutionParams::new(config.total_time.unwrap())
        .with_num_steps(config.num_steps.unwrap())
        .with_sample_count(config.samples.unwrap());
    let psi0 = make_paramagnetic(model.n_sites())?;
    let trace = evolve(&h0, &hp, schedule, &params, &psi0)?;

    // instantaneous spectra at the sample points are independent of the
    // trajectory; compute them in parallel rather than inside the stepper
    let energies: Vec<Vec<f64>> = if config.k > 0 {
        trace
            .samples
            .par_iter()
            .map(|smp| -> Result<Vec<f64>> {
                let (f, g) = schedule.coefficients(smp.s)?;
                let h = Hamiltonian::linear_combination(f, &h0, g, &hp)?;
                Ok(lowest_eigenvalues(&h, config.k)?)
            })
            .collect::<Result<_>>()?
    } else {
        vec![Vec::new(); trace.samples.len()]
    };
    Ok((trace.samples, energies))
}

fn trace_value(
    col: &str,
    gamma: Option<f64>,
    sample: &TraceSample,
    energies: &[f64],
) -> Result<Value> {
    Ok(match col {
        "gamma" => Value::Float(gamma.ok_or_else(|| anyhow!("no gamma"))?),
        "s" => Value::Float(sample.s),
        "lambda" => Value::Float(sample.lambda),
        "f_ghz" => Value::Float(sample.f_ghz),
        "f_p" => Value::Float(sample.f_p),
        "f_subspace" => Value::Float(sample.f_subspace),
        "energy" => Value::Float(sample.energy),
        "norm_error" => Value::Float(sample.norm_error),
        other => {
            let i = other
                .strip_prefix('e')
                .and_then(|x| x.parse::<usize>().ok())
                .ok_or_else(|| anyhow!("unknown column '{other}'"))?;
            Value::Float(energies[i])
        }
    })
}

fn trace_rows(config: &ExperimentConfig) -> Result<Vec<Row>> {
    let n = match config.model {
        ModelKind::Xy => config.sizes[0],
        ModelKind::Ising2d => config.rows * config.cols,
    };
    let gamma = config.gamma.map(|g| g.values()[0]);
    let (samples, energies) = run_trace(config, n, gamma)?;
    samples
        .iter()
        .zip(&energies)
        .map(|(smp, e)| {
            config
                .columns
                .iter()
                .map(|col| trace_value(col, gamma, smp, e))
                .collect()
        })
        .collect()
}

fn surface_rows(config: &ExperimentConfig) -> Result<Vec<Row>> {
    let n = config.sizes[0];
    let gammas = config
        .gamma
        .as_ref()
        .ok_or_else(|| anyhow!("surface needs gamma"))?
        .values();
    let traces: Vec<(Vec<TraceSample>, Vec<Vec<f64>>)> = gammas
        .par_iter()
        .map(|&g| run_trace(config, n, Some(g)))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (gamma, (samples, energies)) in gammas.iter().zip(&traces) {
        for (smp, e) in samples.iter().zip(energies) {
            rows.push(
                config
                    .columns
                    .iter()
                    .map(|col| trace_value(col, Some(*gamma), smp, e))
                    .collect::<Result<Row>>()?,
            );
        }
    }
    Ok(rows)
}

/// Write the header block, column names, and rows.
pub fn write_csv(
    config: &ExperimentConfig,
    rows: &[Row],
    out: &mut impl Write,
) -> std::io::Result<()> {
    writeln!(out, "# spinsweep {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(out, "# generated = {}", chrono::Utc::now().to_rfc3339())?;
    for line in config.header_lines() {
        writeln!(out, "# {line}")?;
    }
    writeln!(out, "{}", config.columns.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

/// Run one experiment and write its dataset; returns the files written
/// (one CSV per trace or surface).
pub fn run_experiment(
    config: &ExperimentConfig,
    path: &Path,
    jobs: Option<usize>,
) -> Result<Vec<PathBuf>> {
    let rows = compute_rows(config, jobs)?;
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .with_context(|| format!("creating {}", parent.display()))?;
        }
    }
    let mut file = std::io::BufWriter::new(
        fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
    );
    write_csv(config, &rows, &mut file)?;
    file.flush()?;
    Ok(vec![path.to_path_buf()])
}

/// Extract the data rows of a written CSV (everything after the column
/// header line), used by the determinism and round-trip tests.
pub fn data_rows(csv_text: &str) -> Vec<String> {
    csv_text
        .lines()
        .skip_while(|l| l.starts_with('#'))
        .skip(1)
        .map(|l| l.to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SweepSpec;

    fn tiny_sweep() -> ExperimentConfig {
        ExperimentConfig {
            preset: None,
            mode: Mode::Spectrum,
            model: ModelKind::Xy,
            sizes: vec![4, 5],
            rows: 0,
            cols: 0,
            gamma: Some(SweepSpec::Fixed(1.0)),
            lambda: Some(SweepSpec::Sweep {
                start: 0.0,
                stop: 2.0,
                count: 3,
            }),
            schedule: None,
            s_axis: None,
            total_time: None,
            num_steps: None,
            samples: None,
            k: 3,
            columns: vec![],
        }
        .resolve()
        .unwrap()
    }

    #[test]
    fn float_formatting() {
        assert_eq!(Value::Float(f64::INFINITY).to_string(), "inf");
        assert_eq!(Value::Int(12).to_string(), "12");
        let s = Value::Float(0.1).to_string();
        assert_eq!(s.parse::<f64>().unwrap(), 0.1);
        assert_eq!(s, "1.0000000000000001e-1");
    }

    #[test]
    fn spectrum_rows_shape_and_values() {
        let config = tiny_sweep();
        let rows = compute_rows(&config, Some(2)).unwrap();
        assert_eq!(rows.len(), 2 * 3);
        // first row: n=4, lambda=0, Ising ring: E0 = E1 = -4, E2 = 0
        let cols = &config.columns;
        let idx = |name: &str| cols.iter().position(|c| c == name).unwrap();
        let first = &rows[0];
        assert_eq!(first[idx("n")], Value::Int(4));
        match first[idx("delta01")] {
            Value::Float(d) => assert!(d.abs() < 1e-9),
            _ => panic!(),
        }
        match first[idx("e0")] {
            Value::Float(e) => assert!((e + 4.0).abs() < 1e-9),
            _ => panic!(),
        }
    }

    #[test]
    fn rows_are_deterministic_across_worker_counts() {
        let config = tiny_sweep();
        let a = compute_rows(&config, Some(1)).unwrap();
        let b = compute_rows(&config, Some(4)).unwrap();
        let to_text = |rows: &[Row]| {
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(to_text(&a), to_text(&b));
    }

    #[test]
    fn evolve_rows_include_expected_columns() {
        let config = ExperimentConfig {
            preset: None,
            mode: Mode::Evolve,
            model: ModelKind::Xy,
            sizes: vec![4],
            rows: 0,
            cols: 0,
            gamma: Some(SweepSpec::Fixed(1.0)),
            lambda: None,
            schedule: Some(spinsweep_core::ScheduleKind::Square),
            s_axis: None,
            total_time: Some(2.0),
            num_steps: Some(400),
            samples: Some(5),
            k: 2,
            columns: vec![],
        }
        .resolve()
        .unwrap();
        let rows = compute_rows(&config, Some(2)).unwrap();
        assert_eq!(rows.len(), 5);
        let idx = |name: &str| config.columns.iter().position(|c| c == name).unwrap();
        // s = 0 row: lambda is inf, F_P = 1
        match rows[0][idx("lambda")] {
            Value::Float(l) => assert!(l.is_infinite()),
            _ => panic!(),
        }
        match rows[0][idx("f_p")] {
            Value::Float(f) => assert!((f - 1.0).abs() < 1e-12),
            _ => panic!(),
        }
        // driver spectrum at s=0
        match rows[0][idx("e0")] {
            Value::Float(e) => assert!((e + 4.0).abs() < 1e-9),
            _ => panic!(),
        }
    }
}
