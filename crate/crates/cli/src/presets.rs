//! Named presets regenerating the standard datasets: gap surfaces, gap
//! traces, schedule comparisons, the fidelity surface, the round trip,
//! and the 2D grid run.

use anyhow::{bail, Result};
use spinsweep_core::ScheduleKind;

use crate::config::{ExperimentConfig, Mode, ModelKind, SweepSpec};

pub const PRESET_NAMES: [&str; 8] = [
    "fig1b", "fig2a", "fig2b", "fig3a", "fig3b", "fig4", "fig5", "fig6",
];

fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn energy_trace_columns() -> Vec<String> {
    let mut c = vec!["s".to_string(), "lambda".to_string()];
    c.extend((0..6).map(|i| format!("e{i}")));
    c.extend(cols(&["f_ghz", "f_p", "f_subspace", "norm_error"]));
    c
}

fn blank() -> ExperimentConfig {
    ExperimentConfig {
        preset: None,
        mode: Mode::Spectrum,
        model: ModelKind::Xy,
        sizes: Vec::new(),
        rows: 0,
        cols: 0,
        gamma: None,
        lambda: None,
        schedule: None,
        s_axis: None,
        total_time: None,
        num_steps: None,
        samples: None,
        k: 0,
        columns: Vec::new(),
    }
}

/// Expand a preset name into its fully resolved configuration.
pub fn preset(name: &str) -> Result<ExperimentConfig> {
    let config = match name {
        // gap surface over (gamma, lambda) at N = 12
        "fig1b" => ExperimentConfig {
            preset: Some(name.into()),
            sizes: vec![12],
            gamma: Some(SweepSpec::Sweep {
                start: 0.0,
                stop: 1.0,
                count: 41,
            }),
            lambda: Some(SweepSpec::Sweep {
                start: 0.0,
                stop: 2.0,
                count: 41,
            }),
            k: 2,
            columns: cols(&["gamma", "lambda", "delta01", "delta01_per_n"]),
            ..blank()
        },
        // gaps vs s at gamma = 1 for N = 8, 10, 12 under the linear schedule
        "fig2a" => ExperimentConfig {
            preset: Some(name.into()),
            sizes: vec![8, 10, 12],
            gamma: Some(SweepSpec::Fixed(1.0)),
            schedule: Some(ScheduleKind::Linear),
            s_axis: Some(SweepSpec::Sweep {
                start: 0.0,
                stop: 1.0,
                count: 201,
            }),
            k: 3,
            columns: cols(&["s", "n", "delta01", "delta12"]),
            ..blank()
        },
        // gaps vs gamma at lambda = 0.1 for N = 8, 10, 12
        "fig2b" => ExperimentConfig {
            preset: Some(name.into()),
            sizes: vec![8, 10, 12],
            gamma: Some(SweepSpec::Sweep {
                start: 0.0,
                stop: 1.0,
                count: 101,
            }),
            lambda: Some(SweepSpec::Fixed(0.1)),
            k: 3,
            columns: cols(&["gamma", "n", "delta01", "delta12"]),
            ..blank()
        },
        // spectrum + fidelity trace, N = 12, gamma = 0.75, T = 20
        "fig3a" | "fig3b" => ExperimentConfig {
            preset: Some(name.into()),
            mode: Mode::Evolve,
            sizes: vec![12],
            gamma: Some(SweepSpec::Fixed(0.75)),
            schedule: Some(if name == "fig3a" {
                ScheduleKind::Linear
            } else {
                ScheduleKind::Square
            }),
            total_time: Some(20.0),
            num_steps: Some(4000),
            samples: Some(201),
            k: 6,
            columns: energy_trace_columns(),
            ..blank()
        },
        // fidelity surface over (s, gamma), N = 10, T = 20, square schedule
        "fig4" => ExperimentConfig {
            preset: Some(name.into()),
            mode: Mode::Surface,
            sizes: vec![10],
            gamma: Some(SweepSpec::Sweep {
                start: 0.0,
                stop: 1.0,
                count: 21,
            }),
            schedule: Some(ScheduleKind::Square),
            total_time: Some(20.0),
            num_steps: Some(4000),
            samples: Some(201),
            k: 0,
            columns: cols(&["gamma", "s", "lambda", "f_ghz"]),
            ..blank()
        },
        // round trip, gamma = 0.8, N = 10, T = 200
        "fig5" => ExperimentConfig {
            preset: Some(name.into()),
            mode: Mode::Evolve,
            sizes: vec![10],
            gamma: Some(SweepSpec::Fixed(0.8)),
            schedule: Some(ScheduleKind::Roundtrip),
            total_time: Some(200.0),
            num_steps: Some(40_000),
            samples: Some(201),
            k: 0,
            columns: cols(&["s", "lambda", "f_ghz", "f_p", "f_subspace", "norm_error"]),
            ..blank()
        },
        // 3x3 grid, linear schedule: spectrum + 2D cat-state fidelity
        "fig6" => ExperimentConfig {
            preset: Some(name.into()),
            mode: Mode::Evolve,
            model: ModelKind::Ising2d,
            rows: 3,
            cols: 3,
            schedule: Some(ScheduleKind::Linear),
            total_time: Some(100.0),
            num_steps: Some(20_000),
            samples: Some(201),
            k: 6,
            columns: energy_trace_columns(),
            ..blank()
        },
        other => bail!(
            "unknown preset '{other}' (expected one of {})",
            PRESET_NAMES.join(", ")
        ),
    };
    config.resolve()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_resolve() {
        for name in PRESET_NAMES {
            let config = preset(name).unwrap();
            assert_eq!(config.preset.as_deref(), Some(name));
            config.validate().unwrap();
        }
        assert!(preset("fig99").is_err());
    }

    #[test]
    fn preset_expansion_is_pure() {
        for name in PRESET_NAMES {
            assert_eq!(preset(name).unwrap(), preset(name).unwrap());
        }
    }

    #[test]
    fn figure_parameters() {
        let fig4 = preset("fig4").unwrap();
        assert_eq!(fig4.sizes, vec![10]);
        assert_eq!(fig4.schedule, Some(ScheduleKind::Square));
        assert_eq!(fig4.total_time, Some(20.0));

        let fig5 = preset("fig5").unwrap();
        assert_eq!(fig5.total_time, Some(200.0));
        assert_eq!(fig5.gamma, Some(SweepSpec::Fixed(0.8)));
        assert_eq!(fig5.schedule, Some(ScheduleKind::Roundtrip));

        let fig6 = preset("fig6").unwrap();
        assert_eq!(fig6.model, ModelKind::Ising2d);
        assert_eq!((fig6.rows, fig6.cols), (3, 3));

        let fig1b = preset("fig1b").unwrap();
        assert_eq!(fig1b.gamma.unwrap().count(), 41);
        assert_eq!(fig1b.lambda.unwrap().count(), 41);
        assert_eq!(fig1b.columns, ["gamma", "lambda", "delta01", "delta01_per_n"]);

        let fig2a = preset("fig2a").unwrap();
        assert_eq!(fig2a.sizes, vec![8, 10, 12]);
        assert_eq!(fig2a.columns, ["s", "n", "delta01", "delta12"]);
    }
}
