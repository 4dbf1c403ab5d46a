//! Fully-resolved experiment descriptions and their round-trippable
//! key = value header encoding.
//!
//! A config is written into every CSV header; parsing those lines back
//! yields a config that reruns to byte-identical data rows.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use spinsweep_core::{ScheduleKind, MAX_SITES};

/// A fixed value or a uniform inclusive grid `start:stop:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepSpec {
    Fixed(f64),
    Sweep { start: f64, stop: f64, count: usize },
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            SweepSpec::Fixed(x) => vec![x],
            SweepSpec::Sweep { start, stop, count } => (0..count)
                .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
                .collect(),
        }
    }

    pub fn is_sweep(&self) -> bool {
        matches!(self, SweepSpec::Sweep { .. })
    }

    pub fn count(&self) -> usize {
        match self {
            SweepSpec::Fixed(_) => 1,
            SweepSpec::Sweep { count, .. } => *count,
        }
    }
}

impl FromStr for SweepSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some((a, rest)) = s.split_once(':') {
            let (b, c) = rest
                .split_once(':')
                .ok_or_else(|| anyhow!("sweep spec must be start:stop:count, got '{s}'"))?;
            let start: f64 = a.parse().context("bad sweep start")?;
            let stop: f64 = b.parse().context("bad sweep stop")?;
            let count: usize = c.parse().context("bad sweep count")?;
            if count < 2 {
                bail!("sweep count must be at least 2, got {count}");
            }
            if !(start < stop) {
                bail!("sweep needs start < stop, got {start}:{stop}");
            }
            Ok(SweepSpec::Sweep { start, stop, count })
        } else {
            let x: f64 = s.parse().with_context(|| format!("bad number '{s}'"))?;
            Ok(SweepSpec::Fixed(x))
        }
    }
}

impl fmt::Display for SweepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepSpec::Fixed(x) => write!(f, "{x}"),
            SweepSpec::Sweep { start, stop, count } => write!(f, "{start}:{stop}:{count}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Xy,
    Ising2d,
}

impl FromStr for ModelKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xy" => Ok(ModelKind::Xy),
            "ising2d" => Ok(ModelKind::Ising2d),
            other => bail!("unknown model '{other}' (expected xy|ising2d)"),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Xy => "xy",
            ModelKind::Ising2d => "ising2d",
        })
    }
}

/// What kind of dataset the run produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Low eigenvalues over a parameter grid.
    Spectrum,
    /// A single trajectory trace.
    Evolve,
    /// Trajectory traces over a gamma grid.
    Surface,
}

impl FromStr for Mode {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectrum" => Ok(Mode::Spectrum),
            "evolve" => Ok(Mode::Evolve),
            "surface" => Ok(Mode::Surface),
            other => bail!("unknown mode '{other}'"),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Spectrum => "spectrum",
            Mode::Evolve => "evolve",
            Mode::Surface => "surface",
        })
    }
}

/// A fully resolved experiment. Every field that affects the data rows is
/// recorded in (and recoverable from) the CSV header.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub preset: Option<String>,
    pub mode: Mode,
    pub model: ModelKind,
    /// XY chain sizes (one block of rows per entry).
    pub sizes: Vec<usize>,
    /// 2D grid shape; zero for the XY model.
    pub rows: usize,
    pub cols: usize,
    /// Anisotropy; absent for the 2D Ising model.
    pub gamma: Option<SweepSpec>,
    /// Field axis for spectrum runs parameterized by lambda.
    pub lambda: Option<SweepSpec>,
    pub schedule: Option<ScheduleKind>,
    /// Dimensionless-time axis for spectrum runs under a schedule.
    pub s_axis: Option<SweepSpec>,
    pub total_time: Option<f64>,
    pub num_steps: Option<usize>,
    pub samples: Option<usize>,
    /// Number of eigenvalues per point (0 = none in traces).
    pub k: usize,
    pub columns: Vec<String>,
}

impl ExperimentConfig {
    /// Fill defaulted fields (step counts, sample counts, column lists) so
    /// the recorded config is complete.
    pub fn resolve(mut self) -> Result<Self> {
        match self.mode {
            Mode::Spectrum => {
                if self.columns.is_empty() {
                    let mut cols = Vec::new();
                    if self.gamma.is_some() {
                        cols.push("gamma".to_string());
                    }
                    if self.s_axis.is_some() {
                        cols.push("s".to_string());
                    }
                    cols.push("lambda".to_string());
                    if self.sizes.len() > 1 {
                        cols.push("n".to_string());
                    }
                    for i in 0..self.k {
                        cols.push(format!("e{i}"));
                    }
                    if self.k >= 2 {
                        cols.push("delta01".to_string());
                    }
                    if self.k >= 3 {
                        cols.push("delta12".to_string());
                    }
                    if self.k >= 2 {
                        cols.push("delta01_per_n".to_string());
                    }
                    self.columns = cols;
                }
            }
            Mode::Evolve | Mode::Surface => {
                let t = self
                    .total_time
                    .ok_or_else(|| anyhow!("evolution runs need --T"))?;
                if self.num_steps.is_none() {
                    self.num_steps = Some(spinsweep_core::default_num_steps(t));
                }
                if self.samples.is_none() {
                    self.samples = Some(201);
                }
                if self.columns.is_empty() {
                    let mut cols = Vec::new();
                    if self.mode == Mode::Surface {
                        cols.push("gamma".to_string());
                    }
                    cols.push("s".to_string());
                    cols.push("lambda".to_string());
                    for i in 0..self.k {
                        cols.push(format!("e{i}"));
                    }
                    cols.extend(
                        ["f_ghz", "f_p", "f_subspace", "norm_error"]
                            .iter()
                            .map(|s| s.to_string()),
                    );
                    self.columns = cols;
                }
            }
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        match self.model {
            ModelKind::Xy => {
                if self.sizes.is_empty() {
                    bail!("the xy model needs at least one size (--n)");
                }
                for &n in &self.sizes {
                    if n < 3 || n > MAX_SITES {
                        bail!("xy size {n} outside [3, {MAX_SITES}]");
                    }
                }
                if self.gamma.is_none() {
                    bail!("the xy model needs --gamma");
                }
                if self.rows != 0 || self.cols != 0 {
                    bail!("--rows/--cols only apply to ising2d");
                }
            }
            ModelKind::Ising2d => {
                if self.rows < 2 || self.cols < 2 {
                    bail!("ising2d needs --rows and --cols of at least 2");
                }
                if self.rows * self.cols > MAX_SITES {
                    bail!(
                        "{}x{} grid exceeds the {MAX_SITES}-site cap",
                        self.rows,
                        self.cols
                    );
                }
                if self.gamma.is_some() {
                    bail!("--gamma does not apply to ising2d");
                }
                if !self.sizes.is_empty() {
                    bail!("--n does not apply to ising2d");
                }
            }
        }
        match self.mode {
            Mode::Spectrum => {
                if self.k < 1 {
                    bail!("spectrum runs need k >= 1");
                }
                match (&self.lambda, &self.schedule, &self.s_axis) {
                    (Some(_), None, None) => {}
                    (None, Some(_), Some(_)) => {}
                    _ => bail!("spectrum runs take either --lambda or --schedule with --s"),
                }
                if self.total_time.is_some() || self.num_steps.is_some() {
                    bail!("--T/--steps do not apply to spectrum runs");
                }
            }
            Mode::Evolve | Mode::Surface => {
                if self.schedule.is_none() {
                    bail!("evolution runs need --schedule");
                }
                if self.lambda.is_some() || self.s_axis.is_some() {
                    bail!("--lambda/--s do not apply to evolution runs");
                }
                let t = self.total_time.unwrap_or(0.0);
                if !(t > 0.0 && t.is_finite()) {
                    bail!("--T must be positive and finite");
                }
                if self.samples.unwrap_or(0) < 2 {
                    bail!("--samples must be at least 2");
                }
                if self.mode == Mode::Evolve {
                    if self.sizes.len() > 1 {
                        bail!("a single trace takes exactly one --n");
                    }
                    if matches!(self.gamma, Some(g) if g.is_sweep()) {
                        bail!("a single trace takes a fixed --gamma (sweeps are surfaces)");
                    }
                }
                if self.mode == Mode::Surface && !matches!(self.gamma, Some(g) if g.is_sweep()) {
                    bail!("a surface needs a swept --gamma");
                }
            }
        }
        for col in &self.columns {
            self.check_column(col)?;
        }
        Ok(())
    }

    fn check_column(&self, col: &str) -> Result<()> {
        let trace = self.mode != Mode::Spectrum;
        let known = match col {
            "gamma" => self.gamma.is_some(),
            "lambda" => true,
            "s" => trace || self.s_axis.is_some(),
            "n" => !trace,
            "delta01" | "delta01_per_n" => !trace && self.k >= 2,
            "delta12" => !trace && self.k >= 3,
            "f_ghz" | "f_p" | "f_subspace" | "energy" | "norm_error" => trace,
            other => {
                if let Some(i) = other.strip_prefix('e').and_then(|x| x.parse::<usize>().ok()) {
                    i < self.k
                } else {
                    false
                }
            }
        };
        if !known {
            bail!("column '{col}' is not available for this configuration");
        }
        Ok(())
    }

    /// The `key = value` lines recorded in the CSV header.
    pub fn header_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        let mut push = |k: &str, v: String| lines.push(format!("{k} = {v}"));
        if let Some(p) = &self.preset {
            push("preset", p.clone());
        }
        push("mode", self.mode.to_string());
        push("model", self.model.to_string());
        if !self.sizes.is_empty() {
            push(
                "sizes",
                self.sizes
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
        }
        if self.rows != 0 {
            push("rows", self.rows.to_string());
            push("cols", self.cols.to_string());
        }
        if let Some(g) = &self.gamma {
            push("gamma", g.to_string());
        }
        if let Some(l) = &self.lambda {
            push("lambda", l.to_string());
        }
        if let Some(sch) = &self.schedule {
            push("schedule", sch.to_string());
        }
        if let Some(s) = &self.s_axis {
            push("s", s.to_string());
        }
        if let Some(t) = self.total_time {
            push("T", t.to_string());
        }
        if let Some(st) = self.num_steps {
            push("steps", st.to_string());
        }
        if let Some(sm) = self.samples {
            push("samples", sm.to_string());
        }
        push("k", self.k.to_string());
        push("columns", self.columns.join(","));
        lines
    }

    /// Rebuild a config from the `# key = value` header block of a CSV.
    pub fn from_header(text: &str) -> Result<Self> {
        let mut map = std::collections::HashMap::new();
        for line in text.lines() {
            let Some(body) = line.strip_prefix('#') else {
                break;
            };
            if let Some((k, v)) = body.split_once('=') {
                map.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        let get = |k: &str| map.get(k).cloned();
        let require =
            |k: &str| get(k).ok_or_else(|| anyhow!("header is missing the '{k}' key"));

        let config = ExperimentConfig {
            preset: get("preset"),
            mode: require("mode")?.parse()?,
            model: require("model")?.parse()?,
            sizes: match get("sizes") {
                Some(s) => s
                    .split(',')
                    .map(|x| x.trim().parse::<usize>().context("bad size"))
                    .collect::<Result<_>>()?,
                None => Vec::new(),
            },
            rows: get("rows").map(|s| s.parse()).transpose()?.unwrap_or(0),
            cols: get("cols").map(|s| s.parse()).transpose()?.unwrap_or(0),
            gamma: get("gamma").map(|s| s.parse()).transpose()?,
            lambda: get("lambda").map(|s| s.parse()).transpose()?,
            schedule: get("schedule")
                .map(|s| s.parse::<ScheduleKind>().map_err(|e| anyhow!(e)))
                .transpose()?,
            s_axis: get("s").map(|s| s.parse()).transpose()?,
            total_time: get("T").map(|s| s.parse()).transpose()?,
            num_steps: get("steps").map(|s| s.parse()).transpose()?,
            samples: get("samples").map(|s| s.parse()).transpose()?,
            k: require("k")?.parse()?,
            columns: require("columns")?
                .split(',')
                .map(|s| s.trim().to_string())
                .collect(),
        };
        config.validate()?;
        Ok(config)
    }
}
