//! Experiment configuration: per-experiment defaults, a flat
//! `key = value` text format, a JSON alternative, and CLI-style
//! overrides, all funneled through one typed `set` path.

use crate::rng::{CoeffDist, RNG_ID};
use crate::{Error, Result};

/// The experiment names the harness understands, in CLI order.
pub const EXPERIMENTS: [&str; 4] = ["zero-scan", "ac-scan", "props", "density-scan"];

/// Default master seed for every experiment; any fixed value works, the
/// point is that runs are reproducible unless the caller changes it.
pub const DEFAULT_SEED: u64 = 1_000_003;

/// Output encoding for result rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<OutputFormat> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "unknown format {other:?} (expected csv or json)"
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// A fully specified experiment run. Built from per-experiment defaults,
/// then optionally overridden by a config file and CLI flags.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// One of [`EXPERIMENTS`].
    pub experiment: String,
    /// Sizes to scan, strictly ascending.
    pub n_list: Vec<usize>,
    /// Monte Carlo trials per size (exact branches ignore it).
    pub trials: u64,
    /// Coefficient distribution for sampled polynomials. The
    /// anti-concentration scan draws no coefficients and ignores it.
    pub dist: CoeffDist,
    /// Master seed; every random stream is derived from it.
    pub seed: u64,
    /// Worker threads. Results are identical for every value ≥ 1.
    pub workers: usize,
    /// Output path; `None` prints to stdout.
    pub out: Option<String>,
    /// Output encoding.
    pub format: OutputFormat,
}

impl ExperimentConfig {
    /// The built-in defaults for one experiment.
    pub fn default_for(experiment: &str) -> Result<ExperimentConfig> {
        let (n_list, trials, dist): (Vec<usize>, u64, CoeffDist) = match experiment {
            "zero-scan" => (
                vec![16, 32, 64, 128, 256, 512, 1024],
                2000,
                CoeffDist::Gaussian,
            ),
            "ac-scan" => ((4..=10).collect(), 200_000, CoeffDist::Rademacher),
            "props" => (vec![8], 20_000, CoeffDist::Rademacher),
            "density-scan" => (vec![2, 4, 8, 12], 1, CoeffDist::Uniform),
            other => {
                return Err(Error::Config(format!(
                    "unknown experiment {other:?} (expected one of {})",
                    EXPERIMENTS.join(", ")
                )))
            }
        };
        Ok(ExperimentConfig {
            experiment: experiment.to_string(),
            n_list,
            trials,
            dist,
            seed: DEFAULT_SEED,
            workers: 1,
            out: None,
            format: OutputFormat::Csv,
        })
    }

    /// Applies a config file body: either a JSON object or flat
    /// `key = value` lines (# comments and blank lines allowed). Both
    /// forms accept exactly the keys of [`ExperimentConfig::set`].
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            self.apply_json(trimmed)
        } else {
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    Error::Config(format!(
                        "line {}: expected `key = value`, got {line:?}",
                        lineno + 1
                    ))
                })?;
                self.set(key.trim(), value.trim())?;
            }
            Ok(())
        }
    }

    fn apply_json(&mut self, text: &str) -> Result<()> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("invalid JSON config: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Config("JSON config must be an object".into()))?;
        for (key, val) in obj {
            let as_text = match val {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(x) => x.to_string(),
                serde_json::Value::Array(items) => {
                    let parts: Result<Vec<String>> = items
                        .iter()
                        .map(|item| match item {
                            serde_json::Value::Number(x) => Ok(x.to_string()),
                            serde_json::Value::String(s) => Ok(s.clone()),
                            other => Err(Error::Config(format!(
                                "key {key:?}: array entries must be numbers, got {other}"
                            ))),
                        })
                        .collect();
                    parts?.join(",")
                }
                other => {
                    return Err(Error::Config(format!(
                        "key {key:?}: unsupported JSON value {other}"
                    )))
                }
            };
            self.set(key, &as_text)?;
        }
        Ok(())
    }

    /// Sets one field from its textual form. Accepted keys: experiment,
    /// n_list (alias n), trials, dist, seed, workers, out, format.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim().trim_matches('"');
        match key {
            "experiment" => {
                if !EXPERIMENTS.contains(&value) {
                    return Err(Error::Config(format!(
                        "unknown experiment {value:?} (expected one of {})",
                        EXPERIMENTS.join(", ")
                    )));
                }
                self.experiment = value.to_string();
            }
            "n_list" | "n" => {
                let mut list = Vec::new();
                for part in value.split(',') {
                    let part = part.trim();
                    if part.is_empty() {
                        continue;
                    }
                    list.push(part.parse::<usize>().map_err(|_| {
                        Error::Config(format!("n_list entry {part:?} is not a size"))
                    })?);
                }
                self.n_list = list;
            }
            "trials" => {
                self.trials = value
                    .parse::<u64>()
                    .map_err(|_| Error::Config(format!("trials {value:?} is not a count")))?;
            }
            "dist" => self.dist = CoeffDist::parse(value)?,
            "seed" => {
                self.seed = value
                    .parse::<u64>()
                    .map_err(|_| Error::Config(format!("seed {value:?} is not a u64")))?;
            }
            "workers" => {
                self.workers = value
                    .parse::<usize>()
                    .map_err(|_| Error::Config(format!("workers {value:?} is not a count")))?;
            }
            "out" => {
                self.out = if value.is_empty() || value == "-" {
                    None
                } else {
                    Some(value.to_string())
                };
            }
            "format" => self.format = OutputFormat::parse(value)?,
            other => {
                return Err(Error::Config(format!(
                    "unknown config key {other:?} (expected experiment, n_list, trials, \
                     dist, seed, workers, out, or format)"
                )))
            }
        }
        Ok(())
    }

    /// Checks cross-field invariants: a known experiment, a nonempty
    /// strictly ascending size list within the experiment's range, at
    /// least one trial, and at least one worker.
    pub fn validate(&self) -> Result<()> {
        if !EXPERIMENTS.contains(&self.experiment.as_str()) {
            return Err(Error::Config(format!(
                "unknown experiment {:?}",
                self.experiment
            )));
        }
        if self.n_list.is_empty() {
            return Err(Error::Config("n_list must not be empty".into()));
        }
        if self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(format!(
                "n_list must be strictly ascending, got {:?}",
                self.n_list
            )));
        }
        let min_n = self.n_list[0];
        let max_n = *self.n_list.last().expect("nonempty");
        match self.experiment.as_str() {
            // Weight families need at least two entries.
            "ac-scan" if min_n < 2 => {
                return Err(Error::Config(
                    "ac-scan needs n ≥ 2 (weight vectors have at least two entries)".into(),
                ))
            }
            // The exact density expansion is 2^n-term; cap the scan where
            // a 201-point grid stays interactive.
            "density-scan" if max_n > 16 => {
                return Err(Error::Config(
                    "density-scan needs n ≤ 16 (the exact evaluator expands 2^n terms)".into(),
                ))
            }
            "zero-scan" if min_n < 1 => {
                return Err(Error::Config("zero-scan needs n ≥ 1".into()))
            }
            _ => {}
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be ≥ 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be ≥ 1".into()));
        }
        if let CoeffDist::Atom0 { p0 } = self.dist {
            if !(0.0..1.0).contains(&p0) {
                return Err(Error::Config(format!(
                    "atom0 mass must satisfy 0 ≤ p0 < 1, got {p0}"
                )));
            }
        }
        Ok(())
    }

    /// Run-identifying metadata echoed into every output. Worker count
    /// and output path are deliberately absent: results must be
    /// byte-identical across worker counts and destinations.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let n_list = self
            .n_list
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let mut meta = vec![
            ("experiment".to_string(), self.experiment.clone()),
            ("n_list".to_string(), n_list),
            ("trials".to_string(), self.trials.to_string()),
        ];
        // The anti-concentration scan uses fixed weight families, not
        // sampled coefficients; echoing a distribution there would be
        // misleading.
        if self.experiment != "ac-scan" {
            meta.push(("dist".to_string(), self.dist.canonical()));
        }
        meta.push(("seed".to_string(), self.seed.to_string()));
        meta.push(("rng".to_string(), RNG_ID.to_string()));
        meta
    }
}
