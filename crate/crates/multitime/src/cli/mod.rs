//! Scenario-driven front end: each named scenario reproduces one claim about
//! multi-time evolution, writes CSV tables plus a JSON summary, and exits
//! nonzero when a built-in check fails.

pub mod config;
mod scenarios;

pub use config::{Config, ConfigError};

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Run(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    MtsWellposed,
    MtsConsistency,
    MtsDiagonal,
    MtsKgIdentity,
    MtdInstability,
    MtdCwFilter,
    MtdNonuniqueness,
    MtdDiracDispersion,
    DetectionHypersurface,
    LorentzCovariance,
}

const CATALOG: [(Scenario, &str, &str); 10] = [
    (
        Scenario::MtsWellposed,
        "mts-wellposed",
        "norm preservation and path independence of the two-time Schrödinger evolution",
    ),
    (
        Scenario::MtsConsistency,
        "mts-consistency",
        "commutation of the two partial Hamiltonians on random probes",
    ),
    (
        Scenario::MtsDiagonal,
        "mts-diagonal",
        "equal-time restriction agrees with ordinary two-particle evolution",
    ),
    (
        Scenario::MtsKgIdentity,
        "mts-kg-identity",
        "per-particle second-order wave identity and its sum with effective mass sqrt(2)·m",
    ),
    (
        Scenario::MtdInstability,
        "mtd-instability",
        "exponential e-folding of timelike modes of the two-time wave equation",
    ),
    (
        Scenario::MtdCwFilter,
        "mtd-cw-filter",
        "norm boundedness after filtering timelike modes out of the data",
    ),
    (
        Scenario::MtdNonuniqueness,
        "mtd-nonuniqueness",
        "two distinct solutions sharing all data on the initial surface",
    ),
    (
        Scenario::MtdDiracDispersion,
        "mtd-dirac-dispersion",
        "gamma-matrix algebra and plane-wave solvability of the two-time Dirac equation",
    ),
    (
        Scenario::DetectionHypersurface,
        "detection-hypersurface",
        "detection probability densities on tilted spacelike surfaces",
    ),
    (
        Scenario::LorentzCovariance,
        "lorentz-covariance",
        "boosted-frame form invariance of the two-time equations",
    ),
];

impl Scenario {
    pub fn name(&self) -> &'static str {
        CATALOG
            .iter()
            .find(|(s, _, _)| s == self)
            .map(|(_, n, _)| *n)
            .expect("scenario in catalog")
    }

    pub fn from_name(name: &str) -> Result<Scenario, ConfigError> {
        CATALOG
            .iter()
            .find(|(_, n, _)| *n == name)
            .map(|(s, _, _)| *s)
            .ok_or_else(|| ConfigError::UnknownScenario {
                got: name.to_string(),
                valid: CATALOG
                    .iter()
                    .map(|(_, n, _)| *n)
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }

    pub fn from_config(cfg: &Config) -> Result<Scenario, ConfigError> {
        let name = cfg.get("scenario").ok_or(ConfigError::MissingScenario)?;
        Scenario::from_name(name)
    }
}

/// Fixed-order catalog, one line per scenario.
pub fn list_scenarios() -> String {
    let mut out = String::new();
    for (_, name, blurb) in CATALOG {
        let _ = writeln!(out, "{name:24} {blurb}");
    }
    out
}

fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Output {
        path: path.to_path_buf(),
        source,
    })
}

/// Execute the scenario named in the config file. Returns whether every
/// check passed; failed checks are reported on stderr. I/O and configuration
/// problems surface as errors (exit code 2 territory), check failures do not.
pub fn run(
    config_path: &Path,
    output_dir: Option<&Path>,
    seed: Option<u64>,
) -> Result<bool, CliError> {
    let start = Instant::now();
    let mut cfg = Config::load(config_path)?;
    if let Some(s) = seed {
        cfg.set("seed", s.to_string());
    }
    if let Some(d) = output_dir {
        cfg.set("output_dir", d.display().to_string());
    }
    let scenario = Scenario::from_config(&cfg)?;
    let outcome = scenarios::run_scenario(scenario, &cfg)?;

    let outdir = PathBuf::from(cfg.get("output_dir").unwrap_or("."));
    std::fs::create_dir_all(&outdir).map_err(|source| CliError::Output {
        path: outdir.clone(),
        source,
    })?;

    for table in &outcome.tables {
        let mut csv = table.header.join(",");
        csv.push('\n');
        for row in &table.rows {
            let line: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
            csv.push_str(&line.join(","));
            csv.push('\n');
        }
        let path = outdir.join(format!("{}_{}.csv", scenario.name(), table.name));
        write_file(&path, &csv)?;
    }

    let pass = outcome.checks.iter().all(|c| c.pass);
    for check in &outcome.checks {
        if !check.pass {
            eprintln!(
                "FAIL {}: {:.6e} exceeds threshold {:.6e}",
                check.name, check.value, check.threshold
            );
        }
    }

    let mut metrics = serde_json::Map::new();
    for (k, v) in &outcome.metrics {
        metrics.insert(k.clone(), serde_json::json!(v));
    }
    let mut config_echo = serde_json::Map::new();
    for (k, v) in cfg.entries() {
        config_echo.insert(k.clone(), serde_json::json!(v));
    }
    let summary = serde_json::json!({
        "scenario": scenario.name(),
        "config": config_echo,
        "metrics": metrics,
        "pass": pass,
        "duration_ms": start.elapsed().as_millis() as u64,
    });
    let text = serde_json::to_string_pretty(&summary).expect("serializable summary");
    write_file(&outdir.join("summary.json"), &text)?;

    Ok(pass)
}
