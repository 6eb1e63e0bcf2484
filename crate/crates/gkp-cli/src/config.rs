//! Strict TOML configuration with figure-matching defaults, dotted-key
//! overrides, and a content hash that ties every output file to the exact
//! parameter block that produced it.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

use crate::CliError;

/// Per-command parameter blocks. Unknown keys anywhere are rejected.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub fig3: Fig3Config,
    pub fig4: Fig4Config,
    pub meanfid: MeanfidConfig,
    pub oracle: OracleConfig,
    pub baseline: BaselineConfig,
}

/// Fidelity-vs-outcome sweep (defaults reproduce the published curve set).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Fig3Config {
    pub levels_db: Vec<f64>,
    pub m: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub x_step: f64,
}

impl Default for Fig3Config {
    fn default() -> Self {
        Self {
            levels_db: vec![7.0, 8.0, 9.0, 10.0, 11.0],
            m: 2,
            x_min: -0.3,
            x_max: 0.3,
            x_step: 0.01,
        }
    }
}

/// Fidelity-vs-displacement-error sweep at x = 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Fig4Config {
    pub levels_db: Vec<f64>,
    pub m: usize,
    pub delta_min: f64,
    pub delta_max: f64,
    pub delta_step: f64,
}

impl Default for Fig4Config {
    fn default() -> Self {
        Self {
            levels_db: vec![7.0, 8.0, 9.0, 10.0, 11.0],
            m: 2,
            delta_min: 0.0,
            delta_max: 0.05,
            delta_step: 0.0025,
        }
    }
}

/// Success-probability / mean-fidelity trade-off sweep over the acceptance
/// window.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MeanfidConfig {
    pub levels_db: Vec<f64>,
    pub m: usize,
    pub v_min: f64,
    pub v_max: f64,
    pub v_step: f64,
}

impl Default for MeanfidConfig {
    fn default() -> Self {
        Self {
            levels_db: vec![10.0, 11.0, 12.0],
            m: 3,
            v_min: 0.01,
            v_max: 0.40,
            v_step: 0.01,
        }
    }
}

/// Cross-validation grid for the three independent state constructions.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleConfig {
    pub levels_db: Vec<f64>,
    pub m_values: Vec<usize>,
    pub x_values: Vec<f64>,
    /// Worst allowed infidelity between the closed-form state and the
    /// branch-evolution construction on the grid above.
    pub analytic_branch_tol: f64,
    /// Worst allowed infidelity between the branch construction and the
    /// truncated photon-number simulation at toy scale.
    pub branch_fock_tol: f64,
    pub toy_db: f64,
    pub toy_beta: f64,
    pub toy_gamma: f64,
    pub toy_dim: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            levels_db: vec![7.0, 10.0, 12.0],
            m_values: vec![1, 2, 3],
            x_values: vec![-0.15, -0.05, 0.0, 0.05, 0.15],
            analytic_branch_tol: 1e-9,
            branch_fock_tol: 1e-6,
            toy_db: 7.0,
            toy_beta: 3.0,
            toy_gamma: 1.5,
            toy_dim: 64,
        }
    }
}

/// Coherent-ancilla comparison scheme.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BaselineConfig {
    pub alpha: f64,
    pub tau: f64,
    pub x: f64,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self {
            alpha: 2.0,
            tau: 2.0,
            x: 0.0,
        }
    }
}

/// Defaults → optional config file → `--override key=value` entries, in that
/// order; every stage is checked strictly against the schema.
pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<ExperimentConfig, CliError> {
    let mut table = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
            let file_table: toml::Table = text
                .parse()
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            let mut base = to_table(&ExperimentConfig::default())?;
            merge_tables(&mut base, file_table);
            base
        }
        None => to_table(&ExperimentConfig::default())?,
    };
    for entry in overrides {
        apply_override(&mut table, entry)?;
    }
    table
        .try_into()
        .map_err(|e| CliError::Config(format!("invalid configuration: {e}")))
}

fn to_table(config: &ExperimentConfig) -> Result<toml::Table, CliError> {
    toml::Table::try_from(config)
        .map_err(|e| CliError::Config(format!("cannot serialize defaults: {e}")))
}

/// Recursively lay `patch` over `base` (sub-tables merge, scalars replace).
fn merge_tables(base: &mut toml::Table, patch: toml::Table) {
    for (key, value) in patch {
        match (base.get_mut(&key), value) {
            (Some(toml::Value::Table(b)), toml::Value::Table(p)) => merge_tables(b, p),
            (_, v) => {
                base.insert(key, v);
            }
        }
    }
}

/// Apply one `section.key=value` override. The value is parsed as a TOML
/// literal (so numbers, booleans, and arrays work) and falls back to a plain
/// string.
fn apply_override(table: &mut toml::Table, entry: &str) -> Result<(), CliError> {
    let (key_path, raw) = entry
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("override '{entry}' is not KEY=VALUE")))?;
    let value = parse_toml_literal(raw.trim());
    let keys: Vec<&str> = key_path.trim().split('.').collect();
    if keys.iter().any(|k| k.is_empty()) {
        return Err(CliError::Config(format!("override key '{key_path}' is malformed")));
    }
    let mut current = table;
    for k in &keys[..keys.len() - 1] {
        current = current
            .entry(k.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()))
            .as_table_mut()
            .ok_or_else(|| {
                CliError::Config(format!("override key '{key_path}': '{k}' is not a section"))
            })?;
    }
    current.insert(keys[keys.len() - 1].to_string(), value);
    Ok(())
}

fn parse_toml_literal(raw: &str) -> toml::Value {
    format!("v = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()))
}

/// SHA-256 of the serialized parameter block a command actually ran with.
pub fn section_hash<T: Serialize>(section: &T) -> Result<String, CliError> {
    let text = toml::to_string(section)
        .map_err(|e| CliError::Config(format!("cannot serialize config section: {e}")))?;
    Ok(hex::encode(Sha256::digest(text.as_bytes())))
}

/// Expand an inclusive uniform grid, validating that the bounds are an
/// integer number of steps apart.
pub fn uniform_grid(min: f64, max: f64, step: f64, what: &str) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0) || !min.is_finite() || !max.is_finite() || max < min {
        return Err(CliError::Config(format!(
            "{what}: need finite bounds with max ≥ min and step > 0 (got [{min}, {max}] step {step})"
        )));
    }
    let span = (max - min) / step;
    let n = span.round();
    if (span - n).abs() > 1e-6 {
        return Err(CliError::Config(format!(
            "{what}: [{min}, {max}] is not a whole number of {step} steps"
        )));
    }
    Ok((0..=n as usize).map(|i| min + step * i as f64).collect())
}
