//! CSV assembly: '#'-prefixed provenance lines, a header row, and rows of
//! floats at a fixed 12 significant digits so reruns are byte-identical.

use std::path::Path;

use crate::CliError;

/// One CSV cell: either a float (formatted uniformly) or a literal string.
#[derive(Debug, Clone)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// 12 significant digits, scientific notation.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.11e}")
}

fn render_cell(c: &Cell) -> String {
    match c {
        Cell::Float(v) => fmt_float(*v),
        Cell::Int(v) => v.to_string(),
        Cell::Text(s) => s.clone(),
    }
}

/// Render a full CSV document: metadata comments, header, rows.
pub fn render_csv(config_hash: &str, header: &[&str], rows: &[Vec<Cell>]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# generator: gkp {}\n",
        env!("CARGO_PKG_VERSION")
    ));
    out.push_str(&format!("# config-sha256: {config_hash}\n"));
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(render_cell).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}
