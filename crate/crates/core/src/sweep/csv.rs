//! Figure datasets and their CSV serialization: `#`-prefixed provenance
//! header (tool version, seed, config hash), comma delimiter, 12 significant
//! digits, LF line endings. Identical configs produce byte-identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnKind {
    /// Integer-valued coordinate (emitted without exponent).
    Int,
    /// Real value, scientific notation with 12 significant digits.
    Sci,
}

#[derive(Clone, Copy, Debug)]
pub struct Column {
    pub name: &'static str,
    pub kind: ColumnKind,
}

impl Column {
    pub const fn int(name: &'static str) -> Self {
        Self {
            name,
            kind: ColumnKind::Int,
        }
    }

    pub const fn sci(name: &'static str) -> Self {
        Self {
            name,
            kind: ColumnKind::Sci,
        }
    }
}

/// One figure's worth of sweep output: column schema, row data and the
/// provenance that produced it. Rows are sorted by the leading
/// `key_columns` sweep coordinates.
#[derive(Clone, Debug)]
pub struct FigureDataset {
    pub name: String,
    pub columns: Vec<Column>,
    pub key_columns: usize,
    pub rows: Vec<Vec<f64>>,
    pub seed: u64,
    pub config_hash: String,
}

impl FigureDataset {
    /// Checks the schema invariants: rectangular rows, finite cells, rows
    /// sorted by the sweep coordinates.
    pub fn validate(&self) -> Result<()> {
        if self.key_columns > self.columns.len() {
            return Err(Error::Config("key columns exceed column count".into()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.columns.len() {
                return Err(Error::Shape(format!(
                    "row {i} has {} cells, schema has {} columns",
                    row.len(),
                    self.columns.len()
                )));
            }
            for (c, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::InvalidDensity(format!(
                        "non-finite cell at row {i}, column {}",
                        self.columns[c].name
                    )));
                }
            }
        }
        for w in self.rows.windows(2) {
            if compare_keys(&w[0], &w[1], self.key_columns) == std::cmp::Ordering::Greater {
                return Err(Error::Config("rows not sorted by sweep coordinates".into()));
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# tool: clonedel {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "# figure: {}", self.name);
        let _ = writeln!(out, "# seed: {}", self.seed);
        let _ = writeln!(out, "# config: {}", self.config_hash);
        let _ = writeln!(out, "# key-columns: {}", self.key_columns);
        let names: Vec<&str> = self.columns.iter().map(|c| c.name).collect();
        let _ = writeln!(out, "{}", names.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&self.columns)
                .map(|(v, col)| match col.kind {
                    ColumnKind::Int => format!("{}", *v as i64),
                    ColumnKind::Sci => format!("{v:.11e}"),
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// Writes `<dir>/<name>.csv`, creating the directory if missing.
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        self.validate()?;
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.csv", self.name));
        std::fs::write(&path, self.to_csv())?;
        Ok(path)
    }
}

fn compare_keys(a: &[f64], b: &[f64], keys: usize) -> std::cmp::Ordering {
    for k in 0..keys {
        let ord = a[k].total_cmp(&b[k]);
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

/// Reloads an emitted dataset and re-checks its schema: provenance header
/// present, rectangular data, finite values, rows sorted by the declared
/// key columns.
pub fn validate_csv_file(path: &Path) -> Result<()> {
    let content = std::fs::read_to_string(path)?;
    let mut key_columns: Option<usize> = None;
    let mut column_count: Option<usize> = None;
    let mut prev_row: Option<Vec<f64>> = None;
    let mut saw_tool = false;
    for line in content.lines() {
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if rest.starts_with("tool:") {
                saw_tool = true;
            } else if let Some(v) = rest.strip_prefix("key-columns:") {
                key_columns = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("key-columns in {}", path.display())))?,
                );
            }
            continue;
        }
        if column_count.is_none() {
            // header row
            column_count = Some(line.split(',').count());
            continue;
        }
        let cells: std::result::Result<Vec<f64>, _> =
            line.split(',').map(str::parse::<f64>).collect();
        let cells = cells.map_err(|_| Error::Parse(format!("data row in {}", path.display())))?;
        if Some(cells.len()) != column_count {
            return Err(Error::Shape(format!(
                "row width {} does not match header in {}",
                cells.len(),
                path.display()
            )));
        }
        if cells.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDensity(format!(
                "non-finite value in {}",
                path.display()
            )));
        }
        if let (Some(prev), Some(keys)) = (&prev_row, key_columns) {
            if compare_keys(prev, &cells, keys) == std::cmp::Ordering::Greater {
                return Err(Error::Config(format!(
                    "rows out of order in {}",
                    path.display()
                )));
            }
        }
        prev_row = Some(cells);
    }
    if !saw_tool || key_columns.is_none() || column_count.is_none() {
        return Err(Error::Parse(format!(
            "missing provenance header in {}",
            path.display()
        )));
    }
    Ok(())
}
