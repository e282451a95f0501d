use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::Path;

use innerit::linalg::{mm_read, read_vector};
use innerit::SparseMatrix;
use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

pub fn load_matrix(path: &Path) -> CliResult<SparseMatrix> {
    let f = File::open(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    mm_read(BufReader::new(f)).map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    })
}

/// Reads `path`, or returns `A·1` when no right-hand side is given.
pub fn load_rhs(path: Option<&Path>, a: &SparseMatrix) -> CliResult<Vec<f64>> {
    match path {
        Some(p) => {
            let f = File::open(p).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?;
            Ok(read_vector(BufReader::new(f))?)
        }
        None => Ok(a.spmv(&vec![1.0; a.ncols()])?),
    }
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, or to stdout.
pub fn emit(path: Option<&Path>, contents: &str) -> CliResult<()> {
    match path {
        Some(p) => write_atomic(p, contents),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(contents.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::usage(format!("{}: {e}", dir.display())))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .map_err(|e| CliError::usage(format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}

/// A flat table rendered as CSV or as a JSON array of objects.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

pub enum Cell {
    Int(usize),
    Num(f64),
    Text(String),
    Empty,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(v) => v.to_string(),
                    Cell::Num(v) => format!("{v:.16e}"),
                    Cell::Text(s) => s.clone(),
                    Cell::Empty => String::new(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> CliResult<String> {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (key, c) in self.header.iter().zip(row) {
                    let v = match c {
                        Cell::Int(v) => serde_json::Value::from(*v),
                        Cell::Num(v) => serde_json::Value::from(*v),
                        Cell::Text(s) => serde_json::Value::from(s.as_str()),
                        Cell::Empty => serde_json::Value::Null,
                    };
                    obj.insert(key.to_string(), v);
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows)?;
        s.push('\n');
        Ok(s)
    }
}
