//! Matrix Market exchange format.
//!
//! Reads `coordinate` and `array` files with `real`, `integer` or `pattern`
//! fields and `general` or `symmetric` symmetry. Symmetric storage is
//! expanded to both triangles on read, so nothing downstream needs to know
//! how the file was stored. Writes use 17 significant digits.

use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmFormat {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmField {
    Real,
    Integer,
    Pattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmSymmetry {
    General,
    Symmetric,
}

/// Parsed `%%MatrixMarket matrix <format> <field> <symmetry>` banner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixMarketHeader {
    pub format: MmFormat,
    pub field: MmField,
    pub symmetry: MmSymmetry,
}

impl MatrixMarketHeader {
    pub fn parse(line: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse { line: 1, msg };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.first() != Some(&"%%MatrixMarket") {
            return Err(bad("missing %%MatrixMarket banner".into()));
        }
        if tokens.len() != 5 {
            return Err(bad(format!(
                "banner must have four tokens after %%MatrixMarket, found {}",
                tokens.len() - 1
            )));
        }
        let lower: Vec<String> = tokens[1..].iter().map(|t| t.to_ascii_lowercase()).collect();
        if lower[0] != "matrix" {
            return Err(bad(format!("unsupported object '{}'", tokens[1])));
        }
        let format = match lower[1].as_str() {
            "coordinate" => MmFormat::Coordinate,
            "array" => MmFormat::Array,
            other => return Err(bad(format!("unsupported format '{other}'"))),
        };
        let field = match lower[2].as_str() {
            "real" | "double" => MmField::Real,
            "integer" => MmField::Integer,
            "pattern" => MmField::Pattern,
            other => return Err(bad(format!("unsupported field '{other}'"))),
        };
        let symmetry = match lower[3].as_str() {
            "general" => MmSymmetry::General,
            "symmetric" => MmSymmetry::Symmetric,
            other => return Err(bad(format!("unsupported symmetry '{other}'"))),
        };
        if format == MmFormat::Array && field == MmField::Pattern {
            return Err(bad("pattern field is only valid for coordinate format".into()));
        }
        Ok(Self {
            format,
            field,
            symmetry,
        })
    }
}

/// Data lines with their 1-based line numbers, comments and blanks removed.
fn data_lines(reader: impl BufRead) -> Result<(String, Vec<(usize, String)>)> {
    let mut lines = reader.lines().enumerate();
    let banner = match lines.next() {
        Some((_, l)) => l.map_err(io_err(1))?,
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "empty input".into(),
            })
        }
    };
    let mut data = Vec::new();
    for (idx, line) in lines {
        let line = line.map_err(io_err(idx + 1))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        data.push((idx + 1, trimmed.to_string()));
    }
    Ok((banner, data))
}

fn io_err(line: usize) -> impl Fn(std::io::Error) -> Error {
    move |e| Error::Parse {
        line,
        msg: e.to_string(),
    }
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?
    .parse()
    .map_err(|_| Error::Parse {
        line,
        msg: format!("invalid {what}"),
    })
}

fn parse_value(tok: Option<&str>, line: usize) -> Result<f64> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: "missing value".into(),
    })?;
    let v: f64 = tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("non-numeric value token '{tok}'"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            msg: format!("non-finite value '{tok}'"),
        });
    }
    Ok(v)
}

/// Reads a Matrix Market stream into full (both-triangle) CSR storage.
/// Duplicate coordinate entries are summed.
pub fn mm_read(reader: impl BufRead) -> Result<SparseMatrix> {
    let (banner, data) = data_lines(reader)?;
    let header = MatrixMarketHeader::parse(&banner)?;
    let mut it = data.into_iter();
    let (size_line_no, size_line) = it.next().ok_or_else(|| Error::Parse {
        line: 2,
        msg: "missing size line".into(),
    })?;
    let mut size = size_line.split_whitespace();
    let nrows = parse_usize(size.next(), size_line_no, "row count")?;
    let ncols = parse_usize(size.next(), size_line_no, "column count")?;
    if header.symmetry == MmSymmetry::Symmetric && nrows != ncols {
        return Err(Error::Parse {
            line: size_line_no,
            msg: "symmetric matrix must be square".into(),
        });
    }

    let mut triplets: Vec<(usize, usize, f64)> = Vec::new();
    let mut push = |i: usize, j: usize, v: f64| {
        triplets.push((i, j, v));
        if header.symmetry == MmSymmetry::Symmetric && i != j {
            triplets.push((j, i, v));
        }
    };

    match header.format {
        MmFormat::Coordinate => {
            let nnz = parse_usize(size.next(), size_line_no, "entry count")?;
            let mut count = 0;
            for (line_no, line) in it {
                let mut toks = line.split_whitespace();
                let i = parse_usize(toks.next(), line_no, "row index")?;
                let j = parse_usize(toks.next(), line_no, "column index")?;
                if i == 0 || j == 0 || i > nrows || j > ncols {
                    return Err(Error::IndexOutOfBounds {
                        row: i,
                        col: j,
                        nrows,
                        ncols,
                    });
                }
                if header.symmetry == MmSymmetry::Symmetric && j > i {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "symmetric storage must list the lower triangle only".into(),
                    });
                }
                let v = match header.field {
                    MmField::Pattern => 1.0,
                    _ => parse_value(toks.next(), line_no)?,
                };
                push(i - 1, j - 1, v);
                count += 1;
            }
            if count != nnz {
                return Err(Error::Parse {
                    line: size_line_no,
                    msg: format!("declared {nnz} entries, found {count}"),
                });
            }
        }
        MmFormat::Array => {
            // column-major; symmetric arrays list the lower triangle
            let mut values = Vec::new();
            for (line_no, line) in it {
                for tok in line.split_whitespace() {
                    values.push((line_no, parse_value(Some(tok), line_no)?));
                }
            }
            let mut k = 0;
            for j in 0..ncols {
                let start = if header.symmetry == MmSymmetry::Symmetric { j } else { 0 };
                for i in start..nrows {
                    let (_, v) = *values.get(k).ok_or_else(|| Error::Parse {
                        line: size_line_no,
                        msg: "too few array entries".into(),
                    })?;
                    if v != 0.0 {
                        push(i, j, v);
                    }
                    k += 1;
                }
            }
            if k != values.len() {
                return Err(Error::Parse {
                    line: values[k].0,
                    msg: "too many array entries".into(),
                });
            }
        }
    }
    SparseMatrix::from_triplets(nrows, ncols, &triplets)
}

/// Writes `a` in coordinate real format. With `symmetric` set only the lower
/// triangle is stored, and `a` must be symmetric to `1e-12`.
pub fn mm_write(a: &SparseMatrix, symmetric: bool) -> Result<String> {
    if symmetric {
        match a.max_asymmetry() {
            None => {
                return Err(Error::Dimension(
                    "symmetric storage requires a square matrix".into(),
                ))
            }
            Some(asym) if asym > 1e-12 => return Err(Error::NotSymmetric(asym)),
            _ => {}
        }
    }
    let mut entries = Vec::new();
    for i in 0..a.nrows() {
        let (cols, vals) = a.row(i);
        for (&j, &v) in cols.iter().zip(vals) {
            if !symmetric || j <= i {
                entries.push((i, j, v));
            }
        }
    }
    let mut out = String::new();
    let sym = if symmetric { "symmetric" } else { "general" };
    writeln!(out, "%%MatrixMarket matrix coordinate real {sym}").unwrap();
    writeln!(out, "{} {} {}", a.nrows(), a.ncols(), entries.len()).unwrap();
    for (i, j, v) in entries {
        writeln!(out, "{} {} {:.16e}", i + 1, j + 1, v).unwrap();
    }
    Ok(out)
}

/// Writes a vector as an `n x 1` array file.
pub fn mm_write_vector(x: &[f64]) -> String {
    let mut out = String::from("%%MatrixMarket matrix array real general\n");
    writeln!(out, "{} 1", x.len()).unwrap();
    for v in x {
        writeln!(out, "{v:.16e}").unwrap();
    }
    out
}

/// Reads a right-hand side: Matrix Market (`n x 1` or `1 x n`, array or
/// coordinate) when the banner is present, otherwise one value per line.
pub fn read_vector(reader: impl BufRead) -> Result<Vec<f64>> {
    let text: Vec<String> = reader
        .lines()
        .collect::<std::io::Result<_>>()
        .map_err(io_err(0))?;
    let first = text.iter().find(|l| !l.trim().is_empty());
    if first.is_some_and(|l| l.trim_start().starts_with("%%MatrixMarket")) {
        let joined = text.join("\n");
        let m = mm_read(joined.as_bytes())?;
        let dense = m.to_dense();
        if m.ncols() == 1 {
            Ok(dense.column(0).iter().copied().collect())
        } else if m.nrows() == 1 {
            Ok(dense.row(0).iter().copied().collect())
        } else {
            Err(Error::Dimension(format!(
                "right-hand side must be a vector, got {}x{}",
                m.nrows(),
                m.ncols()
            )))
        }
    } else {
        text.iter()
            .enumerate()
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('%') && !t.starts_with('#')
            })
            .map(|(idx, l)| parse_value(Some(l.trim()), idx + 1))
            .collect()
    }
}
