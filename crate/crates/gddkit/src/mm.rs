//! Matrix Market reader/writer and plain-text spectrum files.

use crate::matrix::ComplexMatrix;
use crate::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmFormat {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmField {
    Real,
    Integer,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmSymmetry {
    General,
    Symmetric,
    Hermitian,
    SkewSymmetric,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses Matrix Market text into a dense complex matrix. Coordinate and
/// array formats are supported with real/integer/complex fields; symmetric,
/// hermitian and skew-symmetric storage is expanded, duplicate coordinate
/// entries are summed, and the pattern field is rejected (it carries no
/// magnitudes to localize).
pub fn parse_matrix_market(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let tokens: Vec<String> = header.split_whitespace().map(|t| t.to_lowercase()).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(perr(
            1,
            "header must be '%%MatrixMarket matrix <format> <field> <symmetry>'",
        ));
    }
    let format = match tokens[2].as_str() {
        "coordinate" => MmFormat::Coordinate,
        "array" => MmFormat::Array,
        other => return Err(perr(1, format!("unknown format '{other}'"))),
    };
    let field = match tokens[3].as_str() {
        "real" => MmField::Real,
        "integer" => MmField::Integer,
        "complex" => MmField::Complex,
        "pattern" => {
            return Err(perr(
                1,
                "pattern matrices carry no magnitudes and are not accepted",
            ))
        }
        other => return Err(perr(1, format!("unknown field '{other}'"))),
    };
    let symmetry = match tokens[4].as_str() {
        "general" => MmSymmetry::General,
        "symmetric" => MmSymmetry::Symmetric,
        "hermitian" => MmSymmetry::Hermitian,
        "skew-symmetric" => MmSymmetry::SkewSymmetric,
        other => return Err(perr(1, format!("unknown symmetry '{other}'"))),
    };

    // skip comments to the size line
    let mut size_line = None;
    for (idx, raw) in lines.by_ref() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        size_line = Some((idx + 1, line.to_string()));
        break;
    }
    let (size_no, size) = size_line.ok_or_else(|| perr(1, "missing size line"))?;
    let dims: Vec<&str> = size.split_whitespace().collect();

    let parse_usize = |tok: &str, lineno: usize| -> Result<usize> {
        tok.parse::<usize>()
            .map_err(|_| perr(lineno, format!("expected an integer, got '{tok}'")))
    };
    let parse_f64 = |tok: &str, lineno: usize| -> Result<f64> {
        tok.parse::<f64>()
            .map_err(|_| perr(lineno, format!("expected a number, got '{tok}'")))
    };

    match format {
        MmFormat::Coordinate => {
            if dims.len() != 3 {
                return Err(perr(size_no, "coordinate size line must be 'm n nnz'"));
            }
            let m = parse_usize(dims[0], size_no)?;
            let n = parse_usize(dims[1], size_no)?;
            let nnz = parse_usize(dims[2], size_no)?;
            if m != n {
                return Err(perr(size_no, format!("matrix is not square: {m} x {n}")));
            }
            if n == 0 {
                return Err(perr(size_no, "order must be at least 1"));
            }
            let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
            let mut seen = 0usize;
            for (idx, raw) in lines {
                let lineno = idx + 1;
                let line = raw.trim();
                if line.is_empty() || line.starts_with('%') {
                    continue;
                }
                let toks: Vec<&str> = line.split_whitespace().collect();
                let want = if field == MmField::Complex { 4 } else { 3 };
                if toks.len() != want {
                    return Err(perr(
                        lineno,
                        format!("expected {want} fields on a coordinate entry line"),
                    ));
                }
                let i = parse_usize(toks[0], lineno)?;
                let j = parse_usize(toks[1], lineno)?;
                if i < 1 || i > n || j < 1 || j > n {
                    return Err(perr(
                        lineno,
                        format!("index ({i}, {j}) out of range for order {n}"),
                    ));
                }
                let re = parse_f64(toks[2], lineno)?;
                let im = if field == MmField::Complex {
                    parse_f64(toks[3], lineno)?
                } else {
                    0.0
                };
                let v = Complex64::new(re, im);
                let (i, j) = (i - 1, j - 1);
                entries[i * n + j] += v;
                if i != j {
                    match symmetry {
                        MmSymmetry::General => {}
                        MmSymmetry::Symmetric => entries[j * n + i] += v,
                        MmSymmetry::Hermitian => entries[j * n + i] += v.conj(),
                        MmSymmetry::SkewSymmetric => entries[j * n + i] -= v,
                    }
                } else if symmetry == MmSymmetry::SkewSymmetric {
                    return Err(perr(
                        lineno,
                        "skew-symmetric storage holds no diagonal entries",
                    ));
                }
                seen += 1;
            }
            if seen != nnz {
                return Err(perr(
                    size_no,
                    format!("size line declares {nnz} entries, file has {seen}"),
                ));
            }
            ComplexMatrix::new(n, entries)
        }
        MmFormat::Array => {
            if dims.len() != 2 {
                return Err(perr(size_no, "array size line must be 'm n'"));
            }
            let m = parse_usize(dims[0], size_no)?;
            let n = parse_usize(dims[1], size_no)?;
            if m != n {
                return Err(perr(size_no, format!("matrix is not square: {m} x {n}")));
            }
            if n == 0 {
                return Err(perr(size_no, "order must be at least 1"));
            }
            // column-major positions implied by the symmetry
            let positions: Vec<(usize, usize)> = match symmetry {
                MmSymmetry::General => (0..n)
                    .flat_map(|j| (0..n).map(move |i| (i, j)))
                    .collect(),
                MmSymmetry::Symmetric | MmSymmetry::Hermitian => (0..n)
                    .flat_map(|j| (j..n).map(move |i| (i, j)))
                    .collect(),
                MmSymmetry::SkewSymmetric => (0..n)
                    .flat_map(|j| (j + 1..n).map(move |i| (i, j)))
                    .collect(),
            };
            let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
            let mut pos = 0usize;
            let mut last_line = size_no;
            for (idx, raw) in lines {
                let lineno = idx + 1;
                let line = raw.trim();
                if line.is_empty() || line.starts_with('%') {
                    continue;
                }
                let toks: Vec<&str> = line.split_whitespace().collect();
                let want = if field == MmField::Complex { 2 } else { 1 };
                if toks.len() != want {
                    return Err(perr(
                        lineno,
                        format!("expected {want} numbers on an array value line"),
                    ));
                }
                if pos >= positions.len() {
                    return Err(perr(lineno, "more values than the size line declares"));
                }
                let re = parse_f64(toks[0], lineno)?;
                let im = if field == MmField::Complex {
                    parse_f64(toks[1], lineno)?
                } else {
                    0.0
                };
                let v = Complex64::new(re, im);
                let (i, j) = positions[pos];
                entries[i * n + j] = v;
                if i != j {
                    match symmetry {
                        MmSymmetry::General => {}
                        MmSymmetry::Symmetric => entries[j * n + i] = v,
                        MmSymmetry::Hermitian => entries[j * n + i] = v.conj(),
                        MmSymmetry::SkewSymmetric => entries[j * n + i] = -v,
                    }
                }
                pos += 1;
                last_line = lineno;
            }
            if pos != positions.len() {
                return Err(perr(
                    last_line,
                    format!(
                        "array body has {pos} values, the header implies {}",
                        positions.len()
                    ),
                ));
            }
            ComplexMatrix::new(n, entries)
        }
    }
}

/// Serializes as array/complex/general with shortest round-trip floats.
pub fn write_matrix_market(a: &ComplexMatrix) -> String {
    let n = a.order();
    let mut out = String::new();
    out.push_str("%%MatrixMarket matrix array complex general\n");
    out.push_str(&format!("{n} {n}\n"));
    for j in 0..n {
        for i in 0..n {
            let z = a.get(i, j);
            out.push_str(&format!("{} {}\n", z.re, z.im));
        }
    }
    out
}

/// Reads a spectrum file: one "re im" pair per line; blank lines and lines
/// starting with '#' or '%' are skipped.
pub fn parse_spectrum(text: &str) -> Result<Vec<Complex64>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(perr(idx + 1, "expected 're im' on each spectrum line"));
        }
        let re: f64 = toks[0]
            .parse()
            .map_err(|_| perr(idx + 1, "bad real part"))?;
        let im: f64 = toks[1]
            .parse()
            .map_err(|_| perr(idx + 1, "bad imaginary part"))?;
        out.push(Complex64::new(re, im));
    }
    Ok(out)
}
