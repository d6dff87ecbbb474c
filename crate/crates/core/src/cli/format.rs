//! On-disk formats: the JSON matrix document and a CSV export.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "dim": 2,
//!   "name": "U(N=2)",
//!   "basis": "v-eigenbasis",
//!   "entries": [[0.0000000000000000e0, 0.0000000000000000e0], ...]
//! }
//! ```
//!
//! Coefficient and phase-space tables reuse the layout with a `grid_kind`
//! field and a few audit fields. Floats are written with 17 significant
//! digits so output is byte-stable and round-trips exactly; readers accept
//! any JSON number.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;
use serde_json::Value;

use super::CliError;

pub const FORMAT_VERSION: u64 = 1;

/// Basis tag written to generated files.
pub const V_EIGENBASIS: &str = "v-eigenbasis";

/// A float serialized with 17 significant digits.
#[derive(Debug, Clone, Copy)]
pub struct Sig17(pub f64);

pub fn format_sig17(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

impl Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(format_sig17(self.0)).map_err(S::Error::custom)?;
        raw.serialize(s)
    }
}

pub fn pair(z: Complex64) -> [Sig17; 2] {
    [Sig17(z.re), Sig17(z.im)]
}

/// A square complex table plus metadata, as written to disk.
#[derive(Debug, Clone, Serialize)]
pub struct GridDocument {
    pub format_version: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_kind: Option<String>,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Sig17>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<[Sig17; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sum: Option<[Sig17; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real: Option<bool>,
    pub entries: Vec<[Sig17; 2]>,
}

impl GridDocument {
    pub fn matrix(dim: usize, entries: &[Complex64], name: impl Into<String>) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            grid_kind: None,
            dim,
            name: Some(name.into()),
            basis: Some(V_EIGENBASIS.into()),
            family: None,
            residual: None,
            trace: None,
            sum: None,
            real: None,
            entries: entries.iter().copied().map(pair).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("grid document serializes");
        s.push('\n');
        s
    }
}

/// CSV export: one `row,col,re,im` line per entry.
pub fn to_csv(dim: usize, entries: &[Complex64]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["row", "col", "re", "im"])
        .expect("in-memory write");
    for (i, z) in entries.iter().enumerate() {
        w.write_record([
            (i / dim).to_string(),
            (i % dim).to_string(),
            format_sig17(z.re),
            format_sig17(z.im),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

/// A matrix read back from a JSON document.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub dim: usize,
    pub entries: Vec<Complex64>,
    pub name: Option<String>,
    pub basis: Option<String>,
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

fn finite_number(v: &Value, field: &str) -> Result<f64, CliError> {
    let x = v
        .as_f64()
        .ok_or_else(|| malformed(format!("{field}: expected a number, found {v}")))?;
    if !x.is_finite() {
        return Err(malformed(format!("{field}: value is not finite")));
    }
    Ok(x)
}

pub fn parse_matrix_file(text: &str) -> Result<MatrixFile, CliError> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| malformed(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| malformed("top level: expected a JSON object"))?;

    if let Some(v) = obj.get("format_version") {
        match v.as_u64() {
            Some(FORMAT_VERSION) => {}
            _ => return Err(malformed(format!("format_version: unsupported value {v}"))),
        }
    }

    let raw_entries = obj
        .get("entries")
        .ok_or_else(|| malformed("entries: field missing"))?
        .as_array()
        .ok_or_else(|| malformed("entries: expected an array of [re, im] pairs"))?;

    let dim = match obj.get("dim") {
        Some(v) => v
            .as_u64()
            .filter(|&d| d > 0)
            .ok_or_else(|| malformed(format!("dim: expected a positive integer, found {v}")))?
            as usize,
        None => {
            let len = raw_entries.len();
            let d = (len as f64).sqrt().round() as usize;
            if d * d != len || d == 0 {
                return Err(malformed(format!(
                    "entries: {len} entries do not form a square matrix"
                )));
            }
            d
        }
    };

    let expected = dim * dim;
    if raw_entries.len() < expected {
        return Err(malformed(format!(
            "entries: missing entry index {} (dim {dim} needs {expected} entries, found {})",
            raw_entries.len(),
            raw_entries.len()
        )));
    }
    if raw_entries.len() > expected {
        return Err(malformed(format!(
            "entries: found {} entries, matrix is not square with dim {dim} (expected {expected})",
            raw_entries.len()
        )));
    }

    let entries = raw_entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let field = format!("entries[{i}]");
            match e.as_array().map(Vec::as_slice) {
                Some([re, im]) => Ok(Complex64::new(
                    finite_number(re, &format!("{field}[0]"))?,
                    finite_number(im, &format!("{field}[1]"))?,
                )),
                _ => Err(malformed(format!(
                    "{field}: expected a [re, im] pair, found {e}"
                ))),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;

    let text_field = |key: &str| obj.get(key).and_then(Value::as_str).map(str::to_owned);
    Ok(MatrixFile {
        dim,
        entries,
        name: text_field("name"),
        basis: text_field("basis"),
    })
}

pub fn read_matrix_file(path: &Path) -> Result<MatrixFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_matrix_file(&text).map_err(|e| match e {
        CliError::Malformed(msg) => CliError::Malformed(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io_err = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sig17_formatting() {
        assert_eq!(format_sig17(1.0), "1.0000000000000000e0");
        assert_eq!(format_sig17(-0.0), "0.0000000000000000e0");
        assert_eq!(format_sig17(0.1), "1.0000000000000001e-1");
    }

    #[test]
    fn accepts_integer_and_decimal_entries() {
        let m =
            parse_matrix_file(r#"{"dim": 2, "entries": [[1, 0], [0.5, -2], [0, 0], [1e0, 3]]}"#)
                .unwrap();
        assert_eq!(m.dim, 2);
        assert_eq!(m.entries[1], Complex64::new(0.5, -2.0));
    }

    #[test]
    fn diagnostics() {
        let err =
            parse_matrix_file(r#"{"dim": 2, "entries": [[1, 0], [0, 0], [0, 0]]}"#).unwrap_err();
        assert!(err.to_string().contains("missing entry index 3"), "{err}");
        let err = parse_matrix_file(r#"{"dim": 2, "entries": [[1, 0], [0, 0], [0], [0, 0]]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("entries[2]"), "{err}");
        let err = parse_matrix_file(r#"{"entries": [[1, 0], [0, 0], [0, 0]]}"#).unwrap_err();
        assert!(err.to_string().contains("square"), "{err}");
        let err = parse_matrix_file("{\n\"dim\": 2,\n").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
        let err = parse_matrix_file(r#"{"format_version": 7, "entries": [[1, 0]]}"#).unwrap_err();
        assert!(err.to_string().contains("format_version"), "{err}");
    }

    proptest! {
        #[test]
        fn written_matrices_read_back_exactly(values in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 9)) {
            let entries: Vec<Complex64> = values.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
            let text = GridDocument::matrix(3, &entries, "m").to_json();
            let back = parse_matrix_file(&text).unwrap();
            prop_assert_eq!(back.entries, entries);
        }
    }
}
