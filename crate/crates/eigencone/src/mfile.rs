//! Matrix input files: JSON with exact scalars. A scalar is a decimal or
//! rational string ("0.15", "3/2", "1e-3"), an integer, an interval pair
//! [lo, hi] of those, or a complex object {re, im} whose parts are any of
//! the former. Decimals parse to exact rationals, never through floats.

use crate::exact::{parse_decimal, QIv, QRect, Rat, ScalarError};
use crate::linalg::IMatrix;
use num_traits::Signed;
use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid matrix file: {0}")]
    Invalid(String),
}

impl From<ScalarError> for MFileError {
    fn from(e: ScalarError) -> Self {
        MFileError::Invalid(e.to_string())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawReal {
    Number(serde_json::Number),
    Text(String),
    Pair(Vec<RawEndpoint>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawEndpoint {
    Number(serde_json::Number),
    Text(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Real(RawReal),
    Complex { re: RawReal, im: RawReal },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrixFile {
    name: Option<String>,
    n: usize,
    entries: Vec<Vec<RawScalar>>,
    split_k: Option<usize>,
    default_r: Option<String>,
}

/// A parsed input: the matrix (split attached when the file has one), the
/// file's suggested cone scale, and a digest of the raw bytes for reports.
#[derive(Debug, Clone)]
pub struct MatrixInput {
    pub name: String,
    pub matrix: IMatrix,
    pub default_r: Option<Rat>,
    pub digest: String,
}

fn number_to_rat(n: &serde_json::Number, at: &str) -> Result<Rat, MFileError> {
    if let Some(i) = n.as_i64() {
        Ok(Rat::from_integer(i.into()))
    } else {
        Err(MFileError::Invalid(format!(
            "{at}: float literals are not exact; quote decimals as strings, e.g. \"{n}\""
        )))
    }
}

fn endpoint_to_rat(e: &RawEndpoint, at: &str) -> Result<Rat, MFileError> {
    match e {
        RawEndpoint::Number(n) => number_to_rat(n, at),
        RawEndpoint::Text(s) => {
            parse_decimal(s).map_err(|err| MFileError::Invalid(format!("{at}: {err}")))
        }
    }
}

fn real_to_qiv(r: &RawReal, at: &str) -> Result<QIv, MFileError> {
    match r {
        RawReal::Number(n) => Ok(QIv::point(number_to_rat(n, at)?)),
        RawReal::Text(s) => Ok(QIv::point(
            parse_decimal(s).map_err(|err| MFileError::Invalid(format!("{at}: {err}")))?,
        )),
        RawReal::Pair(pair) => {
            if pair.len() != 2 {
                return Err(MFileError::Invalid(format!(
                    "{at}: an interval needs exactly two endpoints, found {}",
                    pair.len()
                )));
            }
            let lo = endpoint_to_rat(&pair[0], at)?;
            let hi = endpoint_to_rat(&pair[1], at)?;
            if lo > hi {
                return Err(MFileError::Invalid(format!("{at}: interval endpoints are reversed")));
            }
            Ok(QIv::new(lo, hi))
        }
    }
}

fn scalar_to_qrect(s: &RawScalar, at: &str) -> Result<QRect, MFileError> {
    match s {
        RawScalar::Real(r) => Ok(QRect::real(real_to_qiv(r, at)?)),
        RawScalar::Complex { re, im } => {
            Ok(QRect::new(real_to_qiv(re, at)?, real_to_qiv(im, at)?))
        }
    }
}

/// FNV-1a over the raw input bytes, hex-tagged for the report.
pub fn digest(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("fnv1a64:{h:016x}")
}

/// Parse matrix-file JSON. `fallback_name` names the input when the file
/// itself does not.
pub fn parse_matrix_file(text: &str, fallback_name: &str) -> Result<MatrixInput, MFileError> {
    let raw: RawMatrixFile = serde_json::from_str(text).map_err(|e| MFileError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let n = raw.n;
    if n == 0 {
        return Err(MFileError::Invalid("n must be at least 1".into()));
    }
    if raw.entries.len() != n {
        return Err(MFileError::Invalid(format!(
            "expected {n} rows, found {}",
            raw.entries.len()
        )));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in raw.entries.iter().enumerate() {
        if row.len() != n {
            return Err(MFileError::Invalid(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        for (j, s) in row.iter().enumerate() {
            let at = format!("entry ({},{})", i + 1, j + 1);
            entries.push(scalar_to_qrect(s, &at)?);
        }
    }
    let mut matrix =
        IMatrix::new(n, n, entries).map_err(|e| MFileError::Invalid(e.to_string()))?;
    if let Some(k) = raw.split_k {
        if k == 0 || k >= n {
            return Err(MFileError::Invalid(format!(
                "split_k = {k} must satisfy 1 ≤ k ≤ {}",
                n - 1
            )));
        }
        matrix = matrix.with_split(k).map_err(|e| MFileError::Invalid(e.to_string()))?;
    }
    let default_r = match &raw.default_r {
        Some(s) => {
            let r = parse_decimal(s)
                .map_err(|e| MFileError::Invalid(format!("default_r: {e}")))?;
            if !r.is_positive() {
                return Err(MFileError::Invalid("default_r must be positive".into()));
            }
            Some(r)
        }
        None => None,
    };
    Ok(MatrixInput {
        name: raw.name.unwrap_or_else(|| fallback_name.to_string()),
        matrix,
        default_r,
        digest: digest(text.as_bytes()),
    })
}

/// Read and parse a matrix file from disk.
pub fn load_matrix_file(path: &Path) -> Result<MatrixInput, MFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| MFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    parse_matrix_file(&text, &stem)
}
