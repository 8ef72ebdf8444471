//! Point-set file I/O.
//!
//! CSV: one point per line, comma-separated coordinates, no header; the
//! dimension is inferred from the first line. JSON: an object with optional
//! `p`/`n` fields (validated against the data when present), a `points`
//! array of arrays, and an optional `meta` object.
//!
//! All numbers are written in decimal with 17 significant digits, which
//! round-trips `f64` exactly.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use isoplex::PointSet;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    Csv,
    Json,
}

/// A parsed input file: the points plus the format and content digest.
pub struct LoadedPoints {
    pub set: PointSet,
    pub format: FileFormat,
    pub digest: String,
    pub path: PathBuf,
}

#[derive(Serialize)]
pub struct GenerateMeta {
    pub method: &'static str,
    pub sigma2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Deserialize)]
struct PointFileIn {
    #[serde(default)]
    p: Option<usize>,
    #[serde(default)]
    n: Option<usize>,
    points: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct PointFileOut<'a> {
    p: usize,
    n: usize,
    points: Vec<&'a [f64]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<&'a GenerateMeta>,
}

/// `f64` as decimal with 17 significant digits (round-trip exact).
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// serde_json formatter that writes floats with 17 significant digits.
pub struct SigFigFormatter;

impl serde_json::ser::Formatter for SigFigFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes any value as compact JSON with the 17-significant-digit rule.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    String::from_utf8(out).expect("serialized JSON is UTF-8")
}

fn detect_format(path: &Path, bytes: &[u8]) -> FileFormat {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .as_deref()
    {
        Some("json") => FileFormat::Json,
        Some("csv") => FileFormat::Csv,
        _ => {
            // sniff: JSON documents open with an object brace
            let first = bytes.iter().find(|b| !b.is_ascii_whitespace());
            if first == Some(&b'{') {
                FileFormat::Json
            } else {
                FileFormat::Csv
            }
        }
    }
}

pub fn read_point_file(path: &Path) -> Result<LoadedPoints, CliError> {
    let bytes =
        std::fs::read(path).map_err(|err| CliError::Io(format!("{}: {err}", path.display())))?;
    let format = detect_format(path, &bytes);
    let set = match format {
        FileFormat::Csv => parse_csv(path, &bytes)?,
        FileFormat::Json => parse_json(path, &bytes)?,
    };
    Ok(LoadedPoints {
        set,
        format,
        digest: digest(&bytes),
        path: path.to_path_buf(),
    })
}

fn parse_error(path: &Path, detail: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{}: {detail}", path.display()))
}

fn parse_csv(path: &Path, bytes: &[u8]) -> Result<PointSet, CliError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| parse_error(path, "file is not valid UTF-8"))?;
    let mut lines: Vec<&str> = text.split('\n').map(|l| l.trim_end_matches('\r')).collect();
    while lines.last().is_some_and(|l| l.trim().is_empty()) {
        lines.pop();
    }
    if lines.is_empty() {
        return Err(parse_error(path, "line 1: no points"));
    }
    let mut points = Vec::with_capacity(lines.len());
    let mut dim = 0usize;
    for (idx, line) in lines.iter().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            return Err(parse_error(path, format!("line {lineno}: empty line")));
        }
        let mut coords = Vec::new();
        for (col, token) in line.split(',').enumerate() {
            let value: f64 = token.trim().parse().map_err(|_| {
                parse_error(
                    path,
                    format!("line {lineno}: field {}: invalid number {token:?}", col + 1),
                )
            })?;
            if !value.is_finite() {
                return Err(parse_error(
                    path,
                    format!("line {lineno}: field {}: non-finite value", col + 1),
                ));
            }
            coords.push(value);
        }
        if idx == 0 {
            dim = coords.len();
        } else if coords.len() != dim {
            return Err(parse_error(
                path,
                format!(
                    "line {lineno}: expected {dim} coordinates, found {}",
                    coords.len()
                ),
            ));
        }
        points.push(coords);
    }
    PointSet::from_points(points).map_err(|err| parse_error(path, err))
}

fn parse_json(path: &Path, bytes: &[u8]) -> Result<PointSet, CliError> {
    let file: PointFileIn =
        serde_json::from_slice(bytes).map_err(|err| parse_error(path, err))?;
    let set = PointSet::from_points(file.points).map_err(|err| parse_error(path, err))?;
    if let Some(p) = file.p {
        if p != set.dim() {
            return Err(parse_error(
                path,
                format!("field p = {p} does not match point dimension {}", set.dim()),
            ));
        }
    }
    if let Some(n) = file.n {
        if n != set.len() {
            return Err(parse_error(
                path,
                format!("field n = {n} does not match point count {}", set.len()),
            ));
        }
    }
    Ok(set)
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::with_capacity(7 + 2 * hash.len());
    out.push_str("sha256:");
    for byte in hash {
        let _ = write!(out, "{byte:02x}");
    }
    out
}

pub fn render_points(points: &PointSet, format: FileFormat, meta: Option<&GenerateMeta>) -> String {
    match format {
        FileFormat::Csv => {
            let mut out = String::new();
            for point in points.iter() {
                let line: Vec<String> = point.iter().copied().map(fmt_f64).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
            out
        }
        FileFormat::Json => {
            let doc = PointFileOut {
                p: points.dim(),
                n: points.len(),
                points: points.iter().collect(),
                meta,
            };
            let mut text = to_json_string(&doc);
            text.push('\n');
            text
        }
    }
}

pub fn write_point_file(
    out: Option<&Path>,
    points: &PointSet,
    format: FileFormat,
    meta: Option<&GenerateMeta>,
) -> Result<(), CliError> {
    write_bytes(out, render_points(points, format, meta).as_bytes())
}

pub fn write_bytes(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|err| CliError::Io(format!("{}: {err}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|err| CliError::Io(format!("stdout: {err}")))
        }
    }
}
