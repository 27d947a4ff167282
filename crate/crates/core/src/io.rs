//! Line-delimited triple records.
//!
//! Each non-empty line is one JSON object:
//!
//! ```text
//! {"id":"t1","dimension":2,"vertices":[[0,0],[1,0],[0,1]],"tags":["demo"]}
//! ```
//!
//! `dimension` and `tags` are optional on input. Numbers are written with 17
//! significant digits so that reading back reproduces every coordinate bit
//! for bit.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::GeometryError;
use crate::geometry::Triple;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: vertex {vertex} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        line: usize,
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl IoError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        IoError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            IoError::Parse { line, .. } | IoError::DimensionMismatch { line, .. } => Some(*line),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripleRecord {
    pub id: String,
    pub dimension: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tags: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    id: String,
    #[serde(default)]
    dimension: Option<usize>,
    vertices: Vec<Vec<f64>>,
    #[serde(default)]
    tags: Option<Vec<String>>,
}

impl TripleRecord {
    pub fn from_triple(id: impl Into<String>, x: &Triple) -> Self {
        Self {
            id: id.into(),
            dimension: x.dim(),
            vertices: x.rows(),
            tags: None,
        }
    }

    pub fn with_tags(mut self, tags: Vec<String>) -> Self {
        self.tags = Some(tags);
        self
    }

    pub fn triple(&self) -> Result<Triple, GeometryError> {
        Triple::from_rows(&self.vertices)
    }

    /// Parses one line; `line` is the 1-based line number used in errors.
    pub fn parse_line(text: &str, line: usize) -> Result<Self, IoError> {
        let raw: RawRecord = serde_json::from_str(text).map_err(|e| IoError::Parse {
            line,
            message: e.to_string(),
        })?;
        if raw.vertices.len() != 3 {
            return Err(IoError::Parse {
                line,
                message: format!("expected 3 vertices, found {}", raw.vertices.len()),
            });
        }
        let width = raw.dimension.unwrap_or(raw.vertices[0].len());
        if width == 0 {
            return Err(IoError::Parse {
                line,
                message: "dimension must be positive".into(),
            });
        }
        for (vertex, row) in raw.vertices.iter().enumerate() {
            if row.len() != width {
                return Err(IoError::DimensionMismatch {
                    line,
                    vertex,
                    expected: width,
                    found: row.len(),
                });
            }
        }
        Ok(Self {
            id: raw.id,
            dimension: width,
            vertices: raw.vertices,
            tags: raw.tags,
        })
    }

    pub fn to_line(&self) -> String {
        to_json_line(self)
    }
}

/// Writes floats as `{:.16e}` (17 significant digits).
struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
}

/// Compact JSON of `value` with full-precision floats.
pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FullPrecision);
    value
        .serialize(&mut ser)
        .expect("serializing plain data to memory cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Parses every non-blank line of `text`, stopping at the first error.
pub fn parse_triples(text: &str) -> Result<Vec<TripleRecord>, IoError> {
    parse_lines(text).map(|(_, r)| r).collect()
}

/// Parses every non-blank line, yielding the line number with each outcome.
pub fn parse_lines(text: &str) -> impl Iterator<Item = (usize, Result<TripleRecord, IoError>)> + '_ {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, TripleRecord::parse_line(l, i + 1)))
}

pub fn read_to_string(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|e| IoError::io(path, e))
}

pub fn read_triples(path: &Path) -> Result<Vec<TripleRecord>, IoError> {
    parse_triples(&read_to_string(path)?)
}

pub fn format_lines<T: Serialize>(items: &[T]) -> String {
    items.iter().map(|r| to_json_line(r) + "\n").collect()
}

pub fn write_lines<T: Serialize>(path: &Path, items: &[T]) -> Result<(), IoError> {
    fs::write(path, format_lines(items)).map_err(|e| IoError::io(path, e))
}

pub fn write_triples(path: &Path, records: &[TripleRecord]) -> Result<(), IoError> {
    write_lines(path, records)
}
