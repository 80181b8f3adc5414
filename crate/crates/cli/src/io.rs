//! JSON complex files: `{"vertices":[{"label":..,"row":..,"block":..}],"facets":[[..]]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use tvlab_core::{ComplexError, Face, SimplicialComplex, VertexId};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: parse error at byte {offset}: {message}")]
    Parse { path: String, offset: usize, message: String },
    #[error("{path}: {source}")]
    Invalid { path: String, source: ComplexError },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: Vec<VertexRecord>,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexFile {
    /// Facets keep the complex's order, so facet indices in shelling files
    /// refer to the same facets after a round trip.
    pub fn from_complex(c: &SimplicialComplex) -> Self {
        ComplexFile {
            vertices: c
                .vertices()
                .iter()
                .map(|v| VertexRecord {
                    label: v.label.clone(),
                    row: v.row,
                    block: v.block,
                })
                .collect(),
            facets: c.facets().iter().map(Face::vertices).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, ComplexError> {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| VertexId {
                index: i,
                label: v.label.clone(),
                row: v.row,
                block: v.block,
            })
            .collect();
        SimplicialComplex::new(vertices, self.facets.iter().map(|f| Face::from_vertices(f.iter().copied())).collect())
    }
}

/// Byte offset of a 1-based `(line, column)` position.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

/// Parses a JSON document, reporting failures with their byte offset.
pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str, path: &str) -> Result<T, FileError> {
    serde_json::from_str(text).map_err(|e| FileError::Parse {
        path: path.to_string(),
        offset: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    })
}

pub fn read_text(path: &Path) -> Result<String, FileError> {
    std::fs::read_to_string(path).map_err(|source| FileError::Read {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_complex(text: &str, path: &str) -> Result<SimplicialComplex, FileError> {
    let file: ComplexFile = parse_json(text, path)?;
    file.to_complex().map_err(|source| FileError::Invalid {
        path: path.to_string(),
        source,
    })
}

pub fn read_complex(path: &Path) -> Result<SimplicialComplex, FileError> {
    parse_complex(&read_text(path)?, &path.display().to_string())
}

pub fn complex_json(c: &SimplicialComplex) -> String {
    serde_json::to_string(&ComplexFile::from_complex(c)).expect("complex files serialize")
}
