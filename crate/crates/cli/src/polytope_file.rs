//! JSON polytope description:
//!
//! ```json
//! {"dimension": 3, "vertices": [[x, y, z], ...], "edge_norm": 1.0}
//! ```
//!
//! `edge_norm` is optional and defaults to 1.

use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use widthlab::Polytope;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub dimension: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_norm: Option<f64>,
}

impl PolytopeFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("malformed polytope JSON")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read polytope file {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn to_polytope(&self) -> Result<Polytope> {
        Ok(Polytope::new(
            self.dimension,
            &self.vertices,
            self.edge_norm.unwrap_or(1.0),
        )?)
    }
}
