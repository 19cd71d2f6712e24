use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::CombinatorialPolytope;

/// On-disk polytope: `{ "dim", "vertices", "facets" }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<i64>,
    pub facets: Vec<Vec<i64>>,
}

impl PolytopeFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polytope serializes")
    }

    pub fn build(&self) -> Result<CombinatorialPolytope> {
        CombinatorialPolytope::new(self.dim, self.vertices.clone(), self.facets.clone())
    }
}

impl From<&CombinatorialPolytope> for PolytopeFile {
    fn from(p: &CombinatorialPolytope) -> Self {
        let ids = p.vertex_ids();
        Self {
            dim: p.dim(),
            vertices: ids.to_vec(),
            facets: p.facets().iter().map(|f| f.iter().map(|i| ids[i]).collect()).collect(),
        }
    }
}
