use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::polytope::{CombinatorialPolytope, PolytopeFile};
use crate::raysystem::{RayDivisorSystem, RaySet, SystemFile};

/// A system, a simple cross-section polytope, and the ray attached to each
/// facet (in facet order). `perp` lists rays orthogonal to the whole face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFile {
    pub system: SystemFile,
    pub polytope: PolytopeFile,
    pub facet_rays: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub perp: Vec<String>,
}

impl DiagramFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    /// The system, the polytope, facet ray indices and the perp set.
    pub fn build<T: Scalar>(&self) -> Result<(RayDivisorSystem<T>, CombinatorialPolytope, Vec<usize>, RaySet)> {
        let s = self.system.build::<T>()?;
        let p = self.polytope.build()?;
        let facet_rays = self.facet_rays.iter().map(|id| s.ray_index(id)).collect::<Result<Vec<_>>>()?;
        let perp = s.ray_set(&self.perp.iter().map(String::as_str).collect::<Vec<_>>())?;
        Ok((s, p, facet_rays, perp))
    }
}
