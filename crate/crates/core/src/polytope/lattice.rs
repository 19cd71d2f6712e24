use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::polytope::BitSet;

/// A nonempty face: its vertex set (indices into the vertex list) and dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: BitSet,
    pub dim: usize,
    /// Facets (by index) containing this face.
    pub facets: BitSet,
}

/// Face counts indexed by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector(pub Vec<usize>);

#[derive(Clone, Debug)]
pub struct CombinatorialPolytope {
    dim: usize,
    vertex_ids: Vec<i64>,
    facets: Vec<BitSet>,
    faces: Vec<Face>,
    index: HashMap<BitSet, usize>,
}

impl CombinatorialPolytope {
    /// Builds the polytope from vertex ids and facets given as vertex-id lists,
    /// then derives and checks its face lattice.
    pub fn new(dim: usize, vertex_ids: Vec<i64>, facets: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Inconsistent("dimension must be positive".into()));
        }
        let pos: HashMap<i64, usize> = vertex_ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if pos.len() != vertex_ids.len() {
            return Err(Error::Inconsistent("duplicate vertex id".into()));
        }
        let nv = vertex_ids.len();
        let mut sets = Vec::with_capacity(facets.len());
        for (f, facet) in facets.iter().enumerate() {
            let mut s = BitSet::new(nv);
            for v in facet {
                let &i = pos.get(v).ok_or_else(|| Error::UnknownId(format!("vertex {v} in facet {f}")))?;
                s.insert(i);
            }
            if s.is_empty() || s.len() == nv {
                return Err(Error::Inconsistent(format!("facet {f} is empty or the whole polytope")));
            }
            sets.push(s);
        }
        for v in 0..nv {
            let k = sets.iter().filter(|s| s.contains(v)).count();
            if k < dim {
                return Err(Error::Inconsistent(format!(
                    "vertex {} lies in {k} facets, fewer than the dimension {dim}",
                    vertex_ids[v]
                )));
            }
        }
        let mut p = Self { dim, vertex_ids, facets: sets, faces: Vec::new(), index: HashMap::new() };
        p.build_lattice()?;
        Ok(p)
    }

    fn build_lattice(&mut self) -> Result<()> {
        let nv = self.vertex_ids.len();
        let top = BitSet::full(nv);
        let mut seen: HashMap<BitSet, ()> = HashMap::new();
        seen.insert(top.clone(), ());
        let mut frontier = vec![top];
        while let Some(face) = frontier.pop() {
            for f in &self.facets {
                let g = face.intersection(f);
                if !g.is_empty() && !seen.contains_key(&g) {
                    seen.insert(g.clone(), ());
                    frontier.push(g);
                }
            }
        }
        let mut sets: Vec<BitSet> = seen.into_keys().collect();
        sets.sort_by_key(|s| s.len());
        // Dimension is the length of the longest chain below a face; the covers
        // of a face are the maximal sets among its intersections with facets.
        let mut dims: HashMap<BitSet, usize> = HashMap::new();
        for s in &sets {
            let covers = self.covers(s);
            let d = match covers.iter().map(|c| dims[c]).max() {
                None => 0,
                Some(m) => m + 1,
            };
            if let Some(bad) = covers.iter().find(|c| dims[*c] + 1 != d) {
                return Err(Error::Inconsistent(format!(
                    "face of size {} has covers of different dimensions ({} and {})",
                    s.len(),
                    dims[bad],
                    d - 1
                )));
            }
            dims.insert(s.clone(), d);
        }
        let full = BitSet::full(nv);
        if dims[&full] != self.dim {
            return Err(Error::Inconsistent(format!(
                "face lattice has rank {} but the declared dimension is {}",
                dims[&full], self.dim
            )));
        }
        for (i, f) in self.facets.iter().enumerate() {
            if dims[f] + 1 != self.dim {
                return Err(Error::Inconsistent(format!("facet {i} has dimension {}", dims[f])));
            }
        }
        for v in 0..nv {
            if dims.get(&BitSet::from_indices(nv, [v])) != Some(&0) {
                return Err(Error::Inconsistent(format!("vertex {} is not a face", self.vertex_ids[v])));
            }
        }
        let nf = self.facets.len();
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|s| {
                let facets = BitSet::from_indices(nf, (0..nf).filter(|&j| s.is_subset(&self.facets[j])));
                Face { dim: dims[&s], vertices: s, facets }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        self.index = faces.iter().enumerate().map(|(i, f)| (f.vertices.clone(), i)).collect();
        self.faces = faces;
        Ok(())
    }

    fn covers(&self, s: &BitSet) -> Vec<BitSet> {
        let mut cands: Vec<BitSet> = self
            .facets
            .iter()
            .filter(|f| !s.is_subset(f))
            .map(|f| s.intersection(f))
            .filter(|g| !g.is_empty())
            .collect();
        cands.sort();
        cands.dedup();
        cands.iter().filter(|g| !cands.iter().any(|h| h != *g && g.is_subset(h))).cloned().collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_ids(&self) -> &[i64] {
        &self.vertex_ids
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn facets(&self) -> &[BitSet] {
        &self.facets
    }

    /// All nonempty faces, ordered by dimension.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(move |(_, f)| f.dim == d)
    }

    pub fn face_index(&self, vertices: &BitSet) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    /// Every vertex lies in exactly `dim` facets.
    pub fn is_simple(&self) -> bool {
        (0..self.num_vertices()).all(|v| self.facets.iter().filter(|f| f.contains(v)).count() == self.dim)
    }

    /// Facet indices through a vertex index.
    pub fn facets_at(&self, v: usize) -> Vec<usize> {
        (0..self.facets.len()).filter(|&j| self.facets[j].contains(v)).collect()
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0; self.dim + 1];
        for f in &self.faces {
            counts[f.dim] += 1;
        }
        FVector(counts)
    }

    /// Faces with their vertex-id sets and dimensions.
    pub fn face_lattice(&self) -> Vec<(Vec<i64>, usize)> {
        self.faces.iter().map(|f| (f.vertices.iter().map(|i| self.vertex_ids[i]).collect(), f.dim)).collect()
    }

    /// For each dimension, the number of faces of that dimension in each face.
    pub(crate) fn sub_face_counts(&self, i: usize, k: usize) -> BTreeMap<usize, usize> {
        self.faces_of_dim(k)
            .map(|(idx, f)| {
                let n = self.faces_of_dim(i).filter(|(_, g)| g.vertices.is_subset(&f.vertices)).count();
                (idx, n)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cube, simplex};

    #[test]
    fn triangle_lattice() {
        let t = simplex(2);
        assert_eq!(t.f_vector(), FVector(vec![3, 3, 1]));
        assert!(t.is_simple());
    }

    #[test]
    fn cube_f_vectors() {
        assert_eq!(cube(3).f_vector(), FVector(vec![8, 12, 6, 1]));
        assert_eq!(cube(4).f_vector(), FVector(vec![16, 32, 24, 8, 1]));
    }

    #[test]
    fn codimension_equals_facet_count_on_simple_polytopes() {
        for p in [simplex(4), cube(4)] {
            for f in p.faces() {
                assert_eq!(f.facets.len(), p.dim() - f.dim);
            }
        }
    }

    #[test]
    fn square_pyramid_is_not_simple() {
        // Apex 4 over the square 0-1-2-3.
        let p = CombinatorialPolytope::new(
            3,
            vec![0, 1, 2, 3, 4],
            vec![vec![0, 1, 2, 3], vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![3, 0, 4]],
        )
        .unwrap();
        assert!(!p.is_simple());
        assert_eq!(p.f_vector(), FVector(vec![5, 8, 5, 1]));
    }

    #[test]
    fn inconsistent_incidence_is_rejected() {
        // Declared as a 3-polytope but the incidence is a triangle.
        assert!(CombinatorialPolytope::new(3, vec![0, 1, 2], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).is_err());
        // Facets do not separate vertices 0 and 1.
        assert!(CombinatorialPolytope::new(2, vec![0, 1, 2], vec![vec![0, 1], vec![0, 1, 2]]).is_err());
        assert!(CombinatorialPolytope::new(1, vec![0, 1], vec![vec![0], vec![7]]).is_err());
    }
}
