use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::raysystem::RaySet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RayType {
    /// Contracts its divisor to a point.
    TypeI,
    /// Contracts its divisor onto a curve.
    TypeII,
    /// Contracts finitely many curves.
    Small,
}

impl RayType {
    pub fn is_divisorial(self) -> bool {
        self != RayType::Small
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub id: String,
    pub kind: RayType,
    /// Index into the divisor list.
    pub divisor: Option<usize>,
}

/// Typed rays, divisors, the exact pairing `Q[ray][divisor]`, the divisor
/// intersection relation, and optional face structure and anticanonical
/// column.
#[derive(Clone, Debug, PartialEq)]
pub struct RayDivisorSystem<T> {
    rays: Vec<Ray>,
    divisors: Vec<String>,
    pairing: Vec<Vec<T>>,
    meets: Vec<Vec<bool>>,
    faces: Option<Vec<RaySet>>,
    anticanonical: Option<Vec<T>>,
    fano_mode: bool,
    normalized: bool,
    ray_index: HashMap<String, usize>,
    divisor_index: HashMap<String, usize>,
}

impl<T: Scalar> RayDivisorSystem<T> {
    /// Checks shapes and references; semantic invariants are left to
    /// [`validate`](Self::validate).
    pub fn new(rays: Vec<Ray>, divisors: Vec<String>, pairing: Vec<Vec<T>>, meets: &[(usize, usize)]) -> Result<Self> {
        if rays.len() > 64 {
            return Err(Error::Inconsistent(format!("{} rays; at most 64 are supported", rays.len())));
        }
        let mut ray_index = HashMap::new();
        for (i, r) in rays.iter().enumerate() {
            if ray_index.insert(r.id.clone(), i).is_some() {
                return Err(Error::Inconsistent(format!("duplicate ray id {}", r.id)));
            }
            if let Some(d) = r.divisor {
                if d >= divisors.len() {
                    return Err(Error::UnknownId(format!("divisor index {d} of ray {}", r.id)));
                }
            }
        }
        let mut divisor_index = HashMap::new();
        for (i, d) in divisors.iter().enumerate() {
            if divisor_index.insert(d.clone(), i).is_some() {
                return Err(Error::Inconsistent(format!("duplicate divisor id {d}")));
            }
        }
        if pairing.len() != rays.len() {
            return Err(Error::Dimension { expected: rays.len(), found: pairing.len() });
        }
        for row in &pairing {
            if row.len() != divisors.len() {
                return Err(Error::Dimension { expected: divisors.len(), found: row.len() });
            }
        }
        let nd = divisors.len();
        let mut m = vec![vec![false; nd]; nd];
        for &(a, b) in meets {
            if a >= nd || b >= nd {
                return Err(Error::UnknownId(format!("divisor index {} in meets", a.max(b))));
            }
            m[a][b] = true;
            m[b][a] = true;
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        Ok(Self {
            rays,
            divisors,
            pairing,
            meets: m,
            faces: None,
            anticanonical: None,
            fano_mode: false,
            normalized: false,
            ray_index,
            divisor_index,
        })
    }

    pub fn with_faces(mut self, faces: Vec<RaySet>) -> Result<Self> {
        let all = RaySet::all(self.rays.len());
        if let Some(f) = faces.iter().find(|f| !f.is_subset(all)) {
            return Err(Error::UnknownId(format!("face {f} mentions a ray index out of range")));
        }
        self.faces = Some(faces);
        Ok(self)
    }

    pub fn without_faces(mut self) -> Self {
        self.faces = None;
        self
    }

    pub fn with_anticanonical(mut self, a: Vec<T>) -> Result<Self> {
        if a.len() != self.rays.len() {
            return Err(Error::Dimension { expected: self.rays.len(), found: a.len() });
        }
        self.anticanonical = Some(a);
        Ok(self)
    }

    pub fn with_fano_mode(mut self, on: bool) -> Self {
        self.fano_mode = on;
        self
    }

    /// Requests the audit that every type II ray pairs to `-1` with its
    /// divisor and to `1` with the anticanonical class.
    pub fn with_normalized(mut self, on: bool) -> Self {
        self.normalized = on;
        self
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &Ray {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn divisors(&self) -> &[String] {
        &self.divisors
    }

    pub fn num_divisors(&self) -> usize {
        self.divisors.len()
    }

    pub fn ray_index(&self, id: &str) -> Result<usize> {
        self.ray_index.get(id).copied().ok_or_else(|| Error::UnknownId(format!("ray {id}")))
    }

    pub fn divisor_index(&self, id: &str) -> Result<usize> {
        self.divisor_index.get(id).copied().ok_or_else(|| Error::UnknownId(format!("divisor {id}")))
    }

    pub fn ray_set(&self, ids: &[&str]) -> Result<RaySet> {
        ids.iter().try_fold(RaySet::EMPTY, |s, id| Ok(s.with(self.ray_index(id)?)))
    }

    pub fn ids(&self, set: RaySet) -> Vec<String> {
        set.iter().map(|i| self.rays[i].id.clone()).collect()
    }

    /// `Q[ray][divisor]`.
    pub fn q(&self, ray: usize, divisor: usize) -> &T {
        &self.pairing[ray][divisor]
    }

    pub fn pairing(&self) -> &[Vec<T>] {
        &self.pairing
    }

    /// `Q[r1][D(r2)]`; `r2` must be divisorial.
    pub fn q_rays(&self, r1: usize, r2: usize) -> &T {
        &self.pairing[r1][self.rays[r2].divisor.expect("divisorial ray")]
    }

    pub fn divisor_of(&self, ray: usize) -> Option<usize> {
        self.rays[ray].divisor
    }

    pub fn kind(&self, ray: usize) -> RayType {
        self.rays[ray].kind
    }

    /// Divisor intersection; a divisor meets itself.
    pub fn meets(&self, d1: usize, d2: usize) -> bool {
        self.meets[d1][d2]
    }

    /// Whether the divisors of two divisorial rays intersect (a shared divisor counts).
    pub fn rays_meet(&self, r1: usize, r2: usize) -> bool {
        match (self.rays[r1].divisor, self.rays[r2].divisor) {
            (Some(a), Some(b)) => self.meets[a][b],
            _ => false,
        }
    }

    pub fn meets_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.divisors.len();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| self.meets[a][b]).collect()
    }

    pub fn faces(&self) -> Option<&[RaySet]> {
        self.faces.as_deref()
    }

    pub fn anticanonical(&self) -> Option<&[T]> {
        self.anticanonical.as_deref()
    }

    pub fn fano_mode(&self) -> bool {
        self.fano_mode
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    pub fn all_rays(&self) -> RaySet {
        RaySet::all(self.rays.len())
    }

    pub fn divisorial_rays(&self) -> RaySet {
        RaySet::from_indices((0..self.rays.len()).filter(|&i| self.rays[i].kind.is_divisorial()))
    }

    pub fn of_kind(&self, kind: RayType) -> RaySet {
        RaySet::from_indices((0..self.rays.len()).filter(|&i| self.rays[i].kind == kind))
    }

    /// Rays (by index) whose divisor is `d`.
    pub fn rays_on_divisor(&self, d: usize) -> Vec<usize> {
        (0..self.rays.len()).filter(|&i| self.rays[i].divisor == Some(d)).collect()
    }

    pub fn require_divisorial(&self, set: RaySet) -> Result<()> {
        match set.iter().find(|&i| !self.rays[i].kind.is_divisorial() || self.rays[i].divisor.is_none()) {
            Some(i) => Err(Error::Precondition(format!("ray {} has no divisor", self.rays[i].id))),
            None => Ok(()),
        }
    }

    /// Whether some listed face contains `set`.
    pub fn is_extremal(&self, set: RaySet) -> Result<bool> {
        let faces = self.faces.as_ref().ok_or_else(|| Error::Missing("face structure".into()))?;
        Ok(set.is_empty() || faces.iter().any(|f| set.is_subset(*f)))
    }

    /// The inclusion-maximal listed faces.
    pub fn maximal_faces(&self) -> Result<Vec<RaySet>> {
        let faces = self.faces.as_ref().ok_or_else(|| Error::Missing("face structure".into()))?;
        let mut out: Vec<RaySet> =
            faces.iter().copied().filter(|f| !faces.iter().any(|g| g != f && f.is_subset(*g))).collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Converts the scalar type, e.g. from small to arbitrary precision rationals.
    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> RayDivisorSystem<U> {
        RayDivisorSystem {
            rays: self.rays.clone(),
            divisors: self.divisors.clone(),
            pairing: self.pairing.iter().map(|r| r.iter().map(&f).collect()).collect(),
            meets: self.meets.clone(),
            faces: self.faces.clone(),
            anticanonical: self.anticanonical.as_ref().map(|a| a.iter().map(&f).collect()),
            fano_mode: self.fano_mode,
            normalized: self.normalized,
            ray_index: self.ray_index.clone(),
            divisor_index: self.divisor_index.clone(),
        }
    }

    /// Replaces one pairing entry; used to build variants of an instance.
    pub fn with_pairing_entry(mut self, ray: usize, divisor: usize, value: T) -> Self {
        self.pairing[ray][divisor] = value;
        self
    }
}
