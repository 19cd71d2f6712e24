use crate::error::{check_dim, precondition, Error, Result};
use crate::exact::{RVector, Scalar, TrilinearForm};
use crate::raysystem::{RayDivisorSystem, RaySet};

#[derive(Clone, Debug, PartialEq)]
pub struct RealizedModel<T> {
    rho: usize,
    ray_vectors: Vec<RVector<T>>,
    divisor_vectors: Vec<RVector<T>>,
    form: Option<TrilinearForm<T>>,
    anticanonical: Option<RVector<T>>,
    base: RayDivisorSystem<T>,
}

/// A nef element with the rays it kills and, when a form is known, its cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefCertificate<T> {
    pub vector: RVector<T>,
    pub orthogonal_rays: RaySet,
    pub cube: Option<T>,
    pub degenerate: bool,
}

impl<T: Scalar> RealizedModel<T> {
    /// Assembles a model without checking consistency; see [`Self::validate`].
    pub fn from_parts(
        base: RayDivisorSystem<T>,
        rho: usize,
        ray_vectors: Vec<RVector<T>>,
        divisor_vectors: Vec<RVector<T>>,
    ) -> Result<Self> {
        check_dim(base.num_rays(), ray_vectors.len())?;
        check_dim(base.num_divisors(), divisor_vectors.len())?;
        for v in ray_vectors.iter().chain(&divisor_vectors) {
            check_dim(rho, v.dim())?;
        }
        Ok(RealizedModel { rho, ray_vectors, divisor_vectors, form: None, anticanonical: None, base })
    }

    /// Like [`Self::from_parts`] but rejects inconsistent data.
    pub fn new(
        base: RayDivisorSystem<T>,
        rho: usize,
        ray_vectors: Vec<RVector<T>>,
        divisor_vectors: Vec<RVector<T>>,
    ) -> Result<Self> {
        let m = Self::from_parts(base, rho, ray_vectors, divisor_vectors)?;
        m.check()?;
        Ok(m)
    }

    pub fn with_form(mut self, form: TrilinearForm<T>) -> Result<Self> {
        check_dim(self.rho, form.dim())?;
        self.form = Some(form);
        Ok(self)
    }

    pub fn with_anticanonical(mut self, k: RVector<T>) -> Result<Self> {
        check_dim(self.rho, k.dim())?;
        self.anticanonical = Some(k);
        Ok(self)
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn base(&self) -> &RayDivisorSystem<T> {
        &self.base
    }

    pub fn ray_vector(&self, r: usize) -> &RVector<T> {
        &self.ray_vectors[r]
    }

    pub fn ray_vectors(&self) -> &[RVector<T>] {
        &self.ray_vectors
    }

    pub fn divisor_vector(&self, d: usize) -> &RVector<T> {
        &self.divisor_vectors[d]
    }

    pub fn divisor_vectors(&self) -> &[RVector<T>] {
        &self.divisor_vectors
    }

    /// The divisor class of a divisorial ray.
    pub fn ray_divisor(&self, r: usize) -> Result<&RVector<T>> {
        match self.base.divisor_of(r) {
            Some(d) => Ok(&self.divisor_vectors[d]),
            None => precondition(format!("ray {} has no divisor", self.base.ray(r).id)),
        }
    }

    pub fn form(&self) -> Option<&TrilinearForm<T>> {
        self.form.as_ref()
    }

    pub fn anticanonical(&self) -> Option<&RVector<T>> {
        self.anticanonical.as_ref()
    }

    /// Every inconsistency between the vectors and the base system.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (r, c) in self.ray_vectors.iter().enumerate() {
            let id = &self.base.ray(r).id;
            if c.is_zero() {
                out.push(format!("ray {id} has the zero class"));
            }
            for (d, dv) in self.divisor_vectors.iter().enumerate() {
                let dot = c.dot(dv).expect("dimensions checked");
                if &dot != self.base.q(r, d) {
                    out.push(format!(
                        "ray {id} . divisor {}: vectors give {dot}, pairing says {}",
                        self.base.divisors()[d],
                        self.base.q(r, d)
                    ));
                }
            }
            if let (Some(k), Some(a)) = (&self.anticanonical, self.base.anticanonical()) {
                let dot = c.dot(k).expect("dimensions checked");
                if dot != a[r] {
                    out.push(format!("ray {id} . -K: vectors give {dot}, column says {}", a[r]));
                }
            }
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        match self.validate().into_iter().next() {
            Some(msg) => Err(Error::Inconsistent(msg)),
            None => Ok(()),
        }
    }

    /// `H` pairs nonnegatively with every listed ray.
    pub fn is_nef(&self, h: &RVector<T>) -> Result<bool> {
        check_dim(self.rho, h.dim())?;
        for c in &self.ray_vectors {
            if c.dot(h)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn orthogonal_rays(&self, h: &RVector<T>) -> Result<RaySet> {
        check_dim(self.rho, h.dim())?;
        let mut set = RaySet::EMPTY;
        for (r, c) in self.ray_vectors.iter().enumerate() {
            if c.dot(h)?.is_zero() {
                set = set.with(r);
            }
        }
        Ok(set)
    }

    pub fn certify(&self, h: &RVector<T>) -> Result<Option<NefCertificate<T>>> {
        if !self.is_nef(h)? {
            return Ok(None);
        }
        let cube = self.form.as_ref().map(|f| f.cube(h)).transpose()?;
        Ok(Some(NefCertificate {
            vector: h.clone(),
            orthogonal_rays: self.orthogonal_rays(h)?,
            cube,
            degenerate: h.is_zero(),
        }))
    }

    /// 3 when `H^3 > 0`, 2 when `H^3 = 0` but `H^2` is not numerically
    /// trivial, 1 otherwise.
    pub fn numerical_kodaira_dim(&self, h: &RVector<T>) -> Result<u8> {
        let form = self.form.as_ref().ok_or_else(|| Error::Missing("intersection form".into()))?;
        check_dim(self.rho, h.dim())?;
        if h.is_zero() || !self.is_nef(h)? {
            return precondition("element must be nef and nonzero");
        }
        let sq = form.partial(h, h)?;
        Ok(if sq.dot(h)?.is_positive() {
            3
        } else if !sq.is_zero() {
            2
        } else {
            1
        })
    }

    /// `Some(after^3 >= before^3)` when a form is present.
    pub fn cube_not_smaller(&self, before: &RVector<T>, after: &RVector<T>) -> Result<Option<bool>> {
        match &self.form {
            Some(f) => Ok(Some(f.cube(after)? >= f.cube(before)?)),
            None => Ok(None),
        }
    }
}
