use std::collections::BTreeMap;

use crate::error::{check_dim, Error, Result};
use crate::exact::{RVector, Scalar};

/// A symmetric trilinear form on a `dim`-dimensional space.
///
/// Only coefficients on sorted index triples `i <= j <= k` are stored, so
/// symmetry holds by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrilinearForm<T> {
    dim: usize,
    coeffs: BTreeMap<(usize, usize, usize), T>,
}

fn sorted(i: usize, j: usize, k: usize) -> (usize, usize, usize) {
    let mut t = [i, j, k];
    t.sort_unstable();
    (t[0], t[1], t[2])
}

/// Distinct orderings of a sorted triple.
fn orderings((i, j, k): (usize, usize, usize)) -> Vec<[usize; 3]> {
    if i == j && j == k {
        vec![[i, i, i]]
    } else if i == j {
        vec![[i, i, k], [i, k, i], [k, i, i]]
    } else if j == k {
        vec![[i, j, j], [j, i, j], [j, j, i]]
    } else {
        vec![[i, j, k], [i, k, j], [j, i, k], [j, k, i], [k, i, j], [k, j, i]]
    }
}

impl<T: Scalar> TrilinearForm<T> {
    pub fn zero(dim: usize) -> Self {
        Self { dim, coeffs: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `T(e_i, e_j, e_k)`; the indices may be given in any order.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: T) -> Result<()> {
        let key = sorted(i, j, k);
        if key.2 >= self.dim {
            return Err(Error::Dimension { expected: self.dim, found: key.2 + 1 });
        }
        if value.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, value);
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> T {
        self.coeffs.get(&sorted(i, j, k)).cloned().unwrap_or_else(T::zero)
    }

    /// Stored nonzero coefficients keyed by sorted triple.
    pub fn coefficients(&self) -> impl Iterator<Item = (&(usize, usize, usize), &T)> {
        self.coeffs.iter()
    }

    pub fn eval(&self, a: &RVector<T>, b: &RVector<T>, c: &RVector<T>) -> Result<T> {
        for v in [a, b, c] {
            check_dim(self.dim, v.dim())?;
        }
        let mut acc = T::zero();
        for (&key, t) in &self.coeffs {
            for [p, q, r] in orderings(key) {
                acc = acc + t.clone() * a[p].clone() * b[q].clone() * c[r].clone();
            }
        }
        Ok(acc)
    }

    /// The linear functional `T(a, b, .)` as a coefficient vector.
    pub fn partial(&self, a: &RVector<T>, b: &RVector<T>) -> Result<RVector<T>> {
        check_dim(self.dim, a.dim())?;
        check_dim(self.dim, b.dim())?;
        let mut out = vec![T::zero(); self.dim];
        for (&key, t) in &self.coeffs {
            for [p, q, r] in orderings(key) {
                out[r] = out[r].clone() + t.clone() * a[p].clone() * b[q].clone();
            }
        }
        Ok(RVector::new(out))
    }

    pub fn cube(&self, h: &RVector<T>) -> Result<T> {
        self.eval(h, h, h)
    }
}
