use std::ops::Index;

use crate::error::{check_dim, Result};
use crate::exact::Scalar;

/// A dense vector of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RVector<T> {
    entries: Vec<T>,
}

impl<T: Scalar> RVector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { entries: vec![T::zero(); dim] }
    }

    /// The `i`-th standard basis vector.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[i] = T::one();
        v
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| T::int(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn dot(&self, other: &Self) -> Result<T> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.entries.iter().zip(&other.entries).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self::new(self.entries.iter().zip(&other.entries).map(|(a, b)| a.clone() + b.clone()).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self::new(self.entries.iter().zip(&other.entries).map(|(a, b)| a.clone() - b.clone()).collect()))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.entries.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &T, other: &Self) -> Result<Self> {
        self.add(&other.scale(c))
    }
}

impl<T> Index<usize> for RVector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.entries[i]
    }
}

impl<T: Scalar> From<Vec<T>> for RVector<T> {
    fn from(entries: Vec<T>) -> Self {
        Self::new(entries)
    }
}
