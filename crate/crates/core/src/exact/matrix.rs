use crate::error::{check_dim, Result};
use crate::exact::{RVector, Scalar};

/// A dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<T>>,
}

/// Row echelon form produced by fraction-free elimination.
struct Echelon<T> {
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
    swaps: usize,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![vec![T::zero(); cols]; rows] }
    }

    /// Builds from rows; all rows must have `cols` entries.
    pub fn from_rows(cols: usize, data: Vec<Vec<T>>) -> Result<Self> {
        for row in &data {
            check_dim(cols, row.len())?;
        }
        Ok(Self { rows: data.len(), cols, data })
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, columns: &[RVector<T>]) -> Result<Self> {
        for c in columns {
            check_dim(dim, c.dim())?;
        }
        let data = (0..dim).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        Ok(Self { rows: dim, cols: columns.len(), data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vec<T>> = rows.iter().map(|r| r.iter().map(|&v| T::int(v)).collect()).collect();
        Self::from_rows(cols, data).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i]
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols).map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect()).collect();
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, v: &RVector<T>) -> Result<RVector<T>> {
        check_dim(self.cols, v.dim())?;
        Ok(RVector::new(
            self.data
                .iter()
                .map(|row| row.iter().zip(v.entries()).fold(T::zero(), |a, (x, y)| a + x.clone() * y.clone()))
                .collect(),
        ))
    }

    fn echelon(data: Vec<Vec<T>>, cols: usize) -> Echelon<T> {
        let mut m = data;
        let mut pivots = Vec::new();
        let mut prev = T::one();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..cols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            if p != r {
                m.swap(p, r);
                swaps += 1;
            }
            let piv = m[r][c].clone();
            for i in r + 1..m.len() {
                let lead = m[i][c].clone();
                for j in c + 1..cols {
                    let v = (piv.clone() * m[i][j].clone() - lead.clone() * m[r][j].clone()) / prev.clone();
                    m[i][j] = v;
                }
                m[i][c] = T::zero();
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        Echelon { rows: m, pivots, swaps }
    }

    pub fn rank(&self) -> usize {
        Self::echelon(self.data.clone(), self.cols).pivots.len()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<T> {
        check_dim(self.rows, self.cols)?;
        if self.rows == 0 {
            return Ok(T::one());
        }
        let e = Self::echelon(self.data.clone(), self.cols);
        if e.pivots.len() < self.rows {
            return Ok(T::zero());
        }
        // Fraction-free elimination leaves the determinant in the last pivot.
        let d = e.rows[self.rows - 1][self.cols - 1].clone();
        Ok(if e.swaps % 2 == 1 { -d } else { d })
    }

    /// Solves the echelon system for pivot variables with the given free values.
    fn back_substitute(e: &Echelon<T>, cols: usize, free: &[(usize, T)]) -> Vec<T> {
        let mut x = vec![T::zero(); cols];
        for (j, v) in free {
            x[*j] = v.clone();
        }
        for (i, &pc) in e.pivots.iter().enumerate().rev() {
            let row = &e.rows[i];
            let s = (pc + 1..cols).fold(T::zero(), |a, j| a + row[j].clone() * x[j].clone());
            x[pc] = -s / row[pc].clone();
        }
        x
    }

    /// A basis of the right kernel `{x : M x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<RVector<T>> {
        let e = Self::echelon(self.data.clone(), self.cols);
        (0..self.cols)
            .filter(|j| !e.pivots.contains(j))
            .map(|f| RVector::new(Self::back_substitute(&e, self.cols, &[(f, T::one())])))
            .collect()
    }

    /// Some solution of `M x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &RVector<T>) -> Result<Option<RVector<T>>> {
        check_dim(self.rows, b.dim())?;
        let aug: Vec<Vec<T>> = self
            .data
            .iter()
            .zip(b.entries())
            .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
            .collect();
        let e = Self::echelon(aug, self.cols + 1);
        if e.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        // Treat the augmented column as a free variable fixed to -1.
        let x = Self::back_substitute(&e, self.cols + 1, &[(self.cols, -T::one())]);
        Ok(Some(RVector::new(x[..self.cols].to_vec())))
    }
}
