use num_traits::{Signed, Zero};

use crate::error::{precondition, Result};
use crate::exact::format_scalar;
use crate::Rational;

use super::weights::{diagram_bound, weighted_angle_max_n};

/// The face-dimension bound from `C1, C2` and what it gives for the
/// codimension of the face of the nef cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReplay {
    pub c1: Rational,
    pub c2: Rational,
    pub c: Rational,
    pub value: Rational,
    /// Largest admissible face dimension.
    pub max_dim: i64,
    /// `dim N1 - dim alpha <= max_dim + 1`.
    pub codim_bound: i64,
}

impl DiagramReplay {
    pub fn new(c1: &Rational, c2: &Rational) -> Result<Self> {
        if c1.is_negative() || c2.is_negative() {
            return precondition("constants must be nonnegative");
        }
        let (value, max_dim) = diagram_bound(c1, c2);
        let c = Rational::new(2.into(), 3.into()) * c1 + c2 / Rational::from_integer(2.into());
        Ok(Self { c1: c1.clone(), c2: c2.clone(), c, value, max_dim, codim_bound: max_dim + 1 })
    }

    pub fn conclusion(&self) -> String {
        format!("dim gamma < {} => dim N1 - dim alpha <= {}", format_scalar(&self.value), self.codim_bound)
    }
}

/// The largest polytope dimension allowed by the weighted-angle inequality
/// and the Picard number bound it gives for a full nef cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleReplay {
    pub c: Rational,
    pub d: Rational,
    pub max_n: usize,
    pub rho_bound: usize,
}

impl AngleReplay {
    pub fn new(c: &Rational, d: &Rational) -> Result<Self> {
        if c.is_negative() || d.is_negative() {
            return precondition("constants must be nonnegative");
        }
        let max_n = weighted_angle_max_n(c, d);
        Ok(Self { c: c.clone(), d: d.clone(), max_n, rho_bound: max_n + 1 })
    }

    pub fn conclusion(&self) -> String {
        format!("max n = {} => rho <= {}", self.max_n, self.rho_bound)
    }

    pub fn coarse_applies(&self) -> bool {
        self.d.is_zero()
    }
}
