use crate::error::{precondition, Error, Result};
use crate::exact::{RVector, Scalar};
use crate::raysystem::RayType;

use super::model::RealizedModel;

/// Combines nef `H1` (killing `C1`) and `H2` (killing `C2`) for two rays on
/// the same divisor into one element killing both:
/// `(-D.C2)(H2.C1) H1 + (-D.C1)(H1.C2) H2 + (H2.C1)(H1.C2) D`.
pub fn b2_nef_combine<T: Scalar>(
    m: &RealizedModel<T>,
    h1: &RVector<T>,
    h2: &RVector<T>,
    c1: usize,
    c2: usize,
    d: usize,
) -> Result<RVector<T>> {
    let s = m.base();
    for c in [c1, c2] {
        if s.kind(c) != RayType::TypeII || s.divisor_of(c) != Some(d) {
            return precondition(format!("ray {} is not a type II ray on the given divisor", s.ray(c).id));
        }
    }
    if c1 == c2 {
        return precondition("the two rays must differ");
    }
    let (v1, v2, dv) = (m.ray_vector(c1), m.ray_vector(c2), m.divisor_vector(d));
    if !h1.dot(v1)?.is_zero() || !h2.dot(v2)?.is_zero() {
        return precondition("H1 must kill C1 and H2 must kill C2");
    }
    if !m.is_nef(h1)? || !m.is_nef(h2)? {
        return precondition("inputs must be nef");
    }
    let (h2c1, h1c2) = (h2.dot(v1)?, h1.dot(v2)?);
    let a1 = -dv.dot(v2)? * h2c1.clone();
    let a2 = -dv.dot(v1)? * h1c2.clone();
    h1.scale(&a1).axpy(&a2, h2)?.axpy(&(h2c1 * h1c2), dv)
}

/// `H' = H + sum_i -(H.C_i)/(C_i.E_i) E_i` over `(ray, divisor)` spokes.
pub fn cm_nef_extension<T: Scalar>(
    m: &RealizedModel<T>,
    h: &RVector<T>,
    spokes: &[(usize, usize)],
) -> Result<RVector<T>> {
    let s = m.base();
    for (i, &(_, a)) in spokes.iter().enumerate() {
        if spokes[i + 1..].iter().any(|&(_, b)| a == b || s.meets(a, b)) {
            return precondition("spoke divisors must be distinct and pairwise disjoint");
        }
    }
    let mut out = h.clone();
    for &(r, d) in spokes {
        let (c, e) = (m.ray_vector(r), m.divisor_vector(d));
        let den = c.dot(e)?;
        if den.is_zero() {
            return Err(Error::Precondition(format!("ray {} pairs to zero with its divisor", s.ray(r).id)));
        }
        if den.is_positive() {
            return precondition(format!("ray {} pairs positively with its divisor", s.ray(r).id));
        }
        out = out.axpy(&(-h.dot(c)? / den), e)?;
    }
    Ok(out)
}

/// For a type II `s1` and type I `s2` with `H.C2 = 0`, adds a multiple of
/// `(-D2.C2) D1 + (D1.C2) D2` so that the result also kills `C1`.
pub fn d2_nef_extension<T: Scalar>(m: &RealizedModel<T>, h: &RVector<T>, s1: usize, s2: usize) -> Result<RVector<T>> {
    let s = m.base();
    if s.kind(s1) != RayType::TypeII || s.kind(s2) != RayType::TypeI {
        return precondition("first ray must be type II and second type I");
    }
    let (c1, c2) = (m.ray_vector(s1), m.ray_vector(s2));
    let (d1, d2) = (m.ray_divisor(s1)?, m.ray_divisor(s2)?);
    if !h.dot(c2)?.is_zero() {
        return precondition("H must kill C2");
    }
    let den = d2.dot(c2)? * d1.dot(c1)? - d1.dot(c2)? * d2.dot(c1)?;
    if !den.is_positive() {
        return precondition(format!("denominator {den} is not positive"));
    }
    let dir = d1.scale(&-d2.dot(c2)?).axpy(&d1.dot(c2)?, d2)?;
    h.axpy(&(h.dot(c1)? / den), &dir)
}

/// `-K + sum D(R_i)` over rays with pairwise distinct divisors.
pub fn fano_nef_sum<T: Scalar>(m: &RealizedModel<T>, rays: &[usize]) -> Result<RVector<T>> {
    let k = m.anticanonical().ok_or_else(|| Error::Missing("anticanonical vector".into()))?;
    let mut seen = Vec::new();
    let mut out = k.clone();
    for &r in rays {
        let d = m.base().divisor_of(r).ok_or_else(|| Error::Precondition(format!("ray {r} has no divisor")))?;
        if seen.contains(&d) {
            return precondition("divisors must be pairwise distinct");
        }
        seen.push(d);
        out = out.add(m.divisor_vector(d))?;
    }
    Ok(out)
}
