use crate::error::{precondition, Error, Result};
use crate::exact::{Matrix, RVector, Scalar};
use crate::raysystem::{RaySet, RayType};
use crate::structure::{classify_set, ComponentType};

use super::model::RealizedModel;

fn rank_of<T: Scalar>(m: &RealizedModel<T>, rays: impl IntoIterator<Item = usize>) -> Result<usize> {
    let cols: Vec<RVector<T>> = rays.into_iter().map(|r| m.ray_vector(r).clone()).collect();
    if cols.is_empty() {
        return Ok(0);
    }
    Ok(Matrix::from_columns(m.rho(), &cols)?.rank())
}

/// A relation `sum a_i C_i = 0` with every `a_i` nonzero, scaled so that
/// `a_1 = 1`.
pub fn linear_dependence<T: Scalar>(m: &RealizedModel<T>, rays: &[usize]) -> Result<Option<Vec<T>>> {
    if rays.len() < 2 {
        return precondition("at least two rays are needed");
    }
    let cols: Vec<RVector<T>> = rays.iter().map(|&r| m.ray_vector(r).clone()).collect();
    let basis = Matrix::from_columns(m.rho(), &cols)?.kernel();
    if basis.is_empty() || (0..rays.len()).any(|i| basis.iter().all(|b| b[i].is_zero())) {
        return Ok(None);
    }
    // Each coordinate of sum t^j b_j is a nonzero polynomial in t, so only
    // finitely many t produce a zero entry.
    for t in 1i64.. {
        let t = T::int(t);
        let mut v = RVector::zeros(rays.len());
        let mut power = T::one();
        for b in &basis {
            v = v.axpy(&power, b)?;
            power = power * t.clone();
        }
        if v.entries().iter().all(|x| !x.is_zero()) {
            let first = v[0].clone();
            return Ok(Some(v.entries().iter().map(|x| x.clone() / first.clone()).collect()));
        }
    }
    unreachable!()
}

/// Whether a dependence with all coefficients nonzero has the shape forced
/// on classified sets: at least two components, all of type `B2`, with the
/// two coefficients of each pair of opposite signs.
pub fn check_paired_dependence_form<T: Scalar>(m: &RealizedModel<T>, rays: &[usize], coeffs: &[T]) -> Result<bool> {
    if rays.len() != coeffs.len() || coeffs.iter().any(|c| c.is_zero()) {
        return Ok(false);
    }
    let mut sum = RVector::zeros(m.rho());
    for (&r, a) in rays.iter().zip(coeffs) {
        sum = sum.axpy(a, m.ray_vector(r))?;
    }
    if !sum.is_zero() {
        return Ok(false);
    }
    let set = RaySet::from_indices(rays.iter().copied());
    if set.len() != rays.len() {
        return Ok(false);
    }
    let report = classify_set(m.base(), set)?;
    let Some(types) = report.types() else { return Ok(false) };
    if types.len() < 2 || types.iter().any(|&t| t != ComponentType::B2) {
        return Ok(false);
    }
    let coeff = |r: usize| &coeffs[rays.iter().position(|&x| x == r).unwrap()];
    Ok(report.components.iter().all(|(pair, _)| {
        let v: Vec<usize> = pair.iter().collect();
        coeff(v[0]).is_positive() != coeff(v[1]).is_positive()
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct B2Invariants {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub delta: usize,
    pub rho0: usize,
    pub m1: usize,
    pub m2: usize,
}

/// Splits the `B2` pairs of the base system into independent and dependent
/// ones and computes the derived counts. `rho = rho0 + 2m + k + delta`.
pub fn b2_invariants<T: Scalar>(model: &RealizedModel<T>) -> Result<B2Invariants> {
    let s = model.base();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for d in 0..s.num_divisors() {
        let on: Vec<usize> = s.rays_on_divisor(d).into_iter().filter(|&r| s.kind(r) == RayType::TypeII).collect();
        if let [a, b] = on[..] {
            pairs.push((a, b));
        }
    }
    let all: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let total = rank_of(model, all.iter().copied())?;
    let mut independent = Vec::new();
    let mut dependent = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if rank_of(model, [a, b])? != 2 {
            return Err(Error::Inconsistent(format!("pair {}, {} is not of rank 2", s.ray(a).id, s.ray(b).id)));
        }
        let others = pairs.iter().enumerate().filter(|&(j, _)| j != i).flat_map(|(_, &(x, y))| [x, y]);
        if rank_of(model, others)? + 2 == total {
            independent.push((a, b));
        } else {
            dependent.push((a, b));
        }
    }
    let (m, k) = (independent.len(), dependent.len());
    let dep_rank = rank_of(model, dependent.iter().flat_map(|&(a, b)| [a, b]))?;
    let delta = dep_rank - k;
    if !((k == 0 && delta == 0) || (k >= 2 && delta >= 1 && delta < k)) {
        return Err(Error::Inconsistent(format!("dependent pairs give k = {k}, delta = {delta}")));
    }
    let witnessed = |(a, b): (usize, usize)| {
        [(a, b), (b, a)].into_iter().any(|(r1, r2)| {
            s.of_kind(RayType::TypeII).iter().any(|w| {
                w != a
                    && w != b
                    && s.q_rays(r1, w).is_positive()
                    && s.q_rays(w, r1).is_positive()
                    && s.q_rays(r2, w).is_zero()
            })
        })
    };
    if let Some(&(a, b)) = dependent.iter().find(|&&p| witnessed(p)) {
        return Err(Error::Inconsistent(format!("dependent pair {}, {} has a witness ray", s.ray(a).id, s.ray(b).id)));
    }
    let m1 = independent.iter().filter(|&&p| witnessed(p)).count();
    Ok(B2Invariants { n: pairs.len(), m, k, delta, rho0: model.rho() - total, m1, m2: m - m1 })
}

/// For a listed face `F`, every extremal set between `F` and the union of
/// faces containing `F` has rank growing by one per added ray.
pub fn is_simple_in_face<T: Scalar>(model: &RealizedModel<T>, face: RaySet) -> Result<bool> {
    let s = model.base();
    let faces = s.faces().ok_or_else(|| Error::Missing("face structure".into()))?;
    if !faces.contains(&face) && !face.is_empty() {
        return precondition(format!("{face} is not a listed face"));
    }
    let base_rank = rank_of(model, face.iter())?;
    for g in faces.iter().filter(|g| face.is_subset(**g)) {
        for extra in g.difference(face).subsets() {
            let e = face.union(extra);
            if rank_of(model, e.iter())? - base_rank != extra.len() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
