use crate::error::{precondition, Error, Result};
use crate::exact::Scalar;
use crate::raysystem::{RayDivisorSystem, RaySet, RayType};

use super::classify::{ClassificationReport, ComponentType};

/// All `(type II ray, small ray)` pairs with `S.D(R) < 0`.
pub fn detect_e2_pairs<T: Scalar>(s: &RayDivisorSystem<T>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in s.of_kind(RayType::TypeII).iter() {
        for sm in s.of_kind(RayType::Small).iter() {
            if s.q_rays(sm, r).is_negative() {
                out.push((r, sm));
            }
        }
    }
    out
}

/// A small ray `S` and a ray `R_i` of `e` with `S.(-K + D(R_i)) < 0` and
/// `S.D(R_j) = 0` for the other rays of `e`. Returns `(S, R_i)`.
pub fn small_ray_witness<T: Scalar>(s: &RayDivisorSystem<T>, e: RaySet) -> Result<Option<(usize, usize)>> {
    let a = s.anticanonical().ok_or_else(|| Error::Missing("anticanonical column".into()))?;
    let rays: Vec<usize> = e.iter().collect();
    if rays.iter().any(|&r| s.kind(r) != RayType::TypeII) {
        return precondition("all rays must be of type II");
    }
    if rays.iter().enumerate().any(|(i, &x)| rays[i + 1..].iter().any(|&y| s.rays_meet(x, y))) {
        return precondition("divisors must be pairwise disjoint");
    }
    for sm in s.of_kind(RayType::Small).iter() {
        for &ri in &rays {
            let others_zero = rays.iter().all(|&rj| rj == ri || s.q_rays(sm, rj).is_zero());
            if others_zero && (a[sm].clone() + s.q_rays(sm, ri).clone()).is_negative() {
                return Ok(Some((sm, ri)));
            }
        }
    }
    Ok(None)
}

/// Whether component types of a `k`-ray extremal set form one of
/// `A1 + (k-1) C1`, `D2 + (k-2) C1`, `C2 + (k-2) C1`, `k C1`.
pub fn fano_shape_filter(types: &[ComponentType], k: usize) -> bool {
    let c1 = types.iter().filter(|&&t| t == ComponentType::Cm(1)).count();
    let rest: Vec<ComponentType> = types.iter().copied().filter(|&t| t != ComponentType::Cm(1)).collect();
    match rest.as_slice() {
        [] => c1 == k,
        [ComponentType::A1] => c1 + 1 == k,
        [ComponentType::D2] | [ComponentType::Cm(2)] => c1 + 2 == k,
        _ => false,
    }
}

impl ClassificationReport {
    pub fn passes_shape_filter(&self) -> bool {
        self.types().is_some_and(|t| fano_shape_filter(&t, self.num_rays()))
    }
}
