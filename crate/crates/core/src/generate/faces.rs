use std::collections::HashSet;

use crate::exact::Scalar;
use crate::raysystem::{RayDivisorSystem, RaySet, RayType};
use crate::structure::classify_set;

/// Largest down-closed family of subsets of `universe` on which `typed`
/// holds. Sets of size at most one are always included.
pub fn typed_faces(universe: RaySet, mut typed: impl FnMut(RaySet) -> bool) -> Vec<RaySet> {
    let mut subsets: Vec<RaySet> = universe.subsets().collect();
    subsets.sort_by_key(|s| (s.len(), *s));
    let mut faces: HashSet<RaySet> = HashSet::new();
    let mut out = Vec::new();
    for e in subsets {
        let closed = e.iter().all(|x| faces.contains(&e.without(x)));
        if closed && (e.len() <= 1 || typed(e)) {
            faces.insert(e);
            out.push(e);
        }
    }
    out
}

/// [`typed_faces`] over all rays with the library classifier.
pub fn classified_faces<T: Scalar>(s: &RayDivisorSystem<T>) -> Vec<RaySet> {
    typed_faces(s.all_rays(), |e| classify_set(s, e).map(|r| r.all_typed()).unwrap_or(false))
}

/// The given family, then one variant per set of at least two type II rays
/// with pairwise disjoint divisors in it, with every superset of that set
/// removed.
pub fn disjoint_exclusion_variants<T: Scalar>(s: &RayDivisorSystem<T>, faces: &[RaySet]) -> Vec<Vec<RaySet>> {
    let mut out = vec![faces.to_vec()];
    for &x in faces {
        if x.len() < 2 || !x.iter().all(|r| s.kind(r) == RayType::TypeII) {
            continue;
        }
        let rays: Vec<usize> = x.iter().collect();
        let disjoint = rays.iter().enumerate().all(|(i, &a)| rays[i + 1..].iter().all(|&b| !s.rays_meet(a, b)));
        if disjoint {
            out.push(faces.iter().copied().filter(|f| !x.is_subset(*f)).collect());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn down_closure_drops_supersets_of_untyped_sets() {
        let all = RaySet::all(3);
        let bad = RaySet::from_indices([0, 1]);
        let faces = typed_faces(all, |e| !bad.is_subset(e));
        assert_eq!(faces.len(), 6);
        assert!(!faces.contains(&all));
        assert!(faces.contains(&RaySet::from_indices([1, 2])));
        assert!(faces.contains(&RaySet::EMPTY));
    }

    #[test]
    fn singletons_are_always_faces() {
        let faces = typed_faces(RaySet::all(2), |_| false);
        assert_eq!(faces, vec![RaySet::EMPTY, RaySet::single(0), RaySet::single(1)]);
    }
}
