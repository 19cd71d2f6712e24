use std::collections::HashSet;
use std::fmt;

use crate::exact::{format_scalar, Scalar};
use crate::raysystem::{cross_pairing_inequality, is_simple_ray, RayDivisorSystem, RaySet, RayType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    MissingDivisor,
    SmallRayWithDivisor,
    SelfPairingNotNegative,
    NegativeForeignPairing,
    PairingWithoutIntersection,
    TypeIDivisorsMeet,
    TooManyRaysOnDivisor,
    SharedDivisorNotTypeII,
    IntersectionWithoutPositivePairing,
    SeveralTypeIMeetTypeII,
    SeveralRaysInsideDivisor,
    InsideRayMissesFiberDivisor,
    NonSimpleTypeII,
    AnticanonicalNotPositive,
    NormalizationMismatch,
    FaceStructure,
    CrossPairingInequality,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::MissingDivisor => "missing-divisor",
            Self::SmallRayWithDivisor => "small-ray-with-divisor",
            Self::SelfPairingNotNegative => "self-pairing-not-negative",
            Self::NegativeForeignPairing => "negative-foreign-pairing",
            Self::PairingWithoutIntersection => "pairing-without-intersection",
            Self::TypeIDivisorsMeet => "type-i-divisors-meet",
            Self::TooManyRaysOnDivisor => "too-many-rays-on-divisor",
            Self::SharedDivisorNotTypeII => "shared-divisor-not-type-ii",
            Self::IntersectionWithoutPositivePairing => "intersection-without-positive-pairing",
            Self::SeveralTypeIMeetTypeII => "several-type-i-meet-type-ii",
            Self::SeveralRaysInsideDivisor => "several-rays-inside-divisor",
            Self::InsideRayMissesFiberDivisor => "inside-ray-misses-fiber-divisor",
            Self::NonSimpleTypeII => "non-simple-type-ii",
            Self::AnticanonicalNotPositive => "anticanonical-not-positive",
            Self::NormalizationMismatch => "normalization-mismatch",
            Self::FaceStructure => "face-structure",
            Self::CrossPairingInequality => "cross-pairing-inequality",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub rays: Vec<String>,
    pub divisors: Vec<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl<T: Scalar> RayDivisorSystem<T> {
    fn violation(&self, kind: ViolationKind, rays: &[usize], divs: &[usize], message: String) -> Violation {
        Violation {
            kind,
            rays: rays.iter().map(|&r| self.ray(r).id.clone()).collect(),
            divisors: divs.iter().map(|&d| self.divisors()[d].clone()).collect(),
            message,
        }
    }

    /// Every violated model invariant, in a deterministic order. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        use ViolationKind::*;
        let mut out = Vec::new();
        let n = self.num_rays();
        let nd = self.num_divisors();
        let id = |r: usize| self.ray(r).id.as_str();
        let did = |d: usize| self.divisors()[d].as_str();

        for r in 0..n {
            match (self.kind(r), self.divisor_of(r)) {
                (RayType::Small, Some(d)) => out.push(self.violation(
                    SmallRayWithDivisor,
                    &[r],
                    &[d],
                    format!("small ray {} names divisor {}", id(r), did(d)),
                )),
                (RayType::TypeI | RayType::TypeII, None) => out.push(self.violation(
                    MissingDivisor,
                    &[r],
                    &[],
                    format!("ray {} of type {:?} has no divisor", id(r), self.kind(r)),
                )),
                _ => {}
            }
        }
        // The remaining checks assume divisorial rays carry a divisor.
        let div: Vec<(usize, usize)> = (0..n)
            .filter(|&r| self.kind(r).is_divisorial())
            .filter_map(|r| self.divisor_of(r).map(|d| (r, d)))
            .collect();

        for &(r, d) in &div {
            let own = self.q(r, d);
            if !own.is_negative() {
                out.push(self.violation(
                    SelfPairingNotNegative,
                    &[r],
                    &[d],
                    format!("{}.{} = {} is not negative", id(r), did(d), format_scalar(own)),
                ));
            }
            for e in (0..nd).filter(|&e| e != d) {
                let v = self.q(r, e);
                if v.is_negative() {
                    out.push(self.violation(
                        NegativeForeignPairing,
                        &[r],
                        &[e],
                        format!("{}.{} = {} is negative", id(r), did(e), format_scalar(v)),
                    ));
                }
                if !v.is_zero() && !self.meets(d, e) {
                    out.push(self.violation(
                        PairingWithoutIntersection,
                        &[r],
                        &[d, e],
                        format!(
                            "{}.{} = {} but {} and {} do not intersect",
                            id(r),
                            did(e),
                            format_scalar(v),
                            did(d),
                            did(e)
                        ),
                    ));
                }
            }
        }

        for (i, &(a, da)) in div.iter().enumerate() {
            for &(b, db) in &div[i + 1..] {
                if self.kind(a) == RayType::TypeI && self.kind(b) == RayType::TypeI && self.meets(da, db) {
                    out.push(self.violation(
                        TypeIDivisorsMeet,
                        &[a, b],
                        &[da, db],
                        format!("type I rays {} and {} have intersecting divisors", id(a), id(b)),
                    ));
                }
                if da != db && self.meets(da, db) {
                    let ab = self.q(a, db).is_positive();
                    let ba = self.q(b, da).is_positive();
                    let any_type_i = self.kind(a) == RayType::TypeI || self.kind(b) == RayType::TypeI;
                    let ok = if any_type_i { ab && ba } else { ab || ba };
                    if !ok {
                        out.push(self.violation(
                            IntersectionWithoutPositivePairing,
                            &[a, b],
                            &[da, db],
                            format!(
                                "{} and {} intersect but {}.{} = {}, {}.{} = {}",
                                did(da),
                                did(db),
                                id(a),
                                did(db),
                                format_scalar(self.q(a, db)),
                                id(b),
                                did(da),
                                format_scalar(self.q(b, da))
                            ),
                        ));
                    }
                }
            }
        }

        for d in 0..nd {
            let on = self.rays_on_divisor(d);
            if on.len() > 2 {
                out.push(self.violation(
                    TooManyRaysOnDivisor,
                    &on,
                    &[d],
                    format!("{} rays share divisor {}", on.len(), did(d)),
                ));
            } else if on.len() == 2 && on.iter().any(|&r| self.kind(r) != RayType::TypeII) {
                out.push(self.violation(
                    SharedDivisorNotTypeII,
                    &on,
                    &[d],
                    format!("divisor {} is shared by rays not both of type II", did(d)),
                ));
            }
        }

        for &(r, d) in div.iter().filter(|(r, _)| self.kind(*r) == RayType::TypeII) {
            let type_i: Vec<usize> = div
                .iter()
                .filter(|&&(q, e)| self.kind(q) == RayType::TypeI && self.meets(d, e))
                .map(|&(q, _)| q)
                .collect();
            if type_i.len() > 1 {
                let mut rays = vec![r];
                rays.extend(&type_i);
                out.push(self.violation(
                    SeveralTypeIMeetTypeII,
                    &rays,
                    &[d],
                    format!("{} type I divisors intersect {}", type_i.len(), did(d)),
                ));
            }
        }

        // Rays whose curves are forced into the divisor of a type II ray.
        for &(r, d) in div.iter().filter(|(r, _)| self.kind(*r) == RayType::TypeII) {
            let inside: Vec<usize> = (0..n)
                .filter(|&q| q != r)
                .filter(|&q| match (self.kind(q), self.divisor_of(q)) {
                    (RayType::Small, _) => self.q(q, d).is_negative(),
                    (_, Some(e)) if e == d => true,
                    (_, Some(e)) => self.meets(d, e) && self.q(q, d).is_zero(),
                    _ => false,
                })
                .collect();
            if inside.len() > 1 {
                let mut rays = vec![r];
                rays.extend(&inside);
                out.push(self.violation(
                    SeveralRaysInsideDivisor,
                    &rays,
                    &[d],
                    format!("{} rays besides {} have curves inside {}", inside.len(), id(r), did(d)),
                ));
            }
            for &q in &inside {
                let own = self.divisor_of(q);
                for e in (0..nd).filter(|&e| e != d && Some(e) != own) {
                    if self.meets(d, e) && self.q(r, e).is_zero() && !self.q(q, e).is_positive() {
                        out.push(self.violation(
                            InsideRayMissesFiberDivisor,
                            &[r, q],
                            &[d, e],
                            format!(
                                "{} meets {} with {}.{} = 0 but {}.{} = {}",
                                did(e),
                                did(d),
                                id(r),
                                did(e),
                                id(q),
                                did(e),
                                format_scalar(self.q(q, e))
                            ),
                        ));
                    }
                }
            }
        }

        if self.fano_mode() {
            for &(r, d) in div.iter().filter(|(r, _)| self.kind(*r) == RayType::TypeII) {
                if !is_simple_ray(self, r).unwrap_or(true) {
                    out.push(self.violation(
                        NonSimpleTypeII,
                        &[r],
                        &[d],
                        format!("type II ray {} is not simple", id(r)),
                    ));
                }
            }
            if let Some(a) = self.anticanonical() {
                for r in 0..n {
                    if !a[r].is_positive() {
                        out.push(self.violation(
                            AnticanonicalNotPositive,
                            &[r],
                            &[],
                            format!("{}.(-K) = {} is not positive", id(r), format_scalar(&a[r])),
                        ));
                    }
                }
            }
        }

        if self.normalized() {
            match self.anticanonical() {
                None => out.push(self.violation(
                    NormalizationMismatch,
                    &[],
                    &[],
                    "normalization requested without an anticanonical column".into(),
                )),
                Some(a) => {
                    for &(r, d) in div.iter().filter(|(r, _)| self.kind(*r) == RayType::TypeII) {
                        if *self.q(r, d) != -T::one() || a[r] != T::one() {
                            out.push(self.violation(
                                NormalizationMismatch,
                                &[r],
                                &[d],
                                format!(
                                    "{}.{} = {} and {}.(-K) = {}; expected -1 and 1",
                                    id(r),
                                    did(d),
                                    format_scalar(self.q(r, d)),
                                    id(r),
                                    format_scalar(&a[r])
                                ),
                            ));
                        }
                    }
                }
            }
        }

        if let Some(faces) = self.faces() {
            if !faces.contains(&RaySet::EMPTY) {
                out.push(self.violation(FaceStructure, &[], &[], "the empty face is missing".into()));
            }
            let listed: HashSet<RaySet> = faces.iter().copied().collect();
            let mut reported = 0;
            'outer: for (i, f) in faces.iter().enumerate() {
                for g in &faces[i + 1..] {
                    let meet = f.intersection(*g);
                    if !listed.contains(&meet) {
                        out.push(self.violation(
                            FaceStructure,
                            &meet.iter().collect::<Vec<_>>(),
                            &[],
                            format!(
                                "faces {:?} and {:?} intersect in a set that is not a face",
                                self.ids(*f),
                                self.ids(*g)
                            ),
                        ));
                        reported += 1;
                        if reported >= 8 {
                            break 'outer;
                        }
                    }
                }
            }
            let type_ii: Vec<usize> =
                div.iter().filter(|(r, _)| self.kind(*r) == RayType::TypeII).map(|&(r, _)| r).collect();
            for (i, &a) in type_ii.iter().enumerate() {
                for &b in &type_ii[i + 1..] {
                    let (da, db) = (self.divisor_of(a).unwrap(), self.divisor_of(b).unwrap());
                    if da == db || !self.meets(da, db) {
                        continue;
                    }
                    if !self.is_extremal(RaySet::from_indices([a, b])).unwrap_or(false) {
                        continue;
                    }
                    if !cross_pairing_inequality(self, a, b).unwrap_or(true) {
                        out.push(self.violation(
                            CrossPairingInequality,
                            &[a, b],
                            &[da, db],
                            format!(
                                "{}.{} * {}.{} = {} * {} is not below {}.{} * {}.{} = {} * {}",
                                id(a),
                                did(db),
                                id(b),
                                did(da),
                                format_scalar(self.q(a, db)),
                                format_scalar(self.q(b, da)),
                                id(a),
                                did(da),
                                id(b),
                                did(db),
                                format_scalar(self.q(a, da)),
                                format_scalar(self.q(b, db))
                            ),
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raysystem::Ray;
    use crate::Rational;
    use proptest::prelude::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn ray(id: &str, kind: RayType, d: Option<usize>) -> Ray {
        Ray { id: id.into(), kind, divisor: d }
    }

    fn kinds(s: &RayDivisorSystem<Rational>) -> Vec<ViolationKind> {
        s.validate().into_iter().map(|v| v.kind).collect()
    }

    /// Hub S1 with spoke S2: S2.D1 = 1, S1.D2 = 0.
    fn c2() -> RayDivisorSystem<Rational> {
        RayDivisorSystem::new(
            vec![ray("S1", RayType::TypeII, Some(0)), ray("S2", RayType::TypeII, Some(1))],
            vec!["D1".into(), "D2".into()],
            vec![vec![r(-1), r(0)], vec![r(1), r(-1)]],
            &[(0, 1)],
        )
        .unwrap()
    }

    #[test]
    fn hub_pair_is_valid() {
        assert!(c2().is_valid(), "{:?}", c2().validate());
    }

    #[test]
    fn three_rays_on_one_divisor() {
        let s = RayDivisorSystem::new(
            (1..=3).map(|i| ray(&format!("R{i}"), RayType::TypeII, Some(0))).collect(),
            vec!["D".into()],
            vec![vec![r(-1)]; 3],
            &[],
        )
        .unwrap();
        let v: Vec<Violation> =
            s.validate().into_iter().filter(|v| v.kind == ViolationKind::TooManyRaysOnDivisor).collect();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rays, vec!["R1", "R2", "R3"]);
    }

    #[test]
    fn structural_violations() {
        let s = RayDivisorSystem::new(
            vec![ray("A", RayType::TypeI, None), ray("S", RayType::Small, Some(0)), ray("B", RayType::TypeI, Some(0))],
            vec!["D".into()],
            vec![vec![r(0)], vec![r(0)], vec![r(1)]],
            &[],
        )
        .unwrap();
        let k = kinds(&s);
        assert!(k.contains(&ViolationKind::MissingDivisor));
        assert!(k.contains(&ViolationKind::SmallRayWithDivisor));
        assert!(k.contains(&ViolationKind::SelfPairingNotNegative));
    }

    #[test]
    fn type_i_pairs_and_shared_divisors() {
        let s = RayDivisorSystem::new(
            vec![ray("A1", RayType::TypeI, Some(0)), ray("A2", RayType::TypeI, Some(1))],
            vec!["D1".into(), "D2".into()],
            vec![vec![r(-1), r(1)], vec![r(1), r(-1)]],
            &[(0, 1)],
        )
        .unwrap();
        assert_eq!(kinds(&s), vec![ViolationKind::TypeIDivisorsMeet]);
        let s = RayDivisorSystem::new(
            vec![ray("A", RayType::TypeI, Some(0)), ray("S", RayType::TypeII, Some(0))],
            vec!["D".into()],
            vec![vec![r(-1)], vec![r(-1)]],
            &[],
        )
        .unwrap();
        assert_eq!(kinds(&s), vec![ViolationKind::SharedDivisorNotTypeII]);
    }

    #[test]
    fn pairing_needs_intersection_and_sign_rules() {
        let s = c2().with_pairing_entry(1, 0, r(-1));
        assert_eq!(
            kinds(&s),
            vec![ViolationKind::NegativeForeignPairing, ViolationKind::IntersectionWithoutPositivePairing]
        );
        let s = RayDivisorSystem::new(
            vec![ray("S1", RayType::TypeII, Some(0)), ray("S2", RayType::TypeII, Some(1))],
            vec!["D1".into(), "D2".into()],
            vec![vec![r(-1), r(0)], vec![r(1), r(-1)]],
            &[],
        )
        .unwrap();
        assert_eq!(kinds(&s), vec![ViolationKind::PairingWithoutIntersection]);
    }

    #[test]
    fn two_type_i_divisors_on_one_type_ii() {
        let s = RayDivisorSystem::new(
            vec![
                ray("S", RayType::TypeII, Some(0)),
                ray("A", RayType::TypeI, Some(1)),
                ray("B", RayType::TypeI, Some(2)),
            ],
            vec!["D".into(), "DA".into(), "DB".into()],
            vec![vec![r(-1), r(1), r(1)], vec![r(1), r(-1), r(0)], vec![r(1), r(0), r(-1)]],
            &[(0, 1), (0, 2)],
        )
        .unwrap();
        assert_eq!(kinds(&s), vec![ViolationKind::SeveralTypeIMeetTypeII]);
    }

    #[test]
    fn fano_mode_and_normalization() {
        let s = c2().with_anticanonical(vec![r(1), r(0)]).unwrap().with_fano_mode(true).with_normalized(true);
        assert_eq!(kinds(&s), vec![ViolationKind::AnticanonicalNotPositive, ViolationKind::NormalizationMismatch]);
        let s = c2().with_pairing_entry(1, 1, r(-2)).with_fano_mode(true);
        assert_eq!(kinds(&s), vec![ViolationKind::NonSimpleTypeII]);
        let s = c2().with_normalized(true);
        assert_eq!(kinds(&s), vec![ViolationKind::NormalizationMismatch]);
    }

    #[test]
    fn faces_and_cross_pairing_audit() {
        let full = RaySet::from_indices([0, 1]);
        let s = c2().with_faces(vec![RaySet::EMPTY, RaySet::single(0), RaySet::single(1), full]).unwrap();
        assert!(s.is_valid());
        let s = c2().with_faces(vec![RaySet::single(0), RaySet::single(1)]).unwrap();
        assert_eq!(kinds(&s), vec![ViolationKind::FaceStructure, ViolationKind::FaceStructure]);
        // Both cross pairings positive with unit diagonals fails the strict inequality.
        let s = c2()
            .with_pairing_entry(0, 1, r(1))
            .with_faces(vec![RaySet::EMPTY, RaySet::single(0), RaySet::single(1), full])
            .unwrap();
        let v = s.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::CrossPairingInequality);
        assert!(v[0].message.contains("1 * 1"));
    }

    fn all_type_ii(q: &[[i64; 3]], pairs: &[(usize, usize)]) -> RayDivisorSystem<Rational> {
        RayDivisorSystem::new(
            (0..3).map(|i| ray(&format!("S{}", i + 1), RayType::TypeII, Some(i))).collect(),
            (0..3).map(|i| format!("D{}", i + 1)).collect(),
            q.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect(),
            pairs,
        )
        .unwrap()
    }

    #[test]
    fn chain_of_hubs_is_rejected() {
        // S1 lies in D2 and S2 lies in D3, while D1 and D3 are disjoint.
        let s = all_type_ii(&[[-1, 0, 0], [1, -1, 0], [0, 1, -1]], &[(0, 1), (1, 2)]);
        assert_eq!(kinds(&s), vec![ViolationKind::InsideRayMissesFiberDivisor]);
        assert_eq!(s.validate()[0].rays, vec!["S2", "S1"]);
    }

    #[test]
    fn two_rays_inside_one_divisor() {
        let s = all_type_ii(&[[-1, 1, 1], [0, -1, 0], [0, 0, -1]], &[(0, 1), (0, 2)]);
        assert_eq!(kinds(&s), vec![ViolationKind::SeveralRaysInsideDivisor]);
    }

    #[test]
    fn cyclic_triple_and_fan_pass() {
        let cyclic = all_type_ii(&[[-1, 1, 0], [0, -1, 1], [1, 0, -1]], &[(0, 1), (0, 2), (1, 2)]);
        assert!(cyclic.is_valid(), "{:?}", cyclic.validate());
        let fan = all_type_ii(&[[-1, 0, 0], [1, -1, 0], [1, 0, -1]], &[(0, 1), (0, 2)]);
        assert!(fan.is_valid(), "{:?}", fan.validate());
    }

    /// Independent restatement of the sign-level invariants over an all-type-II
    /// system with ray `i` on divisor `i` and every pair of divisors intersecting
    /// exactly when listed.
    fn oracle(q: &[Vec<i64>], meets: &[Vec<bool>]) -> bool {
        let n = q.len();
        for i in 0..n {
            if q[i][i] >= 0 {
                return false;
            }
            for j in 0..n {
                if i != j {
                    if q[i][j] < 0 || (q[i][j] != 0 && !meets[i][j]) {
                        return false;
                    }
                    if meets[i][j] && q[i][j] <= 0 && q[j][i] <= 0 {
                        return false;
                    }
                }
            }
            let inside: Vec<usize> = (0..n).filter(|&j| j != i && meets[i][j] && q[j][i] == 0).collect();
            if inside.len() > 1 {
                return false;
            }
            for &j in &inside {
                for e in 0..n {
                    if e != i && e != j && meets[i][e] && q[i][e] == 0 && q[j][e] <= 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    proptest! {
        #[test]
        fn single_entry_mutations_are_caught(
            n in 2usize..5,
            edges in prop::collection::vec(any::<bool>(), 16),
            vals in prop::collection::vec(0i64..2, 16),
            which in (0usize..16, 0usize..16),
            replacement in -2i64..3,
        ) {
            let meets: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || edges[i.min(j) * 4 + i.max(j)]).collect()).collect();
            // A valid base: positive entries only where divisors meet, at least one per meeting pair.
            let mut q: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| {
                if i == j { -1 } else if meets[i][j] && (vals[i * 4 + j] == 1 || i < j) { 1 } else { 0 }
            }).collect()).collect();
            prop_assume!(oracle(&q, &meets));
            let (a, b) = (which.0 % n, which.1 % n);
            q[a][b] = replacement;
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| meets[i][j]).collect();
            let s = RayDivisorSystem::new(
                (0..n).map(|i| ray(&format!("S{i}"), RayType::TypeII, Some(i))).collect(),
                (0..n).map(|i| format!("D{i}")).collect(),
                q.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect(),
                &pairs,
            ).unwrap();
            prop_assert_eq!(s.is_valid(), oracle(&q, &meets));
        }
    }
}
