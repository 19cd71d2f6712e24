use std::fmt;

use crate::error::{precondition, Result};
use crate::exact::Scalar;
use crate::raysystem::{divisorial_components, RayDivisorSystem, RaySet, RayType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentType {
    A1,
    B2,
    Cm(usize),
    D2,
    E2,
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentType::A1 => write!(f, "A1"),
            ComponentType::B2 => write!(f, "B2"),
            ComponentType::Cm(m) => write!(f, "C:{m}"),
            ComponentType::D2 => write!(f, "D2"),
            ComponentType::E2 => write!(f, "E2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classified {
    pub kind: ComponentType,
    /// The hub ray of a `Cm` component with `m >= 2`.
    pub hub: Option<usize>,
    /// More than one ray qualified as hub; the least id was chosen.
    pub ambiguous_hub: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationFailure {
    pub rays: RaySet,
    pub reason: String,
}

pub type ComponentOutcome = std::result::Result<Classified, ClassificationFailure>;

fn typed(kind: ComponentType) -> ComponentOutcome {
    Ok(Classified { kind, hub: None, ambiguous_hub: false })
}

/// Whether no nonzero `b >= 0` makes both `s1` (type II) and `s2` (type I)
/// pair nonnegatively with `b1 D(s1) + b2 D(s2)`.
///
/// With negative diagonal and positive off-diagonal entries, the generators
/// `(1,0)` and `(0,1)` always fail, and a mixed witness exists exactly when
/// the determinant of the 2x2 pairing block is not positive.
pub fn d2_condition<T: Scalar>(s: &RayDivisorSystem<T>, s1: usize, s2: usize) -> Result<bool> {
    if s.kind(s1) != RayType::TypeII || s.kind(s2) != RayType::TypeI {
        return precondition("first ray must be type II and second type I");
    }
    let (q11, q12) = (s.q_rays(s1, s1).clone(), s.q_rays(s1, s2).clone());
    let (q21, q22) = (s.q_rays(s2, s1).clone(), s.q_rays(s2, s2).clone());
    if !(q11.is_negative() && q22.is_negative() && q12.is_positive() && q21.is_positive()) {
        return precondition("needs negative self pairings and positive cross pairings");
    }
    Ok(q11 * q22 - q12 * q21 > T::zero())
}

fn is_cm_hub<T: Scalar>(s: &RayDivisorSystem<T>, comp: RaySet, hub: usize) -> bool {
    comp.iter().filter(|&i| i != hub).all(|i| s.q_rays(hub, i).is_zero() && s.q_rays(i, hub).is_positive())
}

/// Types a divisorially connected set, or a `{type II, small}` pair.
pub fn classify_component<T: Scalar>(s: &RayDivisorSystem<T>, comp: RaySet) -> Result<ComponentOutcome> {
    let fail = |reason: &str| Ok(Err(ClassificationFailure { rays: comp, reason: reason.into() }));
    if comp.is_empty() {
        return precondition("empty component");
    }
    let small = comp.intersection(s.of_kind(RayType::Small));
    if !small.is_empty() {
        let rest = comp.difference(small);
        if comp.len() != 2 || small.len() != 1 || s.kind(rest.iter().next().unwrap()) != RayType::TypeII {
            return precondition("a component with a small ray must be a {type II, small} pair");
        }
        let (r, sm) = (rest.iter().next().unwrap(), small.iter().next().unwrap());
        return if s.q_rays(sm, r).is_negative() {
            Ok(typed(ComponentType::E2))
        } else {
            fail("small ray does not pair negatively with the type II divisor")
        };
    }
    let parts = divisorial_components(s, comp)?;
    if parts.len() != 1 {
        return precondition(format!("{} is not divisorially connected", comp));
    }
    let rays: Vec<usize> = comp.iter().collect();
    let type_ii = rays.iter().all(|&r| s.kind(r) == RayType::TypeII);
    match rays.as_slice() {
        [r] => Ok(typed(if s.kind(*r) == RayType::TypeI { ComponentType::A1 } else { ComponentType::Cm(1) })),
        [a, b] if type_ii && s.divisor_of(*a) == s.divisor_of(*b) => Ok(typed(ComponentType::B2)),
        [a, b] if s.kind(*a) != s.kind(*b) => {
            let (s1, s2) = if s.kind(*a) == RayType::TypeII { (*a, *b) } else { (*b, *a) };
            if !(s.q_rays(s1, s2).is_positive() && s.q_rays(s2, s1).is_positive()) {
                return fail("type I / type II pair without positive cross pairings");
            }
            if d2_condition(s, s1, s2)? {
                Ok(typed(ComponentType::D2))
            } else {
                fail("type I / type II pair admits a nonnegative divisor combination")
            }
        }
        _ if type_ii => {
            let hubs: Vec<usize> = rays.iter().copied().filter(|&h| is_cm_hub(s, comp, h)).collect();
            let spokes_disjoint = |h: usize| {
                let spokes: Vec<usize> = rays.iter().copied().filter(|&i| i != h).collect();
                spokes.iter().enumerate().all(|(i, &x)| spokes[i + 1..].iter().all(|&y| !s.rays_meet(x, y)))
            };
            let mut good: Vec<usize> = hubs.into_iter().filter(|&h| spokes_disjoint(h)).collect();
            good.sort_by(|&x, &y| s.ray(x).id.cmp(&s.ray(y).id));
            match good.first() {
                Some(&h) => Ok(Ok(Classified {
                    kind: ComponentType::Cm(rays.len()),
                    hub: Some(h),
                    ambiguous_hub: good.len() > 1,
                })),
                None => fail("no hub ray with pairwise disjoint spoke divisors"),
            }
        }
        _ => fail("connected set of this size must consist of type II rays"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub components: Vec<(RaySet, ComponentOutcome)>,
}

impl ClassificationReport {
    pub fn types(&self) -> Option<Vec<ComponentType>> {
        self.components.iter().map(|(_, o)| o.as_ref().ok().map(|c| c.kind)).collect()
    }

    pub fn failures(&self) -> Vec<&ClassificationFailure> {
        self.components.iter().filter_map(|(_, o)| o.as_ref().err()).collect()
    }

    pub fn all_typed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn num_rays(&self) -> usize {
        self.components.iter().map(|(c, _)| c.len()).sum()
    }
}

/// Partitions `set` into components and types each one. A small ray is
/// grouped with a type II ray whose divisor it pairs negatively with, when
/// that ray is otherwise isolated.
pub fn classify_set<T: Scalar>(s: &RayDivisorSystem<T>, set: RaySet) -> Result<ClassificationReport> {
    let small = set.intersection(s.of_kind(RayType::Small));
    let mut parts = divisorial_components(s, set.difference(small))?;
    let mut components = Vec::new();
    for sm in small.iter() {
        let partner = parts.iter().position(|p| {
            p.len() == 1 && {
                let r = p.iter().next().unwrap();
                s.kind(r) == RayType::TypeII && s.q_rays(sm, r).is_negative()
            }
        });
        match partner {
            Some(i) => {
                let pair = parts.remove(i).with(sm);
                components.push((pair, classify_component(s, pair)?));
            }
            None => components.push((
                RaySet::single(sm),
                Err(ClassificationFailure {
                    rays: RaySet::single(sm),
                    reason: "small ray without an isolated type II partner".into(),
                }),
            )),
        }
    }
    for p in parts {
        components.push((p, classify_component(s, p)?));
    }
    components.sort_by_key(|(c, _)| c.iter().next());
    Ok(ClassificationReport { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{feasible_point, LinearSystem, Relation};
    use crate::raysystem::Ray;
    use crate::Rational;
    use proptest::prelude::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn build(
        kinds: &[(RayType, Option<usize>)],
        ndiv: usize,
        q: &[&[i64]],
        meets: &[(usize, usize)],
    ) -> RayDivisorSystem<Rational> {
        let rays = kinds
            .iter()
            .enumerate()
            .map(|(i, &(kind, divisor))| Ray { id: format!("S{}", i + 1), kind, divisor })
            .collect();
        let divs = (0..ndiv).map(|i| format!("D{}", i + 1)).collect();
        RayDivisorSystem::new(rays, divs, q.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect(), meets)
            .unwrap()
    }

    fn kind_of(o: ComponentOutcome) -> ComponentType {
        o.unwrap().kind
    }

    #[test]
    fn singletons_and_pairs() {
        let s = build(&[(RayType::TypeI, Some(0))], 1, &[&[-1]], &[]);
        assert_eq!(kind_of(classify_component(&s, RaySet::single(0)).unwrap()), ComponentType::A1);
        let s = build(&[(RayType::TypeII, Some(0)), (RayType::TypeII, Some(0))], 1, &[&[-1], &[-1]], &[]);
        assert_eq!(kind_of(classify_component(&s, s.all_rays()).unwrap()), ComponentType::B2);
        assert_eq!(kind_of(classify_component(&s, RaySet::single(1)).unwrap()), ComponentType::Cm(1));
    }

    #[test]
    fn hub_with_two_spokes() {
        let s = build(
            &[(RayType::TypeII, Some(0)), (RayType::TypeII, Some(1)), (RayType::TypeII, Some(2))],
            3,
            &[&[-1, 0, 0], &[1, -1, 0], &[1, 0, -1]],
            &[(0, 1), (0, 2)],
        );
        let c = classify_component(&s, s.all_rays()).unwrap().unwrap();
        assert_eq!(c.kind, ComponentType::Cm(3));
        assert_eq!(c.hub, Some(0));
        assert!(!c.ambiguous_hub);
        // Spokes whose divisors meet break the pattern.
        let s = build(
            &[(RayType::TypeII, Some(0)), (RayType::TypeII, Some(1)), (RayType::TypeII, Some(2))],
            3,
            &[&[-1, 0, 0], &[1, -1, 0], &[1, 1, -1]],
            &[(0, 1), (0, 2), (1, 2)],
        );
        assert!(classify_component(&s, s.all_rays()).unwrap().is_err());
    }

    fn d2_pair(q: [[i64; 2]; 2]) -> RayDivisorSystem<Rational> {
        build(&[(RayType::TypeII, Some(0)), (RayType::TypeI, Some(1))], 2, &[&q[0], &q[1]], &[(0, 1)])
    }

    #[test]
    fn d2_examples() {
        assert!(d2_condition(&d2_pair([[-1, 1], [1, -2]]), 0, 1).unwrap());
        assert!(!d2_condition(&d2_pair([[-1, 2], [2, -1]]), 0, 1).unwrap());
        assert!(d2_condition(&d2_pair([[-1, 0], [0, -1]]), 0, 1).is_err());
        assert_eq!(
            kind_of(classify_component(&d2_pair([[-1, 1], [1, -2]]), RaySet::all(2)).unwrap()),
            ComponentType::D2
        );
        assert!(classify_component(&d2_pair([[-1, 2], [2, -1]]), RaySet::all(2)).unwrap().is_err());
    }

    #[test]
    fn disconnected_input_is_a_precondition_error() {
        let s = build(&[(RayType::TypeII, Some(0)), (RayType::TypeII, Some(1))], 2, &[&[-1, 0], &[0, -1]], &[]);
        assert!(classify_component(&s, s.all_rays()).is_err());
        let rep = classify_set(&s, s.all_rays()).unwrap();
        assert_eq!(rep.types().unwrap(), vec![ComponentType::Cm(1), ComponentType::Cm(1)]);
    }

    #[test]
    fn e2_pairs() {
        let s = build(&[(RayType::TypeII, Some(0)), (RayType::Small, None)], 1, &[&[-1], &[-1]], &[]);
        assert_eq!(kind_of(classify_component(&s, s.all_rays()).unwrap()), ComponentType::E2);
        let rep = classify_set(&s, s.all_rays()).unwrap();
        assert_eq!(rep.types().unwrap(), vec![ComponentType::E2]);
        let s = build(&[(RayType::TypeII, Some(0)), (RayType::Small, None)], 1, &[&[-1], &[1]], &[]);
        assert!(classify_component(&s, s.all_rays()).unwrap().is_err());
    }

    proptest! {
        /// The determinant shortcut agrees with exact feasibility of the cone.
        #[test]
        fn d2_condition_matches_feasibility(a in 1i64..5, b in 1i64..5, c in 1i64..5, d in 1i64..5) {
            let s = d2_pair([[-a, b], [c, -d]]);
            let mut sys = LinearSystem::new(2);
            sys.add_nonnegativity();
            sys.add(vec![r(1), r(1)], Relation::Ge, r(1)).unwrap();
            sys.add(vec![r(-a), r(b)], Relation::Ge, r(0)).unwrap();
            sys.add(vec![r(c), r(-d)], Relation::Ge, r(0)).unwrap();
            prop_assert_eq!(d2_condition(&s, 0, 1).unwrap(), feasible_point(&sys).is_none());
        }
    }
}
