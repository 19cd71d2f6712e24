use crate::error::{precondition, Result};
use crate::exact::{feasible_point, LinearSystem, Relation, Scalar};
use crate::raysystem::{divisorial_components, is_simple_ray, RayDivisorSystem, RaySet, RayType};

use super::classify::ClassificationFailure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EsetType<T> {
    /// Three type II rays in cyclic order.
    CyclicTriple,
    /// Positive multiples of both divisors are nef against every type I and
    /// simple type II ray.
    PositiveCombination { m1: T, m2: T },
    /// A listed simple type II ray on the divisor of the first ray.
    Witnessed { witness: usize },
    /// Type II rays with pairwise disjoint divisors.
    Disjoint,
}

impl<T> EsetType<T> {
    pub fn case(&self) -> char {
        match self {
            EsetType::CyclicTriple => 'a',
            EsetType::PositiveCombination { .. } => 'b',
            EsetType::Witnessed { .. } => 'c',
            EsetType::Disjoint => 'd',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EsetClass<T> {
    pub kind: EsetType<T>,
    /// The rays of the set in the numbering used by the case.
    pub order: Vec<usize>,
}

pub type EsetOutcome<T> = std::result::Result<EsetClass<T>, ClassificationFailure>;

/// Minimal non-extremal subsets of `within`.
pub fn find_esets<T: Scalar>(s: &RayDivisorSystem<T>, within: RaySet) -> Result<Vec<RaySet>> {
    let faces = match s.faces() {
        Some(f) => f,
        None => return Err(crate::Error::Missing("face structure".into())),
    };
    if !within.is_subset(s.all_rays()) {
        return precondition("subset has unknown rays");
    }
    let extremal = |x: RaySet| x.is_empty() || faces.iter().any(|f| x.is_subset(*f));
    Ok(within.subsets().filter(|&l| !extremal(l) && l.iter().all(|x| extremal(l.without(x)))).collect())
}

fn cyclic_order<T: Scalar>(s: &RayDivisorSystem<T>, rays: &[usize]) -> Option<Vec<usize>> {
    let [a, b, c] = rays else { return None };
    for order in [[*a, *b, *c], [*a, *c, *b]] {
        let ok = (0..3).all(|i| {
            let (x, y) = (order[i], order[(i + 1) % 3]);
            s.q_rays(x, y).is_positive() && s.q_rays(y, x).is_zero()
        });
        if ok {
            return Some(order.to_vec());
        }
    }
    None
}

fn positive_combination<T: Scalar>(s: &RayDivisorSystem<T>, rays: &[usize]) -> Result<Option<(T, T)>> {
    let [a, b] = rays else { return Ok(None) };
    let mut tests = Vec::new();
    for r in 0..s.num_rays() {
        match s.kind(r) {
            RayType::TypeI => tests.push(r),
            RayType::TypeII if is_simple_ray(s, r)? => tests.push(r),
            _ => {}
        }
    }
    let row = |r: usize| [s.q_rays(r, *a).clone(), s.q_rays(r, *b).clone()];
    if tests.iter().all(|&r| {
        let [x, y] = row(r);
        !(x + y).is_negative()
    }) {
        return Ok(Some((T::one(), T::one())));
    }
    let mut sys = LinearSystem::new(2);
    sys.add(vec![T::one(), T::zero()], Relation::Gt, T::zero())?;
    sys.add(vec![T::zero(), T::one()], Relation::Gt, T::zero())?;
    for &r in &tests {
        sys.add(row(r).to_vec(), Relation::Ge, T::zero())?;
    }
    Ok(feasible_point(&sys).map(|p| (p[0].clone(), p[1].clone())))
}

fn simple_witness<T: Scalar>(
    s: &RayDivisorSystem<T>,
    set: RaySet,
    rays: &[usize],
) -> Result<Option<(usize, Vec<usize>)>> {
    let [a, b] = rays else { return Ok(None) };
    for (r1, r2) in [(*a, *b), (*b, *a)] {
        for w in s.of_kind(RayType::TypeII).difference(set).iter() {
            if s.divisor_of(w) == s.divisor_of(r1)
                && is_simple_ray(s, w)?
                && s.q_rays(w, r2).is_zero()
                && s.q_rays(r2, w).is_positive()
            {
                return Ok(Some((w, vec![r1, r2])));
            }
        }
    }
    Ok(None)
}

/// Sorts an E-set into exactly one of four cases. Each case is tested on its
/// own; zero or several matches are reported as a failure.
pub fn classify_eset<T: Scalar>(s: &RayDivisorSystem<T>, set: RaySet) -> Result<EsetOutcome<T>> {
    if !find_esets(s, set)?.contains(&set) {
        return precondition(format!("{} is not an E-set", set));
    }
    s.require_divisorial(set)?;
    let rays: Vec<usize> = set.iter().collect();
    for &r in &rays {
        if s.kind(r) == RayType::TypeII && !is_simple_ray(s, r)? {
            return precondition(format!("ray {} is type II but not simple", s.ray(r).id));
        }
    }
    let connected = divisorial_components(s, set)?.len() == 1;
    let all_ii = rays.iter().all(|&r| s.kind(r) == RayType::TypeII);
    let mut matches: Vec<EsetClass<T>> = Vec::new();

    if connected && all_ii && rays.len() == 3 {
        if let Some(order) = cyclic_order(s, &rays) {
            matches.push(EsetClass { kind: EsetType::CyclicTriple, order });
        }
    }
    if connected && rays.len() == 2 && rays.iter().any(|&r| s.kind(r) == RayType::TypeII) {
        if let Some((m1, m2)) = positive_combination(s, &rays)? {
            matches.push(EsetClass { kind: EsetType::PositiveCombination { m1, m2 }, order: rays.clone() });
        }
    }
    if connected && all_ii && rays.len() == 2 {
        if let Some((witness, order)) = simple_witness(s, set, &rays)? {
            matches.push(EsetClass { kind: EsetType::Witnessed { witness }, order });
        }
    }
    if !connected && all_ii && rays.len() >= 2 {
        let disjoint = rays.iter().enumerate().all(|(i, &x)| rays[i + 1..].iter().all(|&y| !s.rays_meet(x, y)));
        if disjoint {
            matches.push(EsetClass { kind: EsetType::Disjoint, order: rays.clone() });
        }
    }
    Ok(match matches.len() {
        1 => Ok(matches.pop().unwrap()),
        0 => Err(ClassificationFailure { rays: set, reason: "no E-set case applies".into() }),
        _ => {
            let cases: String = matches.iter().map(|m| m.kind.case()).collect();
            Err(ClassificationFailure { rays: set, reason: format!("several E-set cases apply: {cases}") })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raysystem::Ray;
    use crate::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn system(
        kinds: &[(RayType, usize)],
        ndiv: usize,
        q: &[&[i64]],
        meets: &[(usize, usize)],
        faces: &[&[usize]],
    ) -> RayDivisorSystem<Rational> {
        let rays = kinds
            .iter()
            .enumerate()
            .map(|(i, &(kind, d))| Ray { id: format!("R{}", i + 1), kind, divisor: Some(d) })
            .collect();
        let divs = (0..ndiv).map(|i| format!("D{}", i + 1)).collect();
        let pairing = q.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect();
        RayDivisorSystem::new(rays, divs, pairing, meets)
            .unwrap()
            .with_faces(faces.iter().map(|f| RaySet::from_indices(f.iter().copied())).collect())
            .unwrap()
    }

    #[test]
    fn cyclic_triple_is_case_a() {
        let s = system(
            &[(RayType::TypeII, 0), (RayType::TypeII, 1), (RayType::TypeII, 2)],
            3,
            &[&[-1, 1, 0], &[0, -1, 1], &[1, 0, -1]],
            &[(0, 1), (1, 2), (0, 2)],
            &[&[0, 1], &[1, 2], &[0, 2]],
        );
        assert_eq!(find_esets(&s, s.all_rays()).unwrap(), vec![s.all_rays()]);
        let c = classify_eset(&s, s.all_rays()).unwrap().unwrap();
        assert_eq!(c.kind, EsetType::CyclicTriple);
        assert_eq!(c.order, vec![0, 1, 2]);
    }

    #[test]
    fn disjoint_pair_is_case_d() {
        let s = system(&[(RayType::TypeII, 0), (RayType::TypeII, 1)], 2, &[&[-1, 0], &[0, -1]], &[], &[&[0], &[1]]);
        let c = classify_eset(&s, s.all_rays()).unwrap().unwrap();
        assert_eq!(c.kind.case(), 'd');
    }

    #[test]
    fn mutual_pair_is_case_b() {
        let s =
            system(&[(RayType::TypeII, 0), (RayType::TypeII, 1)], 2, &[&[-1, 1], &[1, -1]], &[(0, 1)], &[&[0], &[1]]);
        let c = classify_eset(&s, s.all_rays()).unwrap().unwrap();
        assert_eq!(c.kind, EsetType::PositiveCombination { m1: r(1), m2: r(1) });
    }

    #[test]
    fn partner_on_divisor_gives_case_c() {
        // R3 shares D1 with R1 and its curves lie in D2.
        let s = system(
            &[(RayType::TypeII, 0), (RayType::TypeII, 1), (RayType::TypeII, 0)],
            2,
            &[&[-1, 1], &[1, -1], &[-1, 0]],
            &[(0, 1)],
            &[&[0, 2], &[1, 2]],
        );
        let l = RaySet::from_indices([0, 1]);
        let c = classify_eset(&s, l).unwrap().unwrap();
        assert_eq!(c.kind, EsetType::Witnessed { witness: 2 });
        assert_eq!(c.order, vec![0, 1]);
    }

    #[test]
    fn non_eset_input_is_rejected() {
        let s = system(&[(RayType::TypeII, 0), (RayType::TypeII, 1)], 2, &[&[-1, 0], &[0, -1]], &[], &[&[0, 1]]);
        assert!(classify_eset(&s, s.all_rays()).is_err());
        assert!(find_esets(&s, s.all_rays()).unwrap().is_empty());
    }
}
