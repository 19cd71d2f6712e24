use crate::error::{precondition, Result};
use crate::exact::Scalar;
use crate::raysystem::{RayDivisorSystem, RayType};

/// A type II ray `R` is simple when `R.(D(R) + D') >= 0` for every listed
/// divisor `D'` with `R.D' > 0`.
pub fn is_simple_ray<T: Scalar>(s: &RayDivisorSystem<T>, r: usize) -> Result<bool> {
    if s.kind(r) != RayType::TypeII {
        return precondition(format!("ray {} is not of type II", s.ray(r).id));
    }
    let own = s.q_rays(r, r).clone();
    Ok((0..s.num_divisors()).all(|d| {
        let v = s.q(r, d);
        !v.is_positive() || !(own.clone() + v.clone()).is_negative()
    }))
}

/// For two type II rays on distinct intersecting divisors:
/// `Q[R1][D2] * Q[R2][D1] < Q[R1][D1] * Q[R2][D2]`.
pub fn cross_pairing_inequality<T: Scalar>(s: &RayDivisorSystem<T>, r1: usize, r2: usize) -> Result<bool> {
    if s.kind(r1) != RayType::TypeII || s.kind(r2) != RayType::TypeII {
        return precondition("both rays must be of type II");
    }
    let (d1, d2) = (s.divisor_of(r1).expect("type II"), s.divisor_of(r2).expect("type II"));
    if d1 == d2 || !s.meets(d1, d2) {
        return precondition("divisors must be distinct and intersect");
    }
    let cross = s.q(r1, d2).clone() * s.q(r2, d1).clone();
    let diag = s.q(r1, d1).clone() * s.q(r2, d2).clone();
    Ok(cross < diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raysystem::Ray;
    use crate::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn pair(q: [[i64; 2]; 2]) -> RayDivisorSystem<Rational> {
        let rays = (0..2).map(|i| Ray { id: format!("R{}", i + 1), kind: RayType::TypeII, divisor: Some(i) }).collect();
        let pairing = q.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect();
        RayDivisorSystem::new(rays, vec!["D1".into(), "D2".into()], pairing, &[(0, 1)]).unwrap()
    }

    #[test]
    fn cross_pairing_examples() {
        assert!(cross_pairing_inequality(&pair([[-2, 1], [1, -1]]), 0, 1).unwrap());
        assert!(!cross_pairing_inequality(&pair([[-1, 1], [1, -1]]), 0, 1).unwrap());
        assert!(!cross_pairing_inequality(&pair([[-1, 2], [3, -1]]), 0, 1).unwrap());
    }

    #[test]
    fn cross_pairing_needs_meeting_divisors() {
        let rays = (0..2).map(|i| Ray { id: format!("R{i}"), kind: RayType::TypeII, divisor: Some(i) }).collect();
        let s = RayDivisorSystem::new(
            rays,
            vec!["D1".into(), "D2".into()],
            vec![vec![r(-1), r(0)], vec![r(0), r(-1)]],
            &[],
        )
        .unwrap();
        assert!(cross_pairing_inequality(&s, 0, 1).is_err());
    }

    #[test]
    fn simplicity() {
        assert!(is_simple_ray(&pair([[-1, 1], [1, -1]]), 0).unwrap());
        assert!(!is_simple_ray(&pair([[-2, 1], [1, -1]]), 0).unwrap());
        assert!(is_simple_ray(&pair([[-2, 0], [0, -1]]), 0).unwrap());
        let rays = vec![Ray { id: "A".into(), kind: RayType::TypeI, divisor: Some(0) }];
        let s = RayDivisorSystem::new(rays, vec!["D".into()], vec![vec![r(-1)]], &[]).unwrap();
        assert!(is_simple_ray(&s, 0).is_err());
    }
}
