use crate::error::{precondition, Result};
use crate::exact::{feasible_point, LinearSystem, Relation, Scalar};
use crate::raysystem::{RayDivisorSystem, RaySet};

fn columns<T: Scalar>(s: &RayDivisorSystem<T>, set: RaySet) -> Result<Vec<usize>> {
    s.require_divisorial(set)?;
    Ok(set.iter().collect())
}

/// A nonzero `m >= 0` with every ray of `set` pairing nonnegatively against
/// `sum m_i D(R_i)`, if one exists. Condition (ii) holds exactly when none does.
pub fn condition_ii_witness<T: Scalar>(s: &RayDivisorSystem<T>, set: RaySet) -> Result<Option<Vec<T>>> {
    let cols = columns(s, set)?;
    if cols.is_empty() {
        return Ok(None);
    }
    let mut sys = LinearSystem::new(cols.len());
    sys.add_nonnegativity();
    sys.add(vec![T::one(); cols.len()], Relation::Ge, T::one())?;
    for &r in &cols {
        sys.add(cols.iter().map(|&c| s.q_rays(r, c).clone()).collect(), Relation::Ge, T::zero())?;
    }
    Ok(feasible_point(&sys))
}

pub fn check_condition_ii<T: Scalar>(s: &RayDivisorSystem<T>, set: RaySet) -> Result<bool> {
    Ok(condition_ii_witness(s, set)?.is_none())
}

/// Nonzero `a >= 0` making `sum a_j D(L_j)` nef against every listed ray,
/// small rays included. The all-ones vector is tried first.
pub fn nef_combination<T: Scalar>(s: &RayDivisorSystem<T>, set: RaySet) -> Result<Option<Vec<T>>> {
    let cols = columns(s, set)?;
    if cols.is_empty() {
        return Ok(None);
    }
    let row = |r: usize| -> Vec<T> { cols.iter().map(|&c| s.q_rays(r, c).clone()).collect() };
    let ones_ok = (0..s.num_rays()).all(|r| !row(r).into_iter().fold(T::zero(), |acc, v| acc + v).is_negative());
    if ones_ok {
        return Ok(Some(vec![T::one(); cols.len()]));
    }
    let mut sys = LinearSystem::new(cols.len());
    sys.add_nonnegativity();
    sys.add(vec![T::one(); cols.len()], Relation::Ge, T::one())?;
    for r in 0..s.num_rays() {
        sys.add(row(r), Relation::Ge, T::zero())?;
    }
    Ok(feasible_point(&sys))
}

/// Condition (iii): every nonempty proper subset satisfies condition (ii)
/// and some nonzero effective combination of the divisors is nef.
/// Returns the combination when the condition holds.
pub fn check_condition_iii<T: Scalar>(s: &RayDivisorSystem<T>, set: RaySet) -> Result<Option<Vec<T>>> {
    s.require_divisorial(set)?;
    for sub in set.subsets() {
        if !sub.is_empty() && sub != set && !check_condition_ii(s, sub)? {
            return Ok(None);
        }
    }
    nef_combination(s, set)
}

/// Whether every split `L1 ⊔ L2` of `set` has an arrow from `L1` to `L2`.
pub fn crossing_arrows_exist<T: Scalar>(s: &RayDivisorSystem<T>, set: RaySet) -> Result<bool> {
    s.require_divisorial(set)?;
    for l1 in set.subsets() {
        if l1.is_empty() || l1 == set {
            continue;
        }
        let l2 = set.difference(l1);
        let crosses = l1.iter().any(|a| l2.iter().any(|b| a != b && s.q_rays(a, b).is_positive()));
        if !crosses {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Arrow connectivity of a set satisfying condition (iii).
pub fn check_arrow_connectivity<T: Scalar>(s: &RayDivisorSystem<T>, set: RaySet) -> Result<bool> {
    if check_condition_iii(s, set)?.is_none() {
        return precondition(format!("{} does not satisfy condition (iii)", set));
    }
    crossing_arrows_exist(s, set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raysystem::{Ray, RayType};
    use crate::Rational;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn type_ii(q: &[Vec<i64>], meets: &[(usize, usize)]) -> RayDivisorSystem<Rational> {
        let n = q.len();
        let rays = (0..n).map(|i| Ray { id: format!("R{}", i + 1), kind: RayType::TypeII, divisor: Some(i) }).collect();
        let divs = (0..n).map(|i| format!("D{}", i + 1)).collect();
        RayDivisorSystem::new(rays, divs, q.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect(), meets)
            .unwrap()
    }

    fn cyclic() -> RayDivisorSystem<Rational> {
        type_ii(&[vec![-1, 1, 0], vec![0, -1, 1], vec![1, 0, -1]], &[(0, 1), (1, 2), (0, 2)])
    }

    #[test]
    fn condition_ii_examples() {
        let s = type_ii(&[vec![-1, 0], vec![1, -1]], &[(0, 1)]);
        assert!(check_condition_ii(&s, s.all_rays()).unwrap());
        let s = type_ii(&[vec![-1, 2], vec![2, -1]], &[(0, 1)]);
        let w = condition_ii_witness(&s, s.all_rays()).unwrap().unwrap();
        assert!(w.iter().all(|x| !x.is_negative()));
        assert!(!check_condition_ii(&s, s.all_rays()).unwrap());
    }

    #[test]
    fn cyclic_triple_uses_all_ones() {
        let s = cyclic();
        assert_eq!(check_condition_iii(&s, s.all_rays()).unwrap(), Some(vec![r(1); 3]));
        assert!(check_arrow_connectivity(&s, s.all_rays()).unwrap());
    }

    #[test]
    fn arrow_connectivity_requires_condition_iii() {
        let s = type_ii(&[vec![-1, 0], vec![0, -1]], &[]);
        assert!(check_arrow_connectivity(&s, s.all_rays()).is_err());
        assert!(!crossing_arrows_exist(&s, s.all_rays()).unwrap());
    }

    #[test]
    fn fabricated_certificate_without_crossing_arrow() {
        // One-way arrows only: {R2} has no arrow back into {R1}.
        let s = type_ii(&[vec![-1, 1], vec![0, -1]], &[(0, 1)]);
        assert!(!crossing_arrows_exist(&s, s.all_rays()).unwrap());
    }

    proptest! {
        /// Whenever condition (iii) holds, the split property follows.
        #[test]
        fn condition_iii_implies_arrows(entries in proptest::collection::vec(0i64..3, 6)) {
            let mut q = vec![vec![-1i64; 3]; 3];
            let mut k = 0;
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        q[i][j] = entries[k];
                        k += 1;
                    }
                }
            }
            let s = type_ii(&q, &[(0, 1), (1, 2), (0, 2)]);
            if check_condition_iii(&s, s.all_rays()).unwrap().is_some() {
                prop_assert!(check_arrow_connectivity(&s, s.all_rays()).unwrap());
            }
        }

        /// A found combination really is nef and nonzero.
        #[test]
        fn nef_combination_is_nef(entries in proptest::collection::vec(-1i64..3, 6)) {
            let mut q = vec![vec![-1i64; 3]; 3];
            let mut k = 0;
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        q[i][j] = entries[k];
                        k += 1;
                    }
                }
            }
            let s = type_ii(&q, &[(0, 1), (1, 2), (0, 2)]);
            if let Some(a) = nef_combination(&s, s.all_rays()).unwrap() {
                prop_assert!(a.iter().any(|x| x.is_positive()) && a.iter().all(|x| !x.is_negative()));
                for row in &q {
                    let v: i64 = 0;
                    let total = row.iter().zip(&a).fold(r(v), |acc, (&qv, av)| acc + r(qv) * av);
                    prop_assert!(!total.is_negative());
                }
            }
        }
    }
}
