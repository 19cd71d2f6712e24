use std::collections::BTreeSet;

use crate::error::{check_dim, Result};
use crate::exact::Scalar;

/// Relation of a linear constraint `coeffs . x REL rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Ge,
    Gt,
    Eq,
}

/// A conjunction of linear constraints over `vars` unknowns.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem<T> {
    vars: usize,
    rows: Vec<(Vec<T>, Relation, T)>,
}

/// Internal normalized row: `coeffs . x >= rhs` (or `>` when strict).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Row<T> {
    coeffs: Vec<T>,
    rhs: T,
    strict: bool,
}

impl<T: Scalar> Row<T> {
    /// Scales so the first nonzero coefficient has absolute value one.
    fn normalize(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c = c.clone() / lead.clone();
            }
            self.rhs = self.rhs / lead;
        }
        self
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// For a constant row, whether `0 >= rhs` (or `0 > rhs`) holds.
    fn constant_holds(&self) -> bool {
        if self.strict {
            self.rhs.is_negative()
        } else {
            !self.rhs.is_positive()
        }
    }
}

impl<T: Scalar> LinearSystem<T> {
    pub fn new(vars: usize) -> Self {
        Self { vars, rows: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add(&mut self, coeffs: Vec<T>, rel: Relation, rhs: T) -> Result<()> {
        check_dim(self.vars, coeffs.len())?;
        self.rows.push((coeffs, rel, rhs));
        Ok(())
    }

    /// Adds `x_i >= 0` for every variable.
    pub fn add_nonnegativity(&mut self) {
        for i in 0..self.vars {
            let mut c = vec![T::zero(); self.vars];
            c[i] = T::one();
            self.rows.push((c, Relation::Ge, T::zero()));
        }
    }

    fn normalized_rows(&self) -> Vec<Row<T>> {
        let mut out = Vec::new();
        for (coeffs, rel, rhs) in &self.rows {
            match rel {
                Relation::Ge | Relation::Gt => {
                    out.push(Row { coeffs: coeffs.clone(), rhs: rhs.clone(), strict: *rel == Relation::Gt })
                }
                Relation::Eq => {
                    out.push(Row { coeffs: coeffs.clone(), rhs: rhs.clone(), strict: false });
                    out.push(Row {
                        coeffs: coeffs.iter().map(|c| -c.clone()).collect(),
                        rhs: -rhs.clone(),
                        strict: false,
                    });
                }
            }
        }
        out
    }
}

/// Drops satisfied constant rows and duplicates; `None` if a constant row fails.
fn clean<T: Scalar>(rows: Vec<Row<T>>) -> Option<Vec<Row<T>>> {
    let mut set = BTreeSet::new();
    for row in rows {
        let row = row.normalize();
        if row.is_constant() {
            if !row.constant_holds() {
                return None;
            }
            continue;
        }
        set.insert(row);
    }
    // A strict row makes an identical non-strict one redundant.
    let strict: BTreeSet<(Vec<T>, T)> =
        set.iter().filter(|r| r.strict).map(|r| (r.coeffs.clone(), r.rhs.clone())).collect();
    Some(set.into_iter().filter(|r| r.strict || !strict.contains(&(r.coeffs.clone(), r.rhs.clone()))).collect())
}

fn eliminate<T: Scalar>(rows: &[Row<T>], v: usize) -> Vec<Row<T>> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.coeffs[v].is_positive() {
            pos.push(r);
        } else if r.coeffs[v].is_negative() {
            neg.push(r);
        } else {
            out.push(r.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            // Positive combination cancelling variable v.
            let a = -n.coeffs[v].clone();
            let b = p.coeffs[v].clone();
            let coeffs =
                p.coeffs.iter().zip(&n.coeffs).map(|(x, y)| a.clone() * x.clone() + b.clone() * y.clone()).collect();
            out.push(Row { coeffs, rhs: a * p.rhs.clone() + b * n.rhs.clone(), strict: p.strict || n.strict });
        }
    }
    out
}

/// Picks a value for `v` satisfying every row once the other variables in
/// `x` are fixed; rows only mention `v` and already-assigned variables.
fn choose<T: Scalar>(rows: &[Row<T>], v: usize, x: &[T]) -> T {
    let mut lower: Option<(T, bool)> = None;
    let mut upper: Option<(T, bool)> = None;
    for r in rows {
        let c = &r.coeffs[v];
        if c.is_zero() {
            continue;
        }
        let rest = r
            .coeffs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != v)
            .fold(T::zero(), |a, (j, cj)| a + cj.clone() * x[j].clone());
        let bound = (r.rhs.clone() - rest) / c.clone();
        if c.is_positive() {
            let tighter = match &lower {
                None => true,
                Some((b, s)) => bound > *b || (bound == *b && r.strict && !s),
            };
            if tighter {
                lower = Some((bound, r.strict));
            }
        } else {
            let tighter = match &upper {
                None => true,
                Some((b, s)) => bound < *b || (bound == *b && r.strict && !s),
            };
            if tighter {
                upper = Some((bound, r.strict));
            }
        }
    }
    match (lower, upper) {
        (None, None) => T::zero(),
        (Some((l, false)), _) => l,
        (None, Some((u, false))) => u,
        (Some((l, true)), None) => l + T::one(),
        (None, Some((u, true))) => u - T::one(),
        (Some((l, true)), Some((u, false))) => {
            if u > l {
                u
            } else {
                l
            }
        }
        (Some((l, true)), Some((u, true))) => (l + u) / T::int(2),
    }
}

/// Exact feasibility by Fourier–Motzkin elimination.
///
/// Returns a satisfying point when one exists. The elimination order picks the
/// variable with the fewest generated rows at each step.
pub fn feasible_point<T: Scalar>(system: &LinearSystem<T>) -> Option<Vec<T>> {
    let n = system.vars;
    let mut current = clean(system.normalized_rows())?;
    let mut levels: Vec<(usize, Vec<Row<T>>)> = Vec::new();
    let mut remaining: Vec<usize> = (0..n).collect();
    while !remaining.is_empty() {
        let (idx, &v) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let p = current.iter().filter(|r| r.coeffs[v].is_positive()).count();
                let q = current.iter().filter(|r| r.coeffs[v].is_negative()).count();
                p * q
            })
            .expect("non-empty");
        remaining.remove(idx);
        let next = clean(eliminate(&current, v))?;
        levels.push((v, std::mem::replace(&mut current, next)));
    }
    let mut x = vec![T::zero(); n];
    for (v, rows) in levels.iter().rev() {
        x[*v] = choose(rows, *v, &x);
    }
    debug_assert!(satisfies(system, &x));
    Some(x)
}

/// Whether `x` satisfies every constraint of `system`.
pub(crate) fn satisfies<T: Scalar>(system: &LinearSystem<T>, x: &[T]) -> bool {
    system.rows.iter().all(|(c, rel, rhs)| {
        let lhs = c.iter().zip(x).fold(T::zero(), |a, (p, q)| a + p.clone() * q.clone());
        match rel {
            Relation::Ge => lhs >= *rhs,
            Relation::Gt => lhs > *rhs,
            Relation::Eq => lhs == *rhs,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn sys(vars: usize, rows: &[(&[i64], Relation, i64)]) -> LinearSystem<Rational> {
        let mut s = LinearSystem::new(vars);
        for (c, rel, b) in rows {
            s.add(c.iter().map(|&v| r(v)).collect(), *rel, r(*b)).unwrap();
        }
        s
    }

    #[test]
    fn simple_feasible_and_infeasible() {
        use Relation::*;
        let s = sys(2, &[(&[1, 0], Ge, 0), (&[0, 1], Ge, 0), (&[1, 1], Ge, 1), (&[-1, 2], Ge, 0), (&[2, -1], Ge, 0)]);
        let x = feasible_point(&s).unwrap();
        assert!(satisfies(&s, &x));
        let s = sys(2, &[(&[1, 0], Ge, 0), (&[0, 1], Ge, 0), (&[1, 1], Ge, 1), (&[-1, 0], Ge, 0), (&[0, -1], Ge, 0)]);
        assert!(feasible_point(&s).is_none());
    }

    #[test]
    fn strictness_matters() {
        use Relation::*;
        assert!(feasible_point(&sys(1, &[(&[1], Ge, 0), (&[-1], Ge, 0)])).is_some());
        assert!(feasible_point(&sys(1, &[(&[1], Gt, 0), (&[-1], Ge, 0)])).is_none());
        let x = feasible_point(&sys(1, &[(&[1], Gt, 0), (&[-1], Gt, -1)])).unwrap();
        assert!(x[0] > r(0) && x[0] < r(1));
    }

    #[test]
    fn equalities_and_free_variables() {
        use Relation::*;
        let s = sys(3, &[(&[1, 1, 0], Eq, 2), (&[1, -1, 0], Eq, 0)]);
        let x = feasible_point(&s).unwrap();
        assert_eq!(x[0], r(1));
        assert_eq!(x[1], r(1));
        assert!(feasible_point(&sys(0, &[])).is_some());
        assert!(feasible_point(&sys(0, &[(&[], Gt, 0)])).is_none());
    }

    proptest! {
        /// Any point planted in the system is a certificate that FM must find one too.
        #[test]
        fn planted_points_are_recovered(
            vars in 1usize..4,
            point in prop::collection::vec(-3i64..4, 3),
            coeffs in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 1..7),
            slack in prop::collection::vec(0i64..3, 7),
        ) {
            let mut s = LinearSystem::new(vars);
            for (row, sl) in coeffs.iter().zip(&slack) {
                let c: Vec<Rational> = row[..vars].iter().map(|&v| r(v)).collect();
                let value: i64 = row[..vars].iter().zip(&point).map(|(a, b)| a * b).sum();
                let rel = if *sl > 0 { Relation::Gt } else { Relation::Ge };
                s.add(c, rel, r(value - sl)).unwrap();
            }
            let x = feasible_point(&s);
            prop_assert!(x.is_some());
            prop_assert!(satisfies(&s, &x.unwrap()));
        }

        /// Cross-check against an exhaustive grid on small bounded boxes.
        #[test]
        fn infeasibility_is_never_refuted_by_grid(
            coeffs in prop::collection::vec((-2i64..3, -2i64..3, -3i64..4), 1..6),
            strict in prop::collection::vec(any::<bool>(), 6),
        ) {
            let mut s = sys(2, &[(&[1, 0], Relation::Ge, -2), (&[-1, 0], Relation::Ge, -2), (&[0, 1], Relation::Ge, -2), (&[0, -1], Relation::Ge, -2)]);
            for ((a, b, c), st) in coeffs.iter().zip(&strict) {
                s.add(vec![r(*a), r(*b)], if *st { Relation::Gt } else { Relation::Ge }, r(*c)).unwrap();
            }
            match feasible_point(&s) {
                Some(x) => prop_assert!(satisfies(&s, &x)),
                None => {
                    for i in -8..=8 {
                        for j in -8..=8 {
                            let p = [Rational::new(i.into(), 4.into()), Rational::new(j.into(), 4.into())];
                            prop_assert!(!satisfies(&s, &p));
                        }
                    }
                }
            }
        }
    }
}
