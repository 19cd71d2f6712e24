use crate::error::{precondition, Error, Result};
use crate::exact::binomial;
use crate::polytope::CombinatorialPolytope;
use crate::Rational;
use num_bigint::BigInt;

/// Mean number of `i`-faces per `k`-face.
pub fn average_faces(p: &CombinatorialPolytope, i: usize, k: usize) -> Result<Rational> {
    if i >= k || k > p.dim() {
        return precondition(format!("need i < k <= dim (got i={i}, k={k}, dim={})", p.dim()));
    }
    let counts = p.sub_face_counts(i, k);
    if counts.is_empty() {
        return Err(Error::Missing(format!("no {k}-faces")));
    }
    let total: usize = counts.values().sum();
    Ok(Rational::new(BigInt::from(total), BigInt::from(counts.len())))
}

fn binom(n: usize, k: usize) -> BigInt {
    BigInt::from(binomial(n as u64, k as u64))
}

/// Closed-form upper bound on the mean number of `i`-faces per `k`-face of a
/// simple `n`-polytope.
pub fn average_face_bound(n: usize, i: usize, k: usize) -> Result<Rational> {
    if i >= k || n + 1 < 2 * k {
        return precondition(format!("need i < k and n >= 2k - 1 (got n={n}, i={i}, k={k})"));
    }
    let h = n / 2;
    let num = binom(n - i, n - k) * (binom(h, i) + binom(n - h, i));
    let den = binom(h, k) + binom(n - h, k);
    Ok(Rational::new(num, den))
}

/// The `i = 0, k = 2` case: mean vertex count of a 2-face.
pub fn a02_bound(n: usize) -> Result<Rational> {
    if n < 3 {
        return precondition(format!("need n >= 3 (got {n})"));
    }
    let n = n as i64;
    Ok(if n % 2 == 0 {
        Rational::new(BigInt::from(4 * (n - 1)), BigInt::from(n - 2))
    } else {
        Rational::new(BigInt::from(4 * n), BigInt::from(n - 1))
    })
}
