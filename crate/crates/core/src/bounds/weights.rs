use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::raysystem::Distance;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightRule {
    /// 2/3 on `[1, d]`, 1/2 on `[d+1, 2d+1]`, 0 beyond.
    Graded(u32),
    /// 2/3 at distance exactly 1, else 0.
    Adjacent,
    /// `(lo, hi, weight)` ranges, `hi = None` meaning unbounded; first match wins.
    Custom(Vec<(u32, Option<u32>, Rational)>),
}

impl fmt::Display for WeightRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightRule::Graded(d) => write!(f, "graded(d={d})"),
            WeightRule::Adjacent => write!(f, "adjacent"),
            WeightRule::Custom(t) => write!(f, "custom({} ranges)", t.len()),
        }
    }
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

pub fn sigma(rule: &WeightRule, dist: Distance) -> Rational {
    let Distance::Finite(k) = dist else {
        return match rule {
            WeightRule::Custom(t) => {
                t.iter().find(|(_, hi, _)| hi.is_none()).map(|(_, _, w)| w.clone()).unwrap_or_else(Rational::zero)
            }
            _ => Rational::zero(),
        };
    };
    match rule {
        WeightRule::Graded(d) if k >= 1 && k <= *d => q(2, 3),
        WeightRule::Graded(d) if k > *d && k <= 2 * d + 1 => q(1, 2),
        WeightRule::Adjacent if k == 1 => q(2, 3),
        WeightRule::Custom(t) => t
            .iter()
            .find(|(lo, hi, _)| k >= *lo && hi.is_none_or(|h| k <= h))
            .map(|(_, _, w)| w.clone())
            .unwrap_or_else(Rational::zero),
        _ => Rational::zero(),
    }
}

/// Right-hand side `8C + 5 + (1 + 8D/n | (8C+8D)/(n-1))` by parity, or
/// `None` for `n = 1`, where the odd branch is unbounded.
pub fn weighted_angle_rhs(c: &Rational, d: &Rational, n: usize) -> Option<Rational> {
    let eight = Rational::from_integer(8.into());
    let base = eight.clone() * c + Rational::from_integer(5.into());
    let nn = Rational::from_integer(BigInt::from(n));
    if n % 2 == 0 {
        Some(base + Rational::one() + eight * d / nn)
    } else if n == 1 {
        None
    } else {
        Some(base + eight * (c + d) / (nn - Rational::one()))
    }
}

/// Largest `n >= 1` with `n` strictly below its parity's right-hand side.
/// The scan stops at `ceil(8C + 8D + 16)`, beyond which both sides are
/// dominated by `n`.
pub fn weighted_angle_max_n(c: &Rational, d: &Rational) -> usize {
    assert!(!c.is_negative() && !d.is_negative(), "constants must be nonnegative");
    let horizon = (Rational::from_integer(8.into()) * (c + d) + Rational::from_integer(16.into()))
        .ceil()
        .to_integer()
        .to_usize()
        .expect("horizon fits");
    (1..=horizon)
        .filter(|&n| match weighted_angle_rhs(c, d, n) {
            None => true,
            Some(rhs) => Rational::from_integer(BigInt::from(n)) < rhs,
        })
        .max()
        .unwrap_or(1)
}

/// The `D = 0` corollary `n < 8C + 6`.
pub fn coarse_angle_bound(c: &Rational) -> Rational {
    Rational::from_integer(8.into()) * c + Rational::from_integer(6.into())
}

/// `(16/3) C1 + 4 C2 + 6` and the largest integer strictly below it.
pub fn diagram_bound(c1: &Rational, c2: &Rational) -> (Rational, i64) {
    let v = q(16, 3) * c1 + Rational::from_integer(4.into()) * c2 + Rational::from_integer(6.into());
    let max = (v.ceil() - Rational::one()).to_integer().to_i64().expect("bound fits");
    (v, max)
}
