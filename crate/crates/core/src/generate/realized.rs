use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{Matrix, RVector, Scalar, TrilinearForm};
use crate::raysystem::{RayDivisorSystem, RayType};
use crate::realized::RealizedModel;
use crate::Rational;

use super::faces::classified_faces;
use super::systems::{random_valid, Draft, RandomParams};

/// Realizes a system with an anticanonical column in coordinates
/// `(divisors, -K, extras)`: divisor `j` is the `j`-th unit vector, `-K`
/// the next one, and each ray carries its pairing row, its degree and
/// `extras` further coordinates from `extra`. The form is the sum of cubes
/// of the non-divisor coordinates.
pub fn realize<T: Scalar>(
    s: &RayDivisorSystem<T>,
    extras: usize,
    mut extra: impl FnMut(usize, usize) -> T,
) -> Result<RealizedModel<T>> {
    let a = s.anticanonical().ok_or_else(|| Error::Missing("anticanonical column".into()))?;
    let nd = s.num_divisors();
    let rho = nd + 1 + extras;
    let rays = (0..s.num_rays())
        .map(|r| {
            let mut v: Vec<T> = s.pairing()[r].clone();
            v.push(a[r].clone());
            v.extend((0..extras).map(|i| extra(r, i)));
            RVector::new(v)
        })
        .collect();
    let divisors = (0..nd).map(|d| RVector::unit(rho, d)).collect();
    let mut form = TrilinearForm::zero(rho);
    for i in nd..rho {
        form.set(i, i, i, T::one())?;
    }
    RealizedModel::new(s.clone(), rho, rays, divisors)?.with_anticanonical(RVector::unit(rho, nd))?.with_form(form)
}

/// A normalized Fano-mode realized instance on 3 to 6 divisorial rays,
/// with the number of rejected system draws.
pub fn realized_instance(seed: u64) -> Result<(RealizedModel<Rational>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomParams { divisorial: rng.gen_range(3..=6), small: 0, normalized: true };
    let g = random_valid(&params, rng.gen())?;
    let m = realize(&g.system, 2, |_, _| Rational::int(rng.gen_range(-2..=2)))?;
    Ok((m, g.rejections))
}

/// A realized instance whose paired rays carry one planted dependence.
#[derive(Clone, Debug)]
pub struct PlantedB2 {
    pub model: RealizedModel<Rational>,
    /// The rays of the dependent pairs, partners adjacent.
    pub dependent_rays: Vec<usize>,
    /// Coefficients on `dependent_rays`, scaled so the first is 1.
    pub planted: Vec<Rational>,
    pub independent_rays: Vec<usize>,
    pub type_i_rays: Vec<usize>,
    pub rejections: usize,
}

/// `dependent` pairs tied by one planted relation, `independent` further
/// pairs, and `type_i` type I rays, all on pairwise disjoint divisors.
pub fn planted_b2(seed: u64, dependent: usize, independent: usize, type_i: usize) -> Result<PlantedB2> {
    if dependent < 2 {
        return Err(Error::Precondition("a planted dependence needs at least two pairs".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = dependent + independent;
    let mut rays = Vec::new();
    for p in 0..pairs {
        rays.push((RayType::TypeII, Some(p)));
        rays.push((RayType::TypeII, Some(p)));
    }
    for i in 0..type_i {
        rays.push((RayType::TypeI, Some(pairs + i)));
    }
    let n = rays.len();
    let mut draft = Draft::numbered(rays, pairs + type_i);
    for (r, row) in draft.q.iter_mut().enumerate() {
        let d = if r < 2 * pairs { r / 2 } else { pairs + r - 2 * pairs };
        row[d] = -1;
    }
    draft.anticanonical = Some(vec![1; n]);
    let s = draft.build::<Rational>()?.with_fano_mode(true).with_normalized(true);
    let faces = classified_faces(&s);
    let s = s.with_faces(faces)?;
    if let Some(v) = s.validate().into_iter().next() {
        return Err(Error::Inconsistent(format!("planted system is invalid: {v}")));
    }

    // Partners differ by v_i in the extra coordinates; sum mu_i v_i = 0 over
    // the dependent pairs and nothing else holds generically.
    let extras = dependent - 1 + independent + 1;
    let small = |rng: &mut ChaCha8Rng| Rational::int(rng.gen_range(-3..=3));
    for rejections in 0..1000 {
        let mu: Vec<Rational> = (0..dependent).map(|_| Rational::int(rng.gen_range(1..=4))).collect();
        let mut v: Vec<Vec<Rational>> = (0..pairs).map(|_| (0..extras).map(|_| small(&mut rng)).collect()).collect();
        let last = dependent - 1;
        v[last] = (0..extras)
            .map(|j| -(0..last).fold(Rational::int(0), |acc, i| acc + &mu[i] * &v[i][j]) / &mu[last])
            .collect();
        let base: Vec<Vec<Rational>> = (0..n).map(|_| (0..extras).map(|_| small(&mut rng)).collect()).collect();
        let extra_of = |r: usize, j: usize| -> Rational {
            if r < 2 * pairs && r % 2 == 1 {
                &base[r - 1][j] + &v[r / 2][j]
            } else {
                base[r][j].clone()
            }
        };
        let model = realize(&s, extras, extra_of)?;
        let dependent_rays: Vec<usize> = (0..2 * dependent).collect();
        let independent_rays: Vec<usize> = (2 * dependent..2 * pairs).collect();
        let rank = |rays: &[usize]| {
            let cols: Vec<RVector<Rational>> = rays.iter().map(|&r| model.ray_vector(r).clone()).collect();
            Matrix::from_columns(model.rho(), &cols).map(|m| m.rank())
        };
        let all_pairs: Vec<usize> = (0..2 * pairs).collect();
        if rank(&dependent_rays)? != 2 * dependent - 1 || rank(&all_pairs)? != 2 * pairs - 1 {
            continue;
        }
        let planted = (0..2 * dependent)
            .map(|r| if r % 2 == 0 { mu[r / 2].clone() } else { -mu[r / 2].clone() } / &mu[0])
            .collect();
        return Ok(PlantedB2 {
            model,
            dependent_rays,
            planted,
            independent_rays,
            type_i_rays: (2 * pairs..n).collect(),
            rejections,
        });
    }
    Err(Error::Precondition("could not plant a dependence with a one-dimensional kernel".into()))
}
