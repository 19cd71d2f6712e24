use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::raysystem::{Ray, RayDivisorSystem, RaySet, RayType};

use super::faces::classified_faces;

/// Named system families of the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemFamily {
    /// A hub and one spoke.
    C2,
    /// A hub with `m - 1` pairwise disjoint spokes.
    Cm(usize),
    /// A type II ray and a type I ray, mutually positive.
    D2,
    /// Two type II rays on one divisor.
    B2,
    /// A cyclic triple; the whole triple is left out of the faces.
    EsetA,
    /// `k` type II rays with disjoint divisors; the whole set is not a face.
    EsetD(usize),
    RandomValid(RandomParams),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomParams {
    pub divisorial: usize,
    pub small: usize,
    /// Own pairing -1 and anticanonical degree 1 on type II rays.
    pub normalized: bool,
}

impl Default for RandomParams {
    fn default() -> Self {
        Self { divisorial: 4, small: 0, normalized: true }
    }
}

impl fmt::Display for SystemFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::C2 => f.write_str("c2"),
            Self::Cm(m) => write!(f, "cm(m={m})"),
            Self::D2 => f.write_str("d2"),
            Self::B2 => f.write_str("b2"),
            Self::EsetA => f.write_str("eset-a"),
            Self::EsetD(k) => write!(f, "eset-d(k={k})"),
            Self::RandomValid(p) => write!(f, "random-valid(rays={}, small={})", p.divisorial, p.small),
        }
    }
}

/// Family names as accepted on the command line; parameters take defaults.
impl FromStr for SystemFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "c2" => Self::C2,
            "cm" => Self::Cm(3),
            "d2" => Self::D2,
            "b2" => Self::B2,
            "eset-a" => Self::EsetA,
            "eset-d" => Self::EsetD(2),
            "random-valid" => Self::RandomValid(RandomParams::default()),
            other => return Err(Error::Parse(format!("unknown system family {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generated<T> {
    pub system: RayDivisorSystem<T>,
    pub rejections: usize,
}

/// Integer data for a system under construction.
pub(crate) struct Draft {
    pub ids: Vec<String>,
    pub rays: Vec<(RayType, Option<usize>)>,
    pub divisors: usize,
    pub q: Vec<Vec<i64>>,
    pub meets: Vec<(usize, usize)>,
    pub anticanonical: Option<Vec<i64>>,
}

impl Draft {
    pub fn new(ids: &[&str], rays: Vec<(RayType, Option<usize>)>, divisors: usize) -> Self {
        let n = rays.len();
        Self {
            ids: ids.iter().map(|s| s.to_string()).collect(),
            rays,
            divisors,
            q: vec![vec![0; divisors]; n],
            meets: Vec::new(),
            anticanonical: None,
        }
    }

    pub fn numbered(rays: Vec<(RayType, Option<usize>)>, divisors: usize) -> Self {
        let ids: Vec<String> = (1..=rays.len()).map(|i| format!("R{i}")).collect();
        let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        Self::new(&refs, rays, divisors)
    }

    pub fn build<T: Scalar>(&self) -> Result<RayDivisorSystem<T>> {
        let names: Vec<String> = (0..self.divisors)
            .map(|d| {
                let owners: Vec<&str> =
                    (0..self.rays.len()).filter(|&r| self.rays[r].1 == Some(d)).map(|r| self.ids[r].as_str()).collect();
                match owners.as_slice() {
                    [one] => format!("D({one})"),
                    [a, b] => format!("D({a},{b})"),
                    _ => format!("D{}", d + 1),
                }
            })
            .collect();
        let rays = self
            .rays
            .iter()
            .zip(&self.ids)
            .map(|(&(kind, divisor), id)| Ray { id: id.clone(), kind, divisor })
            .collect();
        let pairing = self.q.iter().map(|row| row.iter().map(|&v| T::int(v)).collect()).collect();
        let s = RayDivisorSystem::new(rays, names, pairing, &self.meets)?;
        match &self.anticanonical {
            Some(a) => s.with_anticanonical(a.iter().map(|&v| T::int(v)).collect()),
            None => Ok(s),
        }
    }
}

fn with_faces<T: Scalar>(s: RayDivisorSystem<T>, faces: Vec<RaySet>) -> Result<RayDivisorSystem<T>> {
    let s = s.with_faces(faces)?;
    match s.validate().into_iter().next() {
        Some(v) => Err(Error::Inconsistent(format!("generated system is invalid: {v}"))),
        None => Ok(s),
    }
}

fn anticanonical(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(1..=3)).collect()
}

fn cm(rng: &mut ChaCha8Rng, m: usize) -> Result<Draft> {
    if m == 0 {
        return Err(Error::Precondition("cm needs m >= 1".into()));
    }
    let ids: Vec<String> = (1..=m).map(|i| format!("S{i}")).collect();
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    let mut d = Draft::new(&refs, (0..m).map(|i| (RayType::TypeII, Some(i))).collect(), m);
    d.q[0][0] = -rng.gen_range(1..=2);
    for i in 1..m {
        let own = rng.gen_range(1..=2);
        d.q[i][i] = -own;
        d.q[i][0] = own + rng.gen_range(0..=2);
        d.meets.push((0, i));
    }
    d.anticanonical = Some(anticanonical(rng, m));
    Ok(d)
}

/// One instance of `family`; the seed fixes every number.
pub fn generate_system(family: &SystemFamily, seed: u64) -> Result<Generated<crate::Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all_proper = |n: usize| -> Vec<RaySet> { RaySet::all(n).subsets().filter(|&e| e != RaySet::all(n)).collect() };
    let system = match family {
        SystemFamily::C2 => {
            let s = cm(&mut rng, 2)?.build()?;
            let faces = classified_faces(&s);
            with_faces(s, faces)?
        }
        SystemFamily::Cm(m) => {
            let s = cm(&mut rng, *m)?.build()?;
            let faces = classified_faces(&s);
            with_faces(s, faces)?
        }
        SystemFamily::D2 => {
            let mut d = Draft::new(&["S1", "S2"], vec![(RayType::TypeII, Some(0)), (RayType::TypeI, Some(1))], 2);
            let a = rng.gen_range(1..=2);
            let b = a + rng.gen_range(0..=1);
            let c = rng.gen_range(1..=2);
            let dd = b * c / a + 1 + rng.gen_range(0..=1);
            d.q = vec![vec![-a, b], vec![c, -dd]];
            d.meets.push((0, 1));
            d.anticanonical = Some(anticanonical(&mut rng, 2));
            let s = d.build()?;
            let faces = classified_faces(&s);
            with_faces(s, faces)?
        }
        SystemFamily::B2 => {
            let mut d = Draft::new(&["S1", "S2"], vec![(RayType::TypeII, Some(0)), (RayType::TypeII, Some(0))], 1);
            d.q = vec![vec![-rng.gen_range(1..=2)], vec![-rng.gen_range(1..=2)]];
            d.anticanonical = Some(anticanonical(&mut rng, 2));
            let s = d.build()?;
            let faces = classified_faces(&s);
            with_faces(s, faces)?
        }
        SystemFamily::EsetA => {
            let mut d = Draft::new(&["S1", "S2", "S3"], (0..3).map(|i| (RayType::TypeII, Some(i))).collect(), 3);
            for i in 0..3 {
                let own = rng.gen_range(1..=2);
                d.q[i][i] = -own;
                d.q[i][(i + 1) % 3] = own + rng.gen_range(0..=1);
            }
            d.meets = vec![(0, 1), (1, 2), (0, 2)];
            d.anticanonical = Some(anticanonical(&mut rng, 3));
            with_faces(d.build()?, all_proper(3))?
        }
        SystemFamily::EsetD(k) => {
            if *k < 2 {
                return Err(Error::Precondition("eset-d needs k >= 2".into()));
            }
            let ids: Vec<String> = (1..=*k).map(|i| format!("S{i}")).collect();
            let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
            let mut d = Draft::new(&refs, (0..*k).map(|i| (RayType::TypeII, Some(i))).collect(), *k);
            for i in 0..*k {
                d.q[i][i] = -rng.gen_range(1..=2);
            }
            d.anticanonical = Some(anticanonical(&mut rng, *k));
            with_faces(d.build()?, all_proper(*k))?
        }
        SystemFamily::RandomValid(p) => return random_valid(p, seed),
    };
    Ok(Generated { system: system.with_fano_mode(true), rejections: 0 })
}

const MAX_DRAWS: usize = 20_000;

fn random_draft(rng: &mut ChaCha8Rng, p: &RandomParams) -> Draft {
    let n = p.divisorial;
    let mut rays = Vec::with_capacity(n + p.small);
    let mut owners: Vec<Vec<usize>> = Vec::new();
    for r in 0..n {
        let kind = if rng.gen_bool(0.25) { RayType::TypeI } else { RayType::TypeII };
        let shareable: Vec<usize> = (0..owners.len())
            .filter(|&d| owners[d].len() == 1 && rays[owners[d][0]] == (RayType::TypeII, Some(d)))
            .collect();
        let d = if kind == RayType::TypeII && !shareable.is_empty() && rng.gen_bool(0.2) {
            shareable[rng.gen_range(0..shareable.len())]
        } else {
            owners.push(Vec::new());
            owners.len() - 1
        };
        owners[d].push(r);
        rays.push((kind, Some(d)));
    }
    for _ in 0..p.small {
        rays.push((RayType::Small, None));
    }
    let nd = owners.len();
    let mut d = Draft::numbered(rays, nd);
    for a in 0..nd {
        for b in a + 1..nd {
            if rng.gen_bool(0.5) {
                d.meets.push((a, b));
            }
        }
    }
    let meets = |a: usize, b: usize| a == b || d.meets.contains(&(a.min(b), a.max(b)));
    let mut q = vec![vec![0i64; nd]; d.rays.len()];
    let mut anti = vec![1i64; d.rays.len()];
    for (r, &(kind, div)) in d.rays.iter().enumerate() {
        for e in 0..nd {
            q[r][e] = match (kind, div) {
                (RayType::Small, _) => rng.gen_range(-1..=1),
                (_, Some(own)) if own == e => {
                    if kind == RayType::TypeII && p.normalized {
                        -1
                    } else {
                        -rng.gen_range(1..=2)
                    }
                }
                (_, Some(own)) if meets(own, e) => rng.gen_range(0..=2),
                _ => 0,
            };
        }
        if !(kind == RayType::TypeII && p.normalized) {
            anti[r] = rng.gen_range(1..=2);
        }
    }
    d.q = q;
    d.anticanonical = Some(anti);
    d
}

/// Draws random systems until one is valid (in Fano mode, with classified
/// faces). Errors after a fixed number of rejected draws.
pub fn random_valid(p: &RandomParams, seed: u64) -> Result<Generated<crate::Rational>> {
    if p.divisorial == 0 && p.small == 0 {
        return Err(Error::Precondition("random-valid needs at least one ray".into()));
    }
    if p.divisorial + p.small > 12 {
        return Err(Error::Precondition("random-valid supports at most 12 rays".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for rejections in 0..MAX_DRAWS {
        let s =
            random_draft(&mut rng, p).build::<crate::Rational>()?.with_fano_mode(true).with_normalized(p.normalized);
        if !s.is_valid() {
            continue;
        }
        let faces = classified_faces(&s);
        let s = s.with_faces(faces)?;
        if s.is_valid() {
            return Ok(Generated { system: s, rejections });
        }
    }
    Err(Error::Precondition(format!("no valid system found in {MAX_DRAWS} draws")))
}
