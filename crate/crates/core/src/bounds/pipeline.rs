use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{precondition, Error, Result};
use crate::exact::{format_scalar, Scalar};
use crate::polytope::CombinatorialPolytope;
use crate::raysystem::{build_graph, Distance, OrientedGraph, RayDivisorSystem, RaySet};
use crate::realized::{is_simple_in_face, RealizedModel};
use crate::structure::{check_condition_ii, check_condition_iii, find_esets};
use crate::Rational;

use super::angles::{enumerate_angles, verify_angle_weights, AngleKey, BoundReport};
use super::weights::{diagram_bound, sigma, weighted_angle_max_n, WeightRule};

fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

fn int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A system whose rays orthogonal to a face of the nef cone are `perp`
/// together with one ray per facet of a simple cross-section polytope.
pub struct DiagramInput<'a, T> {
    pub system: &'a RayDivisorSystem<T>,
    pub polytope: &'a CombinatorialPolytope,
    /// Ray index for each facet, in facet order.
    pub facet_rays: Vec<usize>,
    pub perp: RaySet,
    pub model: Option<&'a RealizedModel<T>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstantsMode {
    /// Constants computed from the instance (the rule's replay constants
    /// for `Adjacent`).
    Empirical,
    /// `C = (2/3) C1 + C2/2`, `D = 0` from the given `C1, C2`.
    Supplied { c1: Rational, c2: Rational },
    /// `C` and `D` used directly.
    Direct { c: Rational, d: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayComparison {
    pub c: Rational,
    pub d: Rational,
    pub max_vertex_sum: Rational,
    pub max_two_thirds_per_vertex: usize,
    pub disagrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleWeight {
    pub key: AngleKey,
    pub rays: (usize, usize),
    pub distance: Distance,
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub rule: WeightRule,
    pub d: u32,
    pub angles: Vec<AngleWeight>,
    pub c1: Rational,
    pub c2: Rational,
    pub bound: BoundReport,
    pub condition_a_failures: Vec<String>,
    pub condition_b_failures: Vec<String>,
    pub simple_in_face: Option<bool>,
    pub conforming: bool,
    pub dimension_bound: Option<(Rational, i64)>,
    pub replay: Option<ReplayComparison>,
    pub counterexamples: Vec<String>,
}

/// Ordered pairs of `E - perp` at distance in `[1, d]` and in
/// `[d+1, 2d+1]` inside `G(E)`.
pub fn count_condition_b<T: Scalar>(
    s: &RayDivisorSystem<T>,
    e: RaySet,
    perp: RaySet,
    d: u32,
) -> Result<(usize, usize)> {
    if !perp.is_subset(e) {
        return precondition("perp must be contained in the set");
    }
    let g = build_graph(s, e)?;
    Ok(count_pairs(&g, e.difference(perp), d))
}

fn count_pairs(g: &OrientedGraph, outer: RaySet, d: u32) -> (usize, usize) {
    let nodes = g.nodes();
    let table = g.all_pairs();
    let (mut c1, mut c2) = (0, 0);
    for (i, &a) in nodes.iter().enumerate() {
        for (j, &b) in nodes.iter().enumerate() {
            if a == b || !outer.contains(a) || !outer.contains(b) {
                continue;
            }
            if let Distance::Finite(k) = table[i][j] {
                if k >= 1 && k <= d {
                    c1 += 1;
                } else if k > d && k <= 2 * d + 1 {
                    c2 += 1;
                }
            }
        }
    }
    (c1, c2)
}

fn graph_distance(g: &OrientedGraph, a: usize, b: usize) -> Distance {
    let nodes = g.nodes();
    let i = nodes.iter().position(|&x| x == a).expect("node present");
    let j = nodes.iter().position(|&x| x == b).expect("node present");
    g.all_pairs()[i][j]
}

impl<T: Scalar> DiagramInput<'_, T> {
    fn rays_of(&self, facets: &[usize]) -> RaySet {
        facets.iter().fold(self.perp, |acc, &f| acc.with(self.facet_rays[f]))
    }

    /// Facet rays are distinct, divisorial and outside `perp`, every vertex
    /// set is extremal, and every listed face over `perp` has a vertex.
    pub fn check_correspondence(&self) -> Result<()> {
        let s = self.system;
        let p = self.polytope;
        if self.facet_rays.len() != p.facets().len() {
            return Err(Error::Inconsistent(format!(
                "{} facets but {} corresponding rays",
                p.facets().len(),
                self.facet_rays.len()
            )));
        }
        let outer = RaySet::from_indices(self.facet_rays.iter().copied());
        if outer.len() != self.facet_rays.len() || self.facet_rays.iter().any(|&r| r >= s.num_rays()) {
            return Err(Error::Inconsistent("facet rays must be distinct listed rays".into()));
        }
        if !outer.intersection(self.perp).is_empty() {
            return Err(Error::Inconsistent("a facet ray is also orthogonal to the whole face".into()));
        }
        s.require_divisorial(outer.union(self.perp))?;
        let faces = s.faces().ok_or_else(|| Error::Missing("face structure".into()))?;
        for v in 0..p.num_vertices() {
            let e = self.rays_of(&p.facets_at(v));
            if !s.is_extremal(e)? {
                return Err(Error::Inconsistent(format!(
                    "rays {:?} of vertex {} are not extremal",
                    s.ids(e),
                    p.vertex_ids()[v]
                )));
            }
        }
        for g in faces.iter().filter(|g| self.perp.is_subset(**g)) {
            let fs: Vec<usize> = (0..self.facet_rays.len()).filter(|&f| g.contains(self.facet_rays[f])).collect();
            if !(0..p.num_vertices()).any(|v| fs.iter().all(|&f| p.facets()[f].contains(v))) {
                return Err(Error::Inconsistent(format!("face {:?} has no vertex in the polytope", s.ids(*g))));
            }
        }
        Ok(())
    }
}

/// Weights every oriented angle by the distance between its side rays in
/// the graph of the rays at its vertex, checks both hypotheses of the
/// diagram bound, and runs the weighted-angle verification.
pub fn diagram_pipeline<T: Scalar>(
    input: &DiagramInput<'_, T>,
    d: u32,
    rule: &WeightRule,
    mode: &ConstantsMode,
) -> Result<DiagramReport> {
    input.check_correspondence()?;
    let s = input.system;
    let p = input.polytope;
    let n = p.dim();
    let perp = input.perp;

    let mut graphs: BTreeMap<usize, OrientedGraph> = BTreeMap::new();
    let mut angles = Vec::new();
    let mut weights = BTreeMap::new();
    for a in enumerate_angles(p)? {
        if !graphs.contains_key(&a.vertex) {
            graphs.insert(a.vertex, build_graph(s, input.rays_of(&p.facets_at(a.vertex)))?);
        }
        let (r1, r2) = (input.facet_rays[a.sides.0], input.facet_rays[a.sides.1]);
        let distance = graph_distance(&graphs[&a.vertex], r1, r2);
        let weight = sigma(rule, distance);
        weights.insert(a.key(), weight.clone());
        angles.push(AngleWeight { key: a.key(), rays: (r1, r2), distance, weight });
    }

    // Condition (b): every extremal set between perp and R(gamma).
    let mut extremal: BTreeSet<RaySet> = BTreeSet::new();
    for v in 0..p.num_vertices() {
        for sub in input.rays_of(&p.facets_at(v)).difference(perp).subsets() {
            extremal.insert(perp.union(sub));
        }
    }
    let mut counts = Vec::new();
    let mut condition_b_failures = Vec::new();
    let (mut c1, mut c2) = (Rational::zero(), Rational::zero());
    for &e in &extremal {
        if !e.is_empty() && !check_condition_ii(s, e)? {
            condition_b_failures.push(format!("{:?} violates condition (ii)", s.ids(e)));
        }
        let size = e.difference(perp).len();
        if size == 0 {
            continue;
        }
        let (k1, k2) = count_condition_b(s, e, perp, d)?;
        c1 = c1.max(Rational::new(BigInt::from(k1), BigInt::from(size)));
        c2 = c2.max(Rational::new(BigInt::from(k2), BigInt::from(size)));
        counts.push((e, k1, k2, size));
    }
    if let ConstantsMode::Supplied { c1: s1, c2: s2 } = mode {
        for &(e, k1, k2, size) in &counts {
            if int(k1) > s1 * int(size) || int(k2) > s2 * int(size) {
                condition_b_failures
                    .push(format!("{:?} has pair counts ({k1}, {k2}) above the supplied constants", s.ids(e)));
            }
        }
    }

    // Condition (a): qualifying E-sets satisfy (iii) and have diameter <= d.
    let mut condition_a_failures = Vec::new();
    let within = input.rays_of(&(0..input.facet_rays.len()).collect::<Vec<_>>());
    for l in find_esets(s, within)? {
        if l.difference(perp).len() < 2 {
            continue;
        }
        let extends = l.subsets().filter(|&x| x != l).all(|x| s.is_extremal(perp.union(x)).unwrap_or(false));
        if !extends {
            continue;
        }
        if check_condition_iii(s, l)?.is_none() {
            condition_a_failures.push(format!("E-set {:?} violates condition (iii)", s.ids(l)));
        }
        let diam = build_graph(s, l)?.diameter();
        if !matches!(diam, Distance::Finite(k) if k <= d) {
            condition_a_failures.push(format!("E-set {:?} has diameter {diam} > {d}", s.ids(l)));
        }
    }

    let (c, dd) = match (mode, rule) {
        (ConstantsMode::Direct { c, d }, _) => (c.clone(), d.clone()),
        (ConstantsMode::Supplied { c1, c2 }, _) => (q(2, 3) * c1 + q(1, 2) * c2, Rational::zero()),
        (ConstantsMode::Empirical, WeightRule::Adjacent) => (Rational::zero(), q(2, 3)),
        (ConstantsMode::Empirical, WeightRule::Graded(_)) => (q(2, 3) * &c1 + q(1, 2) * &c2, Rational::zero()),
        (ConstantsMode::Empirical, WeightRule::Custom(_)) => {
            let max = angles.iter().fold(BTreeMap::<usize, Rational>::new(), |mut m, a| {
                *m.entry(a.key.0).or_insert_with(Rational::zero) += &a.weight;
                m
            });
            let top = max.values().cloned().max().unwrap_or_else(Rational::zero);
            (if n > 0 { top / int(n) } else { Rational::zero() }, Rational::zero())
        }
    };
    let bound = verify_angle_weights(p, &weights, &c, &dd)?;

    let simple_in_face = input.model.map(|m| is_simple_in_face(m, perp)).transpose()?;
    let mut counterexamples = Vec::new();
    for &f in &bound.failing_faces {
        let face = &p.faces()[f];
        let ids: Vec<i64> = face.vertices.iter().map(|v| p.vertex_ids()[v]).collect();
        let sum = &bound.face_sums.iter().find(|x| x.0 == f).expect("face listed").2;
        counterexamples.push(format!(
            "2-face {f} with vertices {ids:?} has weight {} below {}",
            format_scalar(sum),
            5 - face.vertices.len() as i64
        ));
    }
    for &v in &bound.failing_vertices {
        counterexamples.push(format!(
            "vertex {} has weight {} above Cn + D = {}",
            p.vertex_ids()[v],
            format_scalar(&bound.vertex_sums[v].1),
            format_scalar(&(&c * int(n) + &dd))
        ));
    }
    counterexamples.extend(condition_a_failures.iter().cloned());
    counterexamples.extend(condition_b_failures.iter().cloned());
    if simple_in_face == Some(false) {
        counterexamples.push("the cone is not simple in this face".into());
    }
    let conforming = counterexamples.is_empty();

    let dimension_bound = match rule {
        WeightRule::Graded(_) if conforming => {
            let (b1, b2) = match mode {
                ConstantsMode::Supplied { c1, c2 } => (c1.clone(), c2.clone()),
                _ => (c1.clone(), c2.clone()),
            };
            let out = diagram_bound(&b1, &b2);
            if int(n) >= out.0 {
                counterexamples.push(format!("dimension {n} is not below the bound {}", format_scalar(&out.0)));
            }
            Some(out)
        }
        _ => None,
    };

    let replay = match rule {
        WeightRule::Adjacent => {
            let mut per_vertex = vec![0usize; p.num_vertices()];
            for a in angles.iter().filter(|a| a.weight == q(2, 3)) {
                per_vertex[a.key.0] += 1;
            }
            let max_vertex_sum = bound.max_vertex_sum();
            Some(ReplayComparison {
                c: Rational::zero(),
                d: q(2, 3),
                disagrees: max_vertex_sum > q(2, 3),
                max_vertex_sum,
                max_two_thirds_per_vertex: per_vertex.into_iter().max().unwrap_or(0),
            })
        }
        _ => None,
    };

    Ok(DiagramReport {
        rule: rule.clone(),
        d,
        angles,
        c1,
        c2,
        bound,
        condition_a_failures,
        condition_b_failures,
        simple_in_face,
        conforming,
        dimension_bound,
        replay,
        counterexamples,
    })
}

impl DiagramReport {
    pub fn max_n(&self) -> usize {
        weighted_angle_max_n(&self.bound.c, &self.bound.d)
    }

    pub fn to_json<T: Scalar>(&self, s: &RayDivisorSystem<T>) -> Value {
        json!({
            "rule": self.rule.to_string(),
            "d": self.d,
            "C1": format_scalar(&self.c1),
            "C2": format_scalar(&self.c2),
            "conforming": self.conforming,
            "simple_in_face": self.simple_in_face.map_or(json!("unverified"), |b| json!(b)),
            "angles": self.angles.iter().map(|a| json!({
                "vertex": a.key.0,
                "plane": a.key.1,
                "sides": [s.ray(a.rays.0).id, s.ray(a.rays.1).id],
                "distance": a.distance.to_string(),
                "weight": format_scalar(&a.weight),
            })).collect::<Vec<_>>(),
            "report": self.bound.to_json(),
            "dimension_bound": self.dimension_bound.as_ref().map(|(v, m)| json!({"value": format_scalar(v), "max": m})),
            "replay": self.replay.as_ref().map(|r| json!({
                "C": format_scalar(&r.c),
                "D": format_scalar(&r.d),
                "max_vertex_sum": format_scalar(&r.max_vertex_sum),
                "max_two_thirds_per_vertex": r.max_two_thirds_per_vertex,
                "disagrees": r.disagrees,
            })),
            "counterexamples": self.counterexamples,
        })
    }
}
