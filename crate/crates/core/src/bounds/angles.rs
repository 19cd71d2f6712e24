use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{precondition, Error, Result};
use crate::exact::format_scalar;
use crate::polytope::{a02_bound, CombinatorialPolytope};
use crate::Rational;

use super::weights::{weighted_angle_max_n, weighted_angle_rhs};

/// `(vertex, plane, first side facet, second side facet)`.
pub type AngleKey = (usize, usize, usize, usize);

/// An oriented plane angle of a simple polytope. Sides are named by the facet
/// at the vertex that contains them but not the plane; `perp` lists the
/// facets containing the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleData {
    pub vertex: usize,
    pub plane: usize,
    pub sides: (usize, usize),
    pub perp: Vec<usize>,
}

impl AngleData {
    pub fn key(&self) -> AngleKey {
        (self.vertex, self.plane, self.sides.0, self.sides.1)
    }
}

/// Both orientations of every plane angle, grouped by vertex.
pub fn enumerate_angles(p: &CombinatorialPolytope) -> Result<Vec<AngleData>> {
    if !p.is_simple() {
        return precondition("polytope is not simple");
    }
    let mut out = Vec::new();
    for v in 0..p.num_vertices() {
        let at = p.facets_at(v);
        for (plane, face) in p.faces_of_dim(2).filter(|(_, f)| f.vertices.contains(v)) {
            let sides: Vec<usize> = at.iter().copied().filter(|&j| !face.facets.contains(j)).collect();
            let [a, b] = sides[..] else {
                return Err(Error::Inconsistent(format!("2-face {plane} has {} sides at vertex {v}", sides.len())));
            };
            let perp: Vec<usize> = face.facets.iter().collect();
            out.push(AngleData { vertex: v, plane, sides: (a, b), perp: perp.clone() });
            out.push(AngleData { vertex: v, plane, sides: (b, a), perp });
        }
    }
    Ok(out)
}

/// Re-derivation of the counting chain behind the weighted-angle bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainAudit {
    pub alpha0: usize,
    pub alpha2: usize,
    pub total: Rational,
    pub average_vertices_per_2face: Rational,
    pub upper: Rational,
    pub lower: Rational,
    pub upper_holds: bool,
    pub lower_holds: bool,
    pub counting_identity: bool,
    pub average_below_closed_form: Option<bool>,
    pub slack_violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub c: Rational,
    pub d: Rational,
    pub vertex_sums: Vec<(usize, Rational)>,
    /// `(2-face, vertex count, weight sum)`.
    pub face_sums: Vec<(usize, usize, Rational)>,
    pub failing_vertices: Vec<usize>,
    pub failing_faces: Vec<usize>,
    pub condition1: bool,
    pub condition2: bool,
    pub conditions_hold: bool,
    pub rhs: Option<Rational>,
    pub max_n: usize,
    pub chain: ChainAudit,
}

/// Checks the vertex condition `sum <= C n + D` and the face condition
/// `sum >= 5 - k`, then audits the inequality chain they imply.
pub fn verify_angle_weights(
    p: &CombinatorialPolytope,
    weights: &BTreeMap<AngleKey, Rational>,
    c: &Rational,
    d: &Rational,
) -> Result<BoundReport> {
    let angles = enumerate_angles(p)?;
    let n = p.dim();
    let nr = Rational::from_integer(BigInt::from(n));
    let cap = c * &nr + d;
    let mut vertex = vec![Rational::zero(); p.num_vertices()];
    let mut plane: BTreeMap<usize, Rational> = BTreeMap::new();
    for a in &angles {
        let w = weights.get(&a.key()).ok_or_else(|| Error::Missing(format!("weight for angle {:?}", a.key())))?;
        vertex[a.vertex] += w;
        *plane.entry(a.plane).or_insert_with(Rational::zero) += w;
    }
    let mut face_sums = Vec::new();
    for (idx, f) in p.faces_of_dim(2) {
        face_sums.push((idx, f.vertices.len(), plane.get(&idx).cloned().unwrap_or_else(Rational::zero)));
    }
    let failing_vertices: Vec<usize> = (0..vertex.len()).filter(|&v| vertex[v] > cap).collect();
    let failing_faces: Vec<usize> = face_sums
        .iter()
        .filter(|(_, k, s)| *s < Rational::from_integer(5.into()) - Rational::from_integer(BigInt::from(*k)))
        .map(|(i, _, _)| *i)
        .collect();
    let (condition1, condition2) = (failing_vertices.is_empty(), failing_faces.is_empty());

    let alpha0 = p.num_vertices();
    let alpha2 = face_sums.len();
    let total: Rational = vertex.iter().sum();
    let vertex_incidences: usize = face_sums.iter().map(|(_, k, _)| k).sum();
    let average = if alpha2 > 0 {
        Rational::new(BigInt::from(vertex_incidences), BigInt::from(alpha2))
    } else {
        Rational::zero()
    };
    let upper = cap.clone() * Rational::from_integer(BigInt::from(alpha0));
    let lower = Rational::from_integer(BigInt::from(alpha2)) * (Rational::from_integer(5.into()) - &average);
    let counting_identity = alpha0 * n * n.saturating_sub(1) / 2 == vertex_incidences;
    let (upper_holds, lower_holds) = (upper >= total, total >= lower);
    let average_below_closed_form = if n >= 3 { Some(average < a02_bound(n)?) } else { None };
    let rhs = weighted_angle_rhs(c, d, n);
    let mut slack_violations = 0;
    slack_violations += usize::from(condition1 && !upper_holds);
    slack_violations += usize::from(condition2 && !lower_holds);
    slack_violations += usize::from(!counting_identity);
    slack_violations += usize::from(average_below_closed_form == Some(false));
    if condition1 && condition2 {
        if let Some(r) = &rhs {
            slack_violations += usize::from(nr >= *r);
        }
    }
    Ok(BoundReport {
        n,
        c: c.clone(),
        d: d.clone(),
        vertex_sums: vertex.into_iter().enumerate().collect(),
        face_sums,
        failing_vertices,
        failing_faces,
        condition1,
        condition2,
        conditions_hold: condition1 && condition2,
        rhs,
        max_n: weighted_angle_max_n(c, d),
        chain: ChainAudit {
            alpha0,
            alpha2,
            total,
            average_vertices_per_2face: average,
            upper,
            lower,
            upper_holds,
            lower_holds,
            counting_identity,
            average_below_closed_form,
            slack_violations,
        },
    })
}

impl BoundReport {
    pub fn max_vertex_sum(&self) -> Rational {
        self.vertex_sums.iter().map(|(_, s)| s.clone()).max().unwrap_or_else(Rational::zero)
    }

    pub fn to_json(&self) -> Value {
        let ch = &self.chain;
        json!({
            "n": self.n,
            "C": format_scalar(&self.c),
            "D": format_scalar(&self.d),
            "vertex_sums": self.vertex_sums.iter().map(|(v, s)| json!({"vertex": v, "sum": format_scalar(s)})).collect::<Vec<_>>(),
            "face_sums": self.face_sums.iter().map(|(f, k, s)| json!({"face": f, "k": k, "sum": format_scalar(s)})).collect::<Vec<_>>(),
            "failing_vertices": self.failing_vertices,
            "failing_faces": self.failing_faces,
            "conditions_hold": self.conditions_hold,
            "rhs": self.rhs.as_ref().map(format_scalar),
            "max_n": self.max_n,
            "chain": {
                "alpha0": ch.alpha0,
                "alpha2": ch.alpha2,
                "total": format_scalar(&ch.total),
                "average_vertices_per_2face": format_scalar(&ch.average_vertices_per_2face),
                "upper": format_scalar(&ch.upper),
                "lower": format_scalar(&ch.lower),
                "upper_holds": ch.upper_holds,
                "lower_holds": ch.lower_holds,
                "counting_identity": ch.counting_identity,
                "average_below_closed_form": ch.average_below_closed_form,
                "slack_violations": ch.slack_violations,
            },
        })
    }
}
