use crate::bounds::{DiagramFile, DiagramInput};
use crate::error::Result;
use crate::polytope::{polygon, product, simplex, CombinatorialPolytope, PolytopeFile};
use crate::raysystem::{RaySet, RayType, SystemFile};
use crate::{Rational, System};

use super::systems::Draft;

/// A system with a simple cross-section polytope and one ray per facet.
#[derive(Clone, Debug)]
pub struct DiagramFixture {
    pub name: String,
    pub system: System,
    pub polytope: CombinatorialPolytope,
    pub facet_rays: Vec<usize>,
    pub perp: RaySet,
}

impl DiagramFixture {
    pub fn input(&self) -> DiagramInput<'_, Rational> {
        DiagramInput {
            system: &self.system,
            polytope: &self.polytope,
            facet_rays: self.facet_rays.clone(),
            perp: self.perp,
            model: None,
        }
    }

    pub fn to_file(&self) -> DiagramFile {
        DiagramFile {
            system: SystemFile::from(&self.system),
            polytope: PolytopeFile::from(&self.polytope),
            facet_rays: self.facet_rays.iter().map(|&r| self.system.ray(r).id.clone()).collect(),
            perp: self.system.ids(self.perp),
        }
    }

    /// The rays at vertex `v`.
    pub fn vertex_rays(&self, v: usize) -> RaySet {
        self.polytope.facets_at(v).iter().fold(self.perp, |acc, &f| acc.with(self.facet_rays[f]))
    }

    fn assemble(name: &str, draft: Draft, polytope: CombinatorialPolytope, perp: RaySet) -> Result<Self> {
        let facet_rays: Vec<usize> = (0..polytope.facets().len()).collect();
        let mut faces: Vec<RaySet> = Vec::new();
        for v in 0..polytope.num_vertices() {
            let at = polytope.facets_at(v).iter().fold(perp, |acc, &f| acc.with(f));
            faces.extend(at.subsets());
        }
        faces.sort();
        faces.dedup();
        let system = draft.build::<Rational>()?.with_faces(faces)?;
        Ok(Self { name: name.into(), system, polytope, facet_rays, perp })
    }
}

fn all_type_ii(n: usize) -> Vec<(RayType, Option<usize>)> {
    (0..n).map(|i| (RayType::TypeII, Some(i))).collect()
}

/// An `m`-gon whose facet rays point around the cycle (`R_i . D_{i+1} = 1`,
/// reverse 0) and pair mutually with every non-adjacent ray. With
/// `with_perp`, a further type II ray with an isolated divisor is added to
/// every vertex.
pub fn cyclic_polygon(m: usize, with_perp: bool) -> Result<DiagramFixture> {
    let p = polygon(m)?;
    let n = m + usize::from(with_perp);
    let mut d = Draft::numbered(all_type_ii(n), n);
    if with_perp {
        d.ids[m] = "P".into();
    }
    for i in 0..n {
        d.q[i][i] = -1;
    }
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let next = j == (i + 1) % m;
            let prev = i == (j + 1) % m;
            d.q[i][j] = if next || !prev { 1 } else { 0 };
            if i < j {
                d.meets.push((i, j));
            }
        }
    }
    let perp = if with_perp { RaySet::single(m) } else { RaySet::EMPTY };
    let name = format!("cyclic-{m}-gon{}", if with_perp { "-perp" } else { "" });
    DiagramFixture::assemble(&name, d, p, perp)
}

/// Every facet ray of type II with its own divisor, all divisors disjoint
/// and every pairing between distinct rays zero.
pub fn disjoint_diagram(name: &str, p: CombinatorialPolytope) -> Result<DiagramFixture> {
    let n = p.facets().len();
    let mut d = Draft::numbered(all_type_ii(n), n);
    for i in 0..n {
        d.q[i][i] = -1;
    }
    DiagramFixture::assemble(name, d, p, RaySet::EMPTY)
}

/// A square with one type I ray `R1` forming `D2` pairs with both
/// neighbours, arrows `R2 -> R3 -> R4`, and mutual pairings across.
pub fn d2_square() -> Result<DiagramFixture> {
    let p = polygon(4)?;
    let rays = vec![
        (RayType::TypeI, Some(0)),
        (RayType::TypeII, Some(1)),
        (RayType::TypeII, Some(2)),
        (RayType::TypeII, Some(3)),
    ];
    let mut d = Draft::numbered(rays, 4);
    d.q = vec![vec![-2, 1, 2, 1], vec![1, -1, 1, 1], vec![1, 0, -1, 1], vec![1, 1, 0, -1]];
    d.meets = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    d.anticanonical = Some(vec![2, 1, 1, 1]);
    DiagramFixture::assemble("d2-square", d, p, RaySet::EMPTY)
}

/// Two cyclic triangles on disjoint divisors over the product of triangles.
pub fn cyclic_product() -> Result<DiagramFixture> {
    let tri = simplex(2);
    let p = product(&tri, &tri);
    let mut d = Draft::numbered(all_type_ii(6), 6);
    for block in [0, 3] {
        for i in 0..3 {
            d.q[block + i][block + i] = -1;
            d.q[block + i][block + (i + 1) % 3] = 1;
        }
        d.meets.extend([(block, block + 1), (block + 1, block + 2), (block, block + 2)]);
    }
    DiagramFixture::assemble("cyclic-triangle-product", d, p, RaySet::EMPTY)
}

/// The fixture collection used by the self-consistency checks.
pub fn standard_fixtures() -> Result<Vec<DiagramFixture>> {
    let mut out = Vec::new();
    for m in 3..=8 {
        out.push(cyclic_polygon(m, false)?);
        out.push(cyclic_polygon(m, true)?);
    }
    out.push(d2_square()?);
    out.push(cyclic_product()?);
    for m in 3..=6 {
        out.push(disjoint_diagram(&format!("disjoint-{m}-gon"), polygon(m)?)?);
    }
    for n in 2..=4 {
        out.push(disjoint_diagram(&format!("disjoint-simplex-{n}"), simplex(n))?);
    }
    out.push(disjoint_diagram("disjoint-cube-3", crate::polytope::cube(3))?);
    out.push(disjoint_diagram("disjoint-triangle-product", product(&simplex(2), &simplex(2)))?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        for f in standard_fixtures().unwrap() {
            assert!(f.system.is_valid(), "{}: {:?}", f.name, f.system.validate());
            for v in 0..f.polytope.num_vertices() {
                assert!(f.system.is_extremal(f.vertex_rays(v)).unwrap());
            }
        }
    }

    #[test]
    fn polygon_pairings() {
        let f = cyclic_polygon(5, false).unwrap();
        let s = &f.system;
        assert_eq!(s.q_rays(0, 1).to_string(), "1");
        assert_eq!(s.q_rays(1, 0).to_string(), "0");
        assert_eq!(s.q_rays(0, 2).to_string(), "1");
        assert_eq!(s.q_rays(2, 0).to_string(), "1");
        assert_eq!(s.q_rays(4, 0).to_string(), "1");
        assert_eq!(s.q_rays(0, 4).to_string(), "0");
    }

    #[test]
    fn file_round_trip() {
        let f = cyclic_polygon(4, true).unwrap();
        let file = f.to_file();
        let back = DiagramFile::from_json(&file.to_json()).unwrap();
        let (s, p, rays, perp) = back.build::<Rational>().unwrap();
        assert_eq!(s, f.system);
        assert_eq!(p.f_vector(), f.polytope.f_vector());
        assert_eq!(rays, f.facet_rays);
        assert_eq!(perp, f.perp);
    }
}
