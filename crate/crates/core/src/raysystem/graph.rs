use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::raysystem::{RayDivisorSystem, RaySet};

/// Length of a shortest oriented path; `Infinite` orders above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn plus(self, other: Distance) -> Distance {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// Arrow `a -> b` iff `a` pairs positively with the divisor of `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedGraph {
    nodes: Vec<usize>,
    adj: Vec<Vec<bool>>,
}

impl OrientedGraph {
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    fn local(&self, ray: usize) -> Result<usize> {
        self.nodes.binary_search(&ray).map_err(|_| Error::UnknownId(format!("ray index {ray} not in graph")))
    }

    pub fn has_arrow(&self, a: usize, b: usize) -> bool {
        match (self.nodes.binary_search(&a), self.nodes.binary_search(&b)) {
            (Ok(i), Ok(j)) => self.adj[i][j],
            _ => false,
        }
    }

    /// Arrows as ray-index pairs, in lexicographic order.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let n = self.nodes.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adj[i][j])
            .map(|(i, j)| (self.nodes[i], self.nodes[j]))
            .collect()
    }

    /// Breadth-first distances from `a` to every node, in node order.
    pub fn distances_from(&self, a: usize) -> Result<Vec<Distance>> {
        let s = self.local(a)?;
        let n = self.nodes.len();
        let mut dist = vec![Distance::Infinite; n];
        dist[s] = Distance::Finite(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].finite().expect("queued nodes are reached");
            for v in 0..n {
                if self.adj[u][v] && dist[v] == Distance::Infinite {
                    dist[v] = Distance::Finite(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// Distances between all ordered pairs, indexed by local node position.
    pub fn all_pairs(&self) -> Vec<Vec<Distance>> {
        self.nodes.iter().map(|&a| self.distances_from(a).expect("node of this graph")).collect()
    }

    /// Largest distance between distinct nodes; zero for fewer than two nodes.
    pub fn diameter(&self) -> Distance {
        let all = self.all_pairs();
        let mut best = Distance::Finite(0);
        for (i, row) in all.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                if i != j && d > best {
                    best = d;
                }
            }
        }
        best
    }
}

pub fn build_graph<T: Scalar>(s: &RayDivisorSystem<T>, subset: RaySet) -> Result<OrientedGraph> {
    s.require_divisorial(subset)?;
    let nodes: Vec<usize> = subset.iter().collect();
    let adj = nodes.iter().map(|&a| nodes.iter().map(|&b| a != b && s.q_rays(a, b).is_positive()).collect()).collect();
    Ok(OrientedGraph { nodes, adj })
}

pub fn distance(g: &OrientedGraph, a: usize, b: usize) -> Result<Distance> {
    let j = g.local(b)?;
    Ok(g.distances_from(a)?[j])
}

/// Components of `subset` under divisor intersection.
pub fn divisorial_components<T: Scalar>(s: &RayDivisorSystem<T>, subset: RaySet) -> Result<Vec<RaySet>> {
    s.require_divisorial(subset)?;
    let mut rest = subset;
    let mut out = Vec::new();
    while let Some(start) = rest.iter().next() {
        let mut comp = RaySet::single(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in rest.iter() {
                if !comp.contains(v) && s.rays_meet(u, v) {
                    comp = comp.with(v);
                    stack.push(v);
                }
            }
        }
        rest = rest.difference(comp);
        out.push(comp);
    }
    Ok(out)
}

/// Every ordered pair of distinct rays is joined by an oriented path.
pub fn is_single_arrow_connected<T: Scalar>(s: &RayDivisorSystem<T>, subset: RaySet) -> Result<bool> {
    Ok(build_graph(s, subset)?.diameter() != Distance::Infinite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raysystem::{Ray, RayType};
    use crate::Rational;
    use proptest::prelude::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    /// Type II rays `0..n`, ray `i` on divisor `i`, with the given pairing.
    fn system(q: &[&[i64]], meets: &[(usize, usize)]) -> RayDivisorSystem<Rational> {
        let n = q.len();
        let rays = (0..n).map(|i| Ray { id: format!("S{}", i + 1), kind: RayType::TypeII, divisor: Some(i) }).collect();
        let divs = (0..n).map(|i| format!("D{}", i + 1)).collect();
        let pairing = q.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect();
        RayDivisorSystem::new(rays, divs, pairing, meets).unwrap()
    }

    fn cycle() -> RayDivisorSystem<Rational> {
        system(&[&[-1, 1, 0], &[0, -1, 1], &[1, 0, -1]], &[(0, 1), (1, 2), (0, 2)])
    }

    #[test]
    fn three_cycle_distances() {
        let s = cycle();
        let g = build_graph(&s, s.all_rays()).unwrap();
        assert_eq!(g.arrows(), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(distance(&g, 0, 2).unwrap(), Distance::Finite(2));
        assert_eq!(distance(&g, 0, 1).unwrap(), Distance::Finite(1));
        assert_eq!(distance(&g, 1, 1).unwrap(), Distance::Finite(0));
        assert_eq!(g.diameter(), Distance::Finite(2));
        assert!(is_single_arrow_connected(&s, s.all_rays()).unwrap());
    }

    #[test]
    fn hub_arrows_point_at_the_hub() {
        // Spokes S2, S3 pair positively with the hub divisor D1.
        let s = system(&[&[-1, 0, 0], &[1, -1, 0], &[1, 0, -1]], &[(0, 1), (0, 2)]);
        let g = build_graph(&s, s.all_rays()).unwrap();
        assert_eq!(g.arrows(), vec![(1, 0), (2, 0)]);
        assert!(!is_single_arrow_connected(&s, s.all_rays()).unwrap());
    }

    #[test]
    fn no_arrows_and_unreachable() {
        let s = system(&[&[-1, 0], &[0, -1]], &[]);
        let g = build_graph(&s, s.all_rays()).unwrap();
        assert!(g.arrows().is_empty());
        assert_eq!(distance(&g, 0, 1).unwrap(), Distance::Infinite);
        assert_eq!(divisorial_components(&s, s.all_rays()).unwrap().len(), 2);
        assert!(distance(&g, 0, 7).is_err());
    }

    #[test]
    fn single_arrow_and_singleton() {
        let s = system(&[&[-1, 1], &[0, -1]], &[(0, 1)]);
        assert!(!is_single_arrow_connected(&s, s.all_rays()).unwrap());
        assert!(is_single_arrow_connected(&s, RaySet::single(0)).unwrap());
        assert_eq!(divisorial_components(&s, s.all_rays()).unwrap(), vec![s.all_rays()]);
    }

    #[test]
    fn shared_divisor_is_one_component_and_small_rays_are_rejected() {
        let rays = vec![
            Ray { id: "R11".into(), kind: RayType::TypeII, divisor: Some(0) },
            Ray { id: "R12".into(), kind: RayType::TypeII, divisor: Some(0) },
            Ray { id: "S".into(), kind: RayType::Small, divisor: None },
        ];
        let s = RayDivisorSystem::new(rays, vec!["D".into()], vec![vec![r(-1)], vec![r(-1)], vec![r(1)]], &[]).unwrap();
        assert_eq!(divisorial_components(&s, RaySet::from_indices([0, 1])).unwrap().len(), 1);
        assert!(build_graph(&s, s.all_rays()).is_err());
    }

    fn arb_system() -> impl Strategy<Value = RayDivisorSystem<Rational>> {
        (2usize..7).prop_flat_map(|n| {
            prop::collection::vec(-1i64..2, n * n).prop_map(move |vals| {
                let q: Vec<Vec<Rational>> =
                    (0..n).map(|i| (0..n).map(|j| if i == j { r(-1) } else { r(vals[i * n + j]) }).collect()).collect();
                let meets: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
                let rays =
                    (0..n).map(|i| Ray { id: format!("S{i}"), kind: RayType::TypeII, divisor: Some(i) }).collect();
                RayDivisorSystem::new(rays, (0..n).map(|i| format!("D{i}")).collect(), q, &meets).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn triangle_inequality(s in arb_system()) {
            let g = build_graph(&s, s.all_rays()).unwrap();
            let d = g.all_pairs();
            let n = d.len();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        prop_assert!(d[a][c] <= d[a][b].plus(d[b][c]));
                    }
                }
            }
        }

        #[test]
        fn restriction_only_removes_arrows(s in arb_system(), mask in any::<u64>()) {
            let full = build_graph(&s, s.all_rays()).unwrap();
            let sub = RaySet(mask).intersection(s.all_rays());
            let g = build_graph(&s, sub).unwrap();
            for (a, b) in g.arrows() {
                prop_assert!(full.has_arrow(a, b));
            }
            for (a, b) in full.arrows() {
                if sub.contains(a) && sub.contains(b) {
                    prop_assert!(g.has_arrow(a, b));
                }
            }
            // Distances can only grow under restriction.
            let fd = full.all_pairs();
            let gd = g.all_pairs();
            for (i, &a) in g.nodes().iter().enumerate() {
                for (j, &b) in g.nodes().iter().enumerate() {
                    prop_assert!(gd[i][j] >= fd[a][b]);
                }
            }
        }
    }
}
