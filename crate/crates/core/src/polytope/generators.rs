use crate::error::{Error, Result};
use crate::polytope::CombinatorialPolytope;

/// The `n`-simplex: `n + 1` vertices, facet `i` omits vertex `i`.
pub fn simplex(n: usize) -> CombinatorialPolytope {
    let verts: Vec<i64> = (0..=n as i64).collect();
    let facets = verts.iter().map(|&i| verts.iter().copied().filter(|&v| v != i).collect()).collect();
    CombinatorialPolytope::new(n, verts, facets).expect("simplex incidence is valid")
}

/// The `n`-cube: vertices are bit masks, facets fix one coordinate.
pub fn cube(n: usize) -> CombinatorialPolytope {
    let verts: Vec<i64> = (0..1i64 << n).collect();
    let mut facets = Vec::with_capacity(2 * n);
    for bit in 0..n {
        for val in [0, 1] {
            facets.push(verts.iter().copied().filter(|v| (v >> bit) & 1 == val).collect());
        }
    }
    CombinatorialPolytope::new(n, verts, facets).expect("cube incidence is valid")
}

/// The `m`-gon.
pub fn polygon(m: usize) -> Result<CombinatorialPolytope> {
    cyclic_dual(2, m)
}

fn gale_even(subset: &[usize], m: usize) -> bool {
    let inside = |x: usize| subset.contains(&x);
    for i in 0..m {
        for j in i + 1..m {
            if inside(i) || inside(j) {
                continue;
            }
            if subset.iter().filter(|&&s| i < s && s < j).count() % 2 == 1 {
                return false;
            }
        }
    }
    true
}

fn subsets(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in start..m {
            cur.push(x);
            rec(x + 1, m, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, n, &mut Vec::new(), &mut out);
    out
}

/// The polar dual of the cyclic polytope with `m` vertices in dimension `n`.
///
/// Vertices are the facets of the cyclic polytope (the `n`-subsets of
/// `0..m` satisfying Gale's evenness condition); facet `j` collects those
/// containing `j`. The result is simple with `m` facets.
pub fn cyclic_dual(n: usize, m: usize) -> Result<CombinatorialPolytope> {
    if n < 2 || m < n + 1 {
        return Err(Error::Precondition(format!("cyclic polytope needs n >= 2 and m > n (got n={n}, m={m})")));
    }
    let verts: Vec<Vec<usize>> = subsets(m, n).into_iter().filter(|s| gale_even(s, m)).collect();
    let ids: Vec<i64> = (0..verts.len() as i64).collect();
    let facets =
        (0..m).map(|j| (0..verts.len()).filter(|&v| verts[v].contains(&j)).map(|v| v as i64).collect()).collect();
    CombinatorialPolytope::new(n, ids, facets)
}

/// The direct product. Vertex `(a, b)` gets id `a_index * |Q| + b_index`.
pub fn product(p: &CombinatorialPolytope, q: &CombinatorialPolytope) -> CombinatorialPolytope {
    let (np, nq) = (p.num_vertices(), q.num_vertices());
    let id = |a: usize, b: usize| (a * nq + b) as i64;
    let verts: Vec<i64> = (0..np).flat_map(|a| (0..nq).map(move |b| id(a, b))).collect();
    let mut facets = Vec::new();
    for f in p.facets() {
        facets.push(f.iter().flat_map(|a| (0..nq).map(move |b| id(a, b))).collect());
    }
    for g in q.facets() {
        facets.push((0..np).flat_map(|a| g.iter().map(move |b| id(a, b))).collect());
    }
    CombinatorialPolytope::new(p.dim() + q.dim(), verts, facets).expect("product of polytopes is a polytope")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial;
    use crate::polytope::FVector;

    #[test]
    fn polygons() {
        for m in 3..9 {
            let p = polygon(m).unwrap();
            assert_eq!(p.f_vector(), FVector(vec![m, m, 1]));
            assert!(p.is_simple());
        }
    }

    /// Upper bound theorem: the cyclic polytope C(n, m) has as many facets as
    /// any n-polytope with m vertices, a count with a closed form.
    fn cyclic_facet_count(n: u64, m: u64) -> u64 {
        let c = |a: u64, b: u64| binomial(a, b).to_string().parse::<u64>().unwrap();
        if n % 2 == 0 {
            let h = n / 2;
            m * c(m - h - 1, h - 1) / h
        } else {
            let h = (n - 1) / 2;
            2 * c(m - h - 1, h)
        }
    }

    #[test]
    fn cyclic_duals_are_simple_with_expected_vertex_count() {
        for n in 2..6usize {
            for m in n + 1..=10 {
                let p = cyclic_dual(n, m).unwrap();
                assert!(p.is_simple(), "C({n},{m})*");
                assert_eq!(p.facets().len(), m);
                assert_eq!(p.num_vertices() as u64, cyclic_facet_count(n as u64, m as u64), "C({n},{m})*");
            }
        }
        assert!(cyclic_dual(3, 3).is_err());
    }

    #[test]
    fn dual_of_simplex_is_simplex() {
        assert_eq!(cyclic_dual(3, 4).unwrap().f_vector(), simplex(3).f_vector());
    }

    #[test]
    fn products_match_cube_and_prism() {
        let seg = simplex(1);
        assert_eq!(product(&product(&seg, &seg), &seg).f_vector(), cube(3).f_vector());
        let prism = product(&simplex(2), &seg);
        assert_eq!(prism.f_vector(), FVector(vec![6, 9, 5, 1]));
        assert!(prism.is_simple());
    }

    /// f-vector of a product: f_k(P x Q) = sum_{i+j=k} f_i(P) f_j(Q).
    #[test]
    fn product_f_vector_convolution() {
        let a = cyclic_dual(2, 5).unwrap();
        let b = simplex(3);
        let fa = a.f_vector().0;
        let fb = b.f_vector().0;
        let mut expect = vec![0; fa.len() + fb.len() - 1];
        for (i, x) in fa.iter().enumerate() {
            for (j, y) in fb.iter().enumerate() {
                expect[i + j] += x * y;
            }
        }
        assert_eq!(product(&a, &b).f_vector().0, expect);
    }
}
