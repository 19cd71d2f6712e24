use crate::raysystem::{RayDivisorSystem, RayType};
use crate::SmallRational;

use super::systems::Draft;

/// Divisor assignments with at most two rays per divisor, shared only by
/// type II rays, as restricted growth strings.
fn divisor_assignments(kinds: &[RayType]) -> Vec<Vec<usize>> {
    fn rec(kinds: &[RayType], cur: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        let r = cur.len();
        if r == kinds.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            if b < blocks {
                let members: Vec<usize> = (0..r).filter(|&i| cur[i] == b).collect();
                if members.len() >= 2
                    || kinds[r] != RayType::TypeII
                    || members.iter().any(|&i| kinds[i] != RayType::TypeII)
                {
                    continue;
                }
            }
            cur.push(b);
            rec(kinds, cur, blocks.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(kinds, &mut Vec::new(), 0, &mut out);
    out
}

/// Every valid system (without faces) with `1..=max_divisorial` divisorial
/// rays, own pairings -1, foreign pairings in {0, 1} and any intersection
/// pattern. With `small_ray`, systems with at most three divisorial rays
/// are also produced with one extra small ray pairing in {-1, 0, 1}.
pub fn sign_pattern_systems(max_divisorial: usize, small_ray: bool) -> Vec<RayDivisorSystem<SmallRational>> {
    let mut out = Vec::new();
    for n in 1..=max_divisorial {
        for kind_mask in 0u32..1 << n {
            let kinds: Vec<RayType> =
                (0..n).map(|i| if kind_mask >> i & 1 == 1 { RayType::TypeII } else { RayType::TypeI }).collect();
            for assign in divisor_assignments(&kinds) {
                let nd = assign.iter().max().map_or(0, |m| m + 1);
                let pairs: Vec<(usize, usize)> = (0..nd).flat_map(|a| (a + 1..nd).map(move |b| (a, b))).collect();
                for meet_mask in 0u32..1 << pairs.len() {
                    let meets: Vec<(usize, usize)> =
                        pairs.iter().enumerate().filter(|(i, _)| meet_mask >> i & 1 == 1).map(|(_, &p)| p).collect();
                    let touching = |a: usize, b: usize| meets.contains(&(a.min(b), a.max(b)));
                    let entries: Vec<(usize, usize)> = (0..n)
                        .flat_map(|r| (0..nd).map(move |e| (r, e)))
                        .filter(|&(r, e)| e != assign[r] && touching(assign[r], e))
                        .collect();
                    for value_mask in 0u64..1 << entries.len() {
                        let mut q = vec![vec![0i64; nd]; n];
                        for r in 0..n {
                            q[r][assign[r]] = -1;
                        }
                        for (i, &(r, e)) in entries.iter().enumerate() {
                            q[r][e] = (value_mask >> i & 1) as i64;
                        }
                        let rays: Vec<(RayType, Option<usize>)> =
                            kinds.iter().zip(&assign).map(|(&k, &d)| (k, Some(d))).collect();
                        let mut draft = Draft::numbered(rays.clone(), nd);
                        draft.q = q.clone();
                        draft.meets = meets.clone();
                        let s = draft.build::<SmallRational>().expect("shapes are consistent");
                        if !s.is_valid() {
                            continue;
                        }
                        out.push(s);
                        if !small_ray || n > 3 {
                            continue;
                        }
                        for code in 0..3usize.pow(nd as u32) {
                            let mut rays = rays.clone();
                            rays.push((RayType::Small, None));
                            let mut draft = Draft::numbered(rays, nd);
                            let row: Vec<i64> = (0..nd).map(|e| (code / 3usize.pow(e as u32) % 3) as i64 - 1).collect();
                            draft.q = q.iter().cloned().chain(std::iter::once(row)).collect();
                            draft.meets = meets.clone();
                            let s = draft.build::<SmallRational>().expect("shapes are consistent");
                            if s.is_valid() {
                                out.push(s);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}
