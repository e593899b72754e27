//! Backtracking enumerators shared by the toric and splitting modules.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::hypergraph::Hypergraph;
use crate::multiset::Multiset;

/// Calls `f` on every edge multiset `u` with `A·u = target`.
///
/// `bound`, when given, restricts `u` to submultisets of it; `max_size`
/// bounds `|u|`. Edges are decided in increasing id order; a vertex whose
/// last incident candidate edge has been decided must be saturated.
pub(crate) fn for_each_factorization<F>(
    h: &Hypergraph,
    target: &[u32],
    bound: Option<&Multiset>,
    max_size: Option<usize>,
    mut f: F,
) -> ControlFlow<()>
where
    F: FnMut(&Multiset) -> ControlFlow<()>,
{
    let candidates: Vec<usize> = (0..h.n_edges())
        .filter(|&e| bound.is_none_or(|b| b.contains(e)))
        .filter(|&e| h.edges()[e].iter().all(|&v| target[v] > 0))
        .collect();
    let mut last = vec![usize::MAX; h.n_vertices()];
    for (pos, &e) in candidates.iter().enumerate() {
        for &v in &h.edges()[e] {
            last[v] = pos;
        }
    }
    if target
        .iter()
        .zip(&last)
        .any(|(&t, &l)| t > 0 && l == usize::MAX)
    {
        return ControlFlow::Continue(());
    }
    let mut state = Dfs {
        h,
        candidates: &candidates,
        last: &last,
        bound,
        max_size: max_size.unwrap_or(usize::MAX),
        remaining: target.to_vec(),
        chosen: vec![0; candidates.len()],
        size: 0,
    };
    state.run(0, &mut f)
}

struct Dfs<'a> {
    h: &'a Hypergraph,
    candidates: &'a [usize],
    last: &'a [usize],
    bound: Option<&'a Multiset>,
    max_size: usize,
    remaining: Vec<u32>,
    chosen: Vec<u32>,
    size: usize,
}

impl Dfs<'_> {
    fn run<F>(&mut self, pos: usize, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Multiset) -> ControlFlow<()>,
    {
        if pos == self.candidates.len() {
            return if self.remaining.iter().all(|&r| r == 0) {
                let u = Multiset::from_pairs(
                    self.candidates
                        .iter()
                        .zip(&self.chosen)
                        .map(|(&e, &k)| (e, k)),
                );
                f(&u)
            } else {
                ControlFlow::Continue(())
            };
        }
        let e = self.candidates[pos];
        let verts = &self.h.edges()[e];
        let mut k_max = verts.iter().map(|&v| self.remaining[v]).min().unwrap_or(0);
        if let Some(b) = self.bound {
            k_max = k_max.min(b.multiplicity(e));
        }
        k_max = k_max.min(u32::try_from(self.max_size - self.size).unwrap_or(u32::MAX));
        // Vertices closing at this edge force the multiplicity.
        let mut forced: Option<u32> = None;
        for &v in verts {
            if self.last[v] == pos {
                match forced {
                    Some(k) if k != self.remaining[v] => return ControlFlow::Continue(()),
                    _ => forced = Some(self.remaining[v]),
                }
            }
        }
        let range = match forced {
            Some(k) if k > k_max => return ControlFlow::Continue(()),
            Some(k) => k..=k,
            None => 0..=k_max,
        };
        for k in range.rev() {
            for &v in verts {
                self.remaining[v] -= k;
            }
            self.chosen[pos] = k;
            self.size += k as usize;
            let flow = self.run(pos + 1, f);
            self.size -= k as usize;
            self.chosen[pos] = 0;
            for &v in verts {
                self.remaining[v] += k;
            }
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Every edge multiset `u` with `A·u = target`.
pub(crate) fn factorizations(
    h: &Hypergraph,
    target: &[u32],
    bound: Option<&Multiset>,
    max_size: Option<usize>,
) -> Vec<Multiset> {
    let mut out = Vec::new();
    let _ = for_each_factorization(h, target, bound, max_size, |u| {
        out.push(u.clone());
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// Whether some `u ⊆ bound` has `A·u = target`.
pub(crate) fn has_factorization(h: &Hypergraph, target: &[u32], bound: &Multiset) -> bool {
    for_each_factorization(h, target, Some(bound), None, |_| ControlFlow::Break(())).is_break()
}

/// All submultisets of `m`, the empty one and `m` included, in a fixed order.
pub(crate) fn sub_multisets(m: &Multiset) -> Vec<Multiset> {
    let pairs: Vec<(usize, u32)> = m.iter().collect();
    let mut out = vec![Multiset::new()];
    for (e, k) in pairs {
        let mut next = Vec::with_capacity(out.len() * (k as usize + 1));
        for base in &out {
            for j in 0..=k {
                let mut s = base.clone();
                s.insert(e, j);
                next.push(s);
            }
        }
        out = next;
    }
    out
}

/// Buckets every monomial of total degree `1..=cap` by its degree vector.
pub(crate) fn monomials_by_degree(h: &Hypergraph, cap: usize) -> HashMap<Vec<u32>, Vec<Multiset>> {
    fn rec(
        h: &Hypergraph,
        start: usize,
        left: usize,
        cur: &mut Vec<usize>,
        deg: &mut Vec<u32>,
        out: &mut HashMap<Vec<u32>, Vec<Multiset>>,
    ) {
        if !cur.is_empty() {
            out.entry(deg.clone())
                .or_default()
                .push(cur.iter().copied().collect());
        }
        if left == 0 {
            return;
        }
        for e in start..h.n_edges() {
            cur.push(e);
            for &v in &h.edges()[e] {
                deg[v] += 1;
            }
            rec(h, e, left - 1, cur, deg, out);
            for &v in &h.edges()[e] {
                deg[v] -= 1;
            }
            cur.pop();
        }
    }
    let mut out = HashMap::new();
    let mut deg = vec![0; h.n_vertices()];
    rec(h, 0, cap, &mut Vec::new(), &mut deg, &mut out);
    out
}

/// Union-find over `0..n`.
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    components: usize,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            components: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if already merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.components -= 1;
        true
    }

    pub(crate) fn components(&self) -> usize {
        self.components
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> Hypergraph {
        Hypergraph::new(4, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]).unwrap()
    }

    #[test]
    fn factorizations_of_k22_all_ones() {
        let f = factorizations(&k22(), &[1, 1, 1, 1], None, None);
        assert_eq!(f.len(), 2);
        assert!(f.contains(&[0, 3].into_iter().collect()));
        assert!(f.contains(&[1, 2].into_iter().collect()));
    }

    #[test]
    fn zero_target_has_empty_factorization() {
        let f = factorizations(&k22(), &[0; 4], None, None);
        assert_eq!(f, vec![Multiset::new()]);
    }

    #[test]
    fn bounded_factorization() {
        let bound: Multiset = [0, 3].into_iter().collect();
        assert!(has_factorization(&k22(), &[1, 1, 1, 1], &bound));
        let bound: Multiset = [0, 1].into_iter().collect();
        assert!(!has_factorization(&k22(), &[1, 1, 1, 1], &bound));
    }

    #[test]
    fn factorizations_match_brute_force() {
        let h = Hypergraph::new(
            4,
            vec![
                vec![0, 1],
                vec![1, 2],
                vec![2, 3],
                vec![0, 3],
                vec![0, 2],
                vec![0, 1, 2],
            ],
        )
        .unwrap();
        let buckets = monomials_by_degree(&h, 4);
        for (deg, monos) in &buckets {
            let all = factorizations(&h, deg, None, Some(4));
            let mut expected = monos.clone();
            expected.sort();
            assert_eq!(all, expected);
        }
    }

    #[test]
    fn submultiset_count() {
        let m = Multiset::from_pairs([(0, 2), (5, 1)]);
        assert_eq!(sub_multisets(&m).len(), 6);
    }

    #[test]
    fn disjoint_sets() {
        let mut d = DisjointSets::new(4);
        assert!(d.union(0, 1));
        assert!(!d.union(1, 0));
        assert!(d.union(2, 3));
        assert_eq!(d.components(), 2);
    }
}
