//! Brute-force oracles. They use dense exponent vectors and plain
//! enumeration only, never the library's search routines.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hypertoric::{BalancedEdgeSet, Hypergraph, Multiset};

pub type Dense = Vec<u32>;

pub fn degree_of(h: &Hypergraph, u: &[u32]) -> Dense {
    let mut d = vec![0; h.n_vertices()];
    for (e, &k) in u.iter().enumerate() {
        for &v in &h.edges()[e] {
            d[v] += k;
        }
    }
    d
}

pub fn dense(h: &Hypergraph, m: &Multiset) -> Dense {
    m.to_dense(h.n_edges())
}

pub fn sparse(u: &[u32]) -> Multiset {
    Multiset::from_dense(u)
}

/// Every exponent vector of total size `k`.
pub fn all_of_size(n_edges: usize, k: usize) -> Vec<Dense> {
    fn rec(i: usize, left: usize, cur: &mut Dense, out: &mut Vec<Dense>) {
        if i + 1 == cur.len() {
            cur[i] = left as u32;
            out.push(cur.clone());
            cur[i] = 0;
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k as u32;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n_edges == 0 {
        return out;
    }
    rec(0, k, &mut vec![0; n_edges], &mut out);
    out
}

/// Every monomial of size at most `cap`, grouped by degree vector.
pub fn monomials_by_degree(h: &Hypergraph, cap: usize) -> BTreeMap<Dense, Vec<Dense>> {
    let mut out: BTreeMap<Dense, Vec<Dense>> = BTreeMap::new();
    for k in 1..=cap {
        for u in all_of_size(h.n_edges(), k) {
            out.entry(degree_of(h, &u)).or_default().push(u);
        }
    }
    out
}

/// Every monomial with degree vector `b`, by enumerating all sizes that
/// could fit.
pub fn naive_fiber(h: &Hypergraph, b: &[u32]) -> BTreeSet<Dense> {
    let total: u32 = b.iter().sum();
    let min = h.edges().iter().map(Vec::len).min().unwrap() as u32;
    let max = h.edges().iter().map(Vec::len).max().unwrap() as u32;
    let mut out = BTreeSet::new();
    for k in total.div_ceil(max)..=total / min {
        for u in all_of_size(h.n_edges(), k as usize) {
            if degree_of(h, &u) == b {
                out.insert(u);
            }
        }
    }
    out
}

fn sub_vectors(u: &[u32]) -> Vec<Dense> {
    let mut out = vec![vec![]];
    for &k in u {
        let mut next = Vec::new();
        for base in &out {
            for j in 0..=k {
                let mut v = base.clone();
                v.push(j);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// No nonzero balanced `(u', v')` with `u' ≤ u`, `v' ≤ v` and
/// `(u', v') ≠ (u, v)`.
pub fn naive_primitive(h: &Hypergraph, w: &BalancedEdgeSet) -> bool {
    let u = dense(h, &w.blue);
    let v = dense(h, &w.red);
    if degree_of(h, &u) != degree_of(h, &v)
        || (u.iter().all(|&x| x == 0) && v.iter().all(|&x| x == 0))
    {
        return false;
    }
    let reds: Vec<(Dense, Dense)> = sub_vectors(&v)
        .into_iter()
        .map(|r| (degree_of(h, &r), r))
        .collect();
    for bu in sub_vectors(&u) {
        let db = degree_of(h, &bu);
        for (dr, r) in &reds {
            if *dr != db {
                continue;
            }
            let zero = bu.iter().all(|&x| x == 0) && r.iter().all(|&x| x == 0);
            let whole = bu == u && *r == v;
            if !zero && !whole {
                return false;
            }
        }
    }
    true
}

/// Degrees of a minimal generating set, as `degree -> count`, over every
/// fiber that contains a monomial of size at most `cap`.
///
/// Points of a fiber sharing an edge are joined; the components are then
/// linked by a minimum spanning tree with pair weight `max(|x|, |y|)`, whose
/// weight multiset does not depend on the tree chosen.
pub fn naive_markov_profile(h: &Hypergraph, cap: usize) -> BTreeMap<usize, usize> {
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut profile = BTreeMap::new();
    for (b, _) in monomials_by_degree(h, cap) {
        let fiber: Vec<Dense> = naive_fiber(h, &b).into_iter().collect();
        let n = fiber.len();
        let mut parent: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in i + 1..n {
                if fiber[i]
                    .iter()
                    .zip(&fiber[j])
                    .any(|(x, y)| *x > 0 && *y > 0)
                {
                    let (a, c) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(c)] = a.min(c);
                }
            }
        }
        let size = |i: usize| fiber[i].iter().sum::<u32>() as usize;
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if find(&mut parent, i) != find(&mut parent, j) {
                    pairs.push((size(i).max(size(j)), i, j));
                }
            }
        }
        pairs.sort();
        for (d, i, j) in pairs {
            let (a, c) = (find(&mut parent, i), find(&mut parent, j));
            if a != c {
                parent[a.max(c)] = a.min(c);
                *profile.entry(d).or_insert(0) += 1;
            }
        }
    }
    profile
}

/// Indispensable exactly when the fiber of `plus` is `{plus, minus}` with
/// disjoint supports.
pub fn naive_indispensable(h: &Hypergraph, plus: &Multiset, minus: &Multiset) -> bool {
    let u = dense(h, plus);
    let v = dense(h, minus);
    let fiber = naive_fiber(h, &degree_of(h, &u));
    fiber.len() == 2 && fiber.contains(&u) && fiber.contains(&v) && plus.is_disjoint(minus)
}

/// All multisets `S` with `|S| ≤ size_cap` for which some split of
/// `W + S` satisfies every decomposition condition, found by trying every
/// `Γ1.blue ≤ (W+S).blue` and `Γ1.red ≤ (W+S).red`.
pub fn naive_splitting_sets(
    h: &Hypergraph,
    w: &BalancedEdgeSet,
    size_cap: usize,
) -> BTreeSet<Multiset> {
    let mut out = BTreeSet::new();
    for k in 1..=size_cap {
        for s in all_of_size(h.n_edges(), k) {
            let s = sparse(&s);
            if naive_has_decomposition(h, w, &s) {
                out.insert(s);
            }
        }
    }
    out
}

pub fn naive_has_decomposition(h: &Hypergraph, w: &BalancedEdgeSet, s: &Multiset) -> bool {
    let whole_b = &w.blue + s;
    let whole_r = &w.red + s;
    let wb = dense(h, &whole_b);
    let wr = dense(h, &whole_r);
    let reds: Vec<Dense> = sub_vectors(&wr);
    for g1b in sub_vectors(&wb) {
        let d1 = degree_of(h, &g1b);
        for g1r in &reds {
            if degree_of(h, g1r) != d1 {
                continue;
            }
            let g1 = BalancedEdgeSet::new(sparse(&g1b), sparse(g1r));
            let g2 = BalancedEdgeSet::new(&whole_b - &g1.blue, &whole_r - &g1.red);
            let whole = BalancedEdgeSet::new(whole_b.clone(), whole_r.clone());
            if g1.is_empty() || g2.is_empty() || g1 == whole || g2 == whole || g1 == *w || g2 == *w
            {
                continue;
            }
            if &g1.red & &g2.blue == *s {
                return true;
            }
        }
    }
    false
}

/// A random hypergraph on 4–6 vertices with 4–10 distinct edges of size 2 or
/// 3, and a walk between two distinct points of one of its fibers, with
/// common edges cancelled and blue degree at most 4.
pub fn random_walk<R: rand::Rng>(rng: &mut R) -> Option<(Hypergraph, BalancedEdgeSet)> {
    let n = rng.gen_range(4..=6);
    let target = rng.gen_range(4..=10);
    let mut edges: BTreeSet<Vec<usize>> = BTreeSet::new();
    for _ in 0..200 {
        if edges.len() == target {
            break;
        }
        let k = rng.gen_range(2..=3);
        let mut e: Vec<usize> = rand::seq::index::sample(rng, n, k).into_vec();
        e.sort_unstable();
        edges.insert(e);
    }
    let h = Hypergraph::new(n, edges.into_iter().collect()).ok()?;
    let size = rng.gen_range(2..=4);
    let mut u = vec![0u32; h.n_edges()];
    for _ in 0..size {
        u[rng.gen_range(0..h.n_edges())] += 1;
    }
    let others: Vec<Dense> = naive_fiber(&h, &degree_of(&h, &u))
        .into_iter()
        .filter(|p| *p != u)
        .collect();
    if others.is_empty() {
        return None;
    }
    let v = &others[rng.gen_range(0..others.len())];
    let common: Dense = u.iter().zip(v).map(|(a, b)| *a.min(b)).collect();
    let blue: Dense = u.iter().zip(&common).map(|(a, c)| a - c).collect();
    let red: Dense = v.iter().zip(&common).map(|(a, c)| a - c).collect();
    Some((h, BalancedEdgeSet::new(sparse(&blue), sparse(&red))))
}

/// `count` random walks from a fixed seed.
pub fn random_corpus(seed: u64, count: usize) -> Vec<(Hypergraph, BalancedEdgeSet)> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        if let Some(x) = random_walk(&mut rng) {
            out.push(x);
        }
    }
    out
}
