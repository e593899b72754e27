//! Named hypergraphs and walks, and the explicit certificates for cumulant
//! hypergraphs.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::balanced::BalancedEdgeSet;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::multiset::Multiset;
use crate::poly::{Polynomial, Term};
use crate::search;
use crate::splitting::{check_decomposition, Decomposition, Verdict};

/// A family name with its integer parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    Kpartite { k: usize, d: usize },
    No3way { a: usize, b: usize, c: usize },
    Groupbased16,
    Cumulant { n: usize, full: bool },
    Slimwalk { r: usize, c: usize },
}

fn at_least(name: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(Error::Parameter(format!(
            "{name} = {value} must be at least {min}"
        )));
    }
    Ok(())
}

fn index_name(prefix: &str, digits: &[usize]) -> String {
    if digits.iter().all(|&d| d < 10) {
        format!(
            "{prefix}{}",
            digits.iter().map(|d| d.to_string()).collect::<String>()
        )
    } else {
        format!(
            "{prefix}{}",
            digits
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join("_")
        )
    }
}

/// The complete `k`-partite `k`-uniform hypergraph with `d` vertices per
/// block. Vertex `j` of block `i` is `i·d + j`, labelled `v{i}_{j}`; edges
/// are the `d^k` transversals in lexicographic order, named by their
/// 1-based block indices (`e11`, `e12`, ...).
pub fn complete_kpartite(k: usize, d: usize) -> Result<Hypergraph> {
    at_least("k", k, 2)?;
    at_least("d", d, 2)?;
    let count = d
        .checked_pow(k as u32)
        .ok_or_else(|| Error::Parameter("too many edges".into()))?;
    let mut edges = Vec::with_capacity(count);
    let mut names = Vec::with_capacity(count);
    for mut code in 0..count {
        let mut idx = vec![0; k];
        for slot in idx.iter_mut().rev() {
            *slot = code % d;
            code /= d;
        }
        edges.push(idx.iter().enumerate().map(|(i, &j)| i * d + j).collect());
        names.push(index_name(
            "e",
            &idx.iter().map(|j| j + 1).collect::<Vec<_>>(),
        ));
    }
    let labels = (0..k)
        .flat_map(|i| (0..d).map(move |j| format!("v{i}_{j}")))
        .collect();
    let blocks = (0..k).map(|i| (i * d..(i + 1) * d).collect()).collect();
    Hypergraph::new(k * d, edges)?
        .with_vertex_labels(labels)?
        .with_edge_names(names)?
        .with_partition(blocks)
}

/// The no-3-way interaction model of `a × b × c` tables. Vertices are the
/// margins `x_ij`, `y_ik`, `z_jk` (0-based, row-major, in that block order);
/// edge `e_ijk = {x_ij, y_ik, z_jk}` in lexicographic order.
pub fn no_three_way(a: usize, b: usize, c: usize) -> Result<Hypergraph> {
    at_least("a", a, 2)?;
    at_least("b", b, 2)?;
    at_least("c", c, 2)?;
    let (ox, oy, oz) = (0, a * b, a * b + a * c);
    let n = oz + b * c;
    let mut edges = Vec::with_capacity(a * b * c);
    let mut names = Vec::with_capacity(a * b * c);
    for i in 0..a {
        for j in 0..b {
            for k in 0..c {
                edges.push(vec![ox + i * b + j, oy + i * c + k, oz + j * c + k]);
                names.push(index_name("e", &[i, j, k]));
            }
        }
    }
    let mut labels = Vec::with_capacity(n);
    for (p, r, s) in [("x", a, b), ("y", a, c), ("z", b, c)] {
        for i in 0..r {
            for j in 0..s {
                labels.push(index_name(p, &[i, j]));
            }
        }
    }
    let blocks = vec![(ox..oy).collect(), (oy..oz).collect(), (oz..n).collect()];
    Hypergraph::new(n, edges)?
        .with_vertex_labels(labels)?
        .with_edge_names(names)?
        .with_partition(blocks)
}

const GROUP_BASED_EDGES: [[usize; 3]; 16] = [
    [1, 1, 1],
    [1, 2, 2],
    [1, 3, 3],
    [1, 4, 4],
    [2, 2, 1],
    [2, 1, 2],
    [2, 4, 3],
    [2, 3, 4],
    [3, 3, 1],
    [3, 4, 2],
    [3, 1, 3],
    [3, 2, 4],
    [4, 4, 1],
    [4, 3, 2],
    [4, 2, 3],
    [4, 1, 4],
];

/// The 16-edge 3-partite hypergraph of a group-based phylogenetic model:
/// vertices `x1..x4`, `y1..y4`, `z1..z4` (ids 0–11) and edges
/// `e_abc = {x_a, y_b, z_c}`.
pub fn group_based_16() -> Hypergraph {
    let edges = GROUP_BASED_EDGES
        .iter()
        .map(|&[a, b, c]| vec![a - 1, 3 + b, 7 + c])
        .collect();
    let names = GROUP_BASED_EDGES
        .iter()
        .map(|abc| index_name("e", abc))
        .collect();
    let labels = ["x", "y", "z"]
        .iter()
        .flat_map(|p| (1..=4).map(move |i| format!("{p}{i}")))
        .collect();
    Hypergraph::new(12, edges)
        .and_then(|h| h.with_vertex_labels(labels))
        .and_then(|h| h.with_edge_names(names))
        .and_then(|h| h.with_partition(vec![(0..4).collect(), (4..8).collect(), (8..12).collect()]))
        .expect("fixed table is valid")
}

fn group_edges(h: &Hypergraph, names: &[&str]) -> Multiset {
    names
        .iter()
        .map(|n| h.edge_by_name(n).expect("fixture edge"))
        .collect()
}

/// The degree-4 walk `{e324,e111,e243,e432} ⊔_b {e122,e313,e234,e441}` on
/// [`group_based_16`].
pub fn group_based_walk(h: &Hypergraph) -> BalancedEdgeSet {
    BalancedEdgeSet::new(
        group_edges(h, &["e324", "e111", "e243", "e432"]),
        group_edges(h, &["e122", "e313", "e234", "e441"]),
    )
}

/// The proper decomposition of the group-based walk through
/// `S = {e133, e212}`.
pub fn group_based_decomposition(h: &Hypergraph) -> Decomposition {
    Decomposition::new(
        BalancedEdgeSet::new(
            group_edges(h, &["e111", "e243", "e432"]),
            group_edges(h, &["e133", "e212", "e441"]),
        ),
        group_edges(h, &["e133", "e212"]),
        BalancedEdgeSet::new(
            group_edges(h, &["e133", "e212", "e324"]),
            group_edges(h, &["e122", "e313", "e234"]),
        ),
    )
    .expect("fixture decomposition")
}

/// The hypergraph on `1..=n` (ids `0..n`) whose edges are all subsets of
/// size at least 2 (`full`) or of size 2 and 3. Edges are ordered by size,
/// then lexicographically, and named by their labels (`e12`, `e123`).
pub fn cumulant_hypergraph(n: usize, full: bool) -> Result<Hypergraph> {
    at_least("n", n, 2)?;
    if n > 20 {
        return Err(Error::Parameter(format!("n = {n} is too large")));
    }
    let max = if full { n } else { n.min(3) };
    let mut edges = Vec::new();
    for size in 2..=max {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            edges.push(comb.clone());
            let Some(i) = (0..size).rev().find(|&i| comb[i] < n - size + i) else {
                break;
            };
            comb[i] += 1;
            for j in i + 1..size {
                comb[j] = comb[j - 1] + 1;
            }
        }
    }
    let names = edges
        .iter()
        .map(|e: &Vec<usize>| index_name("e", &e.iter().map(|v| v + 1).collect::<Vec<_>>()))
        .collect();
    let labels = (1..=n).map(|v| v.to_string()).collect();
    Hypergraph::new(n, edges)?
        .with_vertex_labels(labels)?
        .with_edge_names(names)
}

/// The primitive walk on `no_three_way(2, r, c)` built from the cycle
/// `0 → 1 → … → m-1 → 0` with `m = min(r, c)`: blue edges `e_0jj` and
/// `e_1j(j+1)`, red edges `e_0j(j+1)` and `e_1jj`, indices mod `m`.
pub fn slim_table_walk(r: usize, c: usize) -> Result<BalancedEdgeSet> {
    at_least("r", r, 2)?;
    at_least("c", c, 2)?;
    let m = r.min(c);
    let id = |i: usize, j: usize, k: usize| i * r * c + j * c + k;
    let mut blue = Multiset::new();
    let mut red = Multiset::new();
    for j in 0..m {
        let next = (j + 1) % m;
        blue.insert(id(0, j, j), 1);
        blue.insert(id(1, j, next), 1);
        red.insert(id(0, j, next), 1);
        red.insert(id(1, j, j), 1);
    }
    Ok(BalancedEdgeSet::new(blue, red))
}

fn is_three_edge(h: &Hypergraph, e: usize) -> bool {
    h.edges()[e].len() == 3
}

fn three_edges(h: &Hypergraph, m: &Multiset) -> Vec<usize> {
    m.elements().filter(|&e| is_three_edge(h, e)).collect()
}

/// Whether `w` has colors of equal size with exactly one 3-edge each, and
/// otherwise only 2-edges.
pub fn is_bh(h: &Hypergraph, w: &BalancedEdgeSet) -> bool {
    let sizes_ok = [&w.blue, &w.red]
        .iter()
        .all(|m| m.elements().all(|e| matches!(h.edges()[e].len(), 2 | 3)));
    sizes_ok
        && w.blue.size() == w.red.size()
        && three_edges(h, &w.blue).len() == 1
        && three_edges(h, &w.red).len() == 1
}

fn vertex_set_edge(h: &Hypergraph, verts: &[usize]) -> Result<usize> {
    let mut v = verts.to_vec();
    v.sort_unstable();
    h.edge_id(&v)
        .ok_or_else(|| Error::Internal(format!("vertex set {v:?} is not an edge of the host")))
}

/// A proper decomposition of a primitive walk in `B_h` of degree `> 3` on
/// `cumulant_hypergraph(n, false)`, following the three-case construction
/// around the red 3-edge. Both parts are in `B_h` with smaller degree.
pub fn cumulant_split_certificate(h: &Hypergraph, w: &BalancedEdgeSet) -> Result<Decomposition> {
    let n = h.n_vertices();
    if *h != cumulant_hypergraph(n, false)? {
        return Err(Error::Precondition(
            "host is not a cumulant hypergraph of 2- and 3-edges".into(),
        ));
    }
    w.check_balanced(h)?;
    if !is_bh(h, w) {
        return Err(Error::Precondition("walk is not in B_h".into()));
    }
    if w.blue.size() <= 3 {
        return Err(Error::Precondition("walk degree is at most 3".into()));
    }
    if !w.is_primitive(h)? {
        return Err(Error::Precondition("walk is not primitive".into()));
    }
    let edge = |e: usize| h.edges()[e].as_slice();
    let e1 = three_edges(h, &w.red)[0];
    let blue2: Vec<usize> = w.blue.support().filter(|&e| !is_three_edge(h, e)).collect();
    let red2: Vec<usize> = w.red.support().filter(|&e| !is_three_edge(h, e)).collect();
    let e2 = *blue2
        .iter()
        .find(|&&e| edge(e).iter().any(|v| edge(e1).contains(v)))
        .ok_or_else(|| Error::Internal("no blue 2-edge meets the red 3-edge".into()))?;
    let (v1, v2) = {
        let [a, b] = [edge(e2)[0], edge(e2)[1]];
        if edge(e1).contains(&a) {
            (a, b)
        } else {
            (b, a)
        }
    };
    let others = |m: &[usize]| -> Vec<usize> {
        edge(e1)
            .iter()
            .copied()
            .filter(|v| !m.contains(v))
            .collect()
    };

    let build = |removed_red: &[usize], s: &[usize]| -> Result<Decomposition> {
        let s: Multiset = s.iter().copied().collect();
        let removed: Multiset = removed_red.iter().copied().collect();
        let gamma1 = BalancedEdgeSet::new(
            &w.blue - &Multiset::singleton(e2),
            &(&w.red - &removed) + &s,
        );
        let gamma2 = BalancedEdgeSet::new(&Multiset::singleton(e2) + &s, removed);
        let d = Decomposition::new(gamma1, s, gamma2)?;
        let whole = w.add_splitting(h, &d.separator)?;
        match check_decomposition(h, &whole, &d) {
            Verdict::ValidProper => Ok(d),
            v => Err(Error::Internal(format!(
                "case construction is not a proper split: {v:?}"
            ))),
        }
    };

    if edge(e1).contains(&v2) {
        // e1 = e2 ∪ {v3}.
        let v3 = others(&[v1, v2])[0];
        let e3 = *red2
            .iter()
            .find(|&&e| !edge(e).contains(&v3))
            .ok_or_else(|| Error::Internal("no red 2-edge avoids v3".into()))?;
        let e4 = vertex_set_edge(h, &[v3, edge(e3)[0], edge(e3)[1]])?;
        return build(&[e1, e3], &[e4]);
    }
    let e3 = *red2
        .iter()
        .find(|&&e| edge(e).contains(&v2))
        .ok_or_else(|| Error::Internal("no red 2-edge contains v2".into()))?;
    let w3 = if edge(e3)[0] == v2 {
        edge(e3)[1]
    } else {
        edge(e3)[0]
    };
    if edge(e1).contains(&w3) {
        // e1 = {v1, v3, v4} and e3 = {v2, v3}.
        let v3 = w3;
        let v4 = others(&[v1, v3])[0];
        let e4 = *red2
            .iter()
            .find(|&&e| e != e3 && !edge(e).contains(&v3))
            .ok_or_else(|| Error::Internal("no red 2-edge avoids v3".into()))?;
        let (v5, v6) = if edge(e4)[0] != v4 {
            (edge(e4)[0], edge(e4)[1])
        } else {
            (edge(e4)[1], edge(e4)[0])
        };
        let e5 = vertex_set_edge(h, &[v3, v4, v5])?;
        let e6 = vertex_set_edge(h, &[v3, v6])?;
        return build(&[e1, e3, e4], &[e5, e6]);
    }
    // e3 ∋ v2 is disjoint from e1.
    let mut verts = others(&[v1]);
    verts.push(w3);
    let e4 = vertex_set_edge(h, &verts)?;
    build(&[e1, e3], &[e4])
}

/// Three 2-edges whose union with multiplicity covers `e1 + e2`, pairing
/// vertex incidences greedily (highest remaining count first).
fn pair_three_edges(h: &Hypergraph, e1: usize, e2: usize) -> Result<Multiset> {
    let mut count: Vec<(usize, u32)> = Vec::new();
    for &v in h.edges()[e1].iter().chain(&h.edges()[e2]) {
        match count.iter_mut().find(|(u, _)| *u == v) {
            Some((_, c)) => *c += 1,
            None => count.push((v, 1)),
        }
    }
    let mut out = Multiset::new();
    for _ in 0..3 {
        count.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        if count.len() < 2 || count[1].1 == 0 {
            return Err(Error::Internal(
                "3-edge pair cannot be refined into 2-edges".into(),
            ));
        }
        let (a, b) = (count[0].0, count[1].0);
        out.insert(vertex_set_edge(h, &[a, b])?, 1);
        count[0].1 -= 1;
        count[1].1 -= 1;
        count.retain(|&(_, c)| c > 0);
    }
    Ok(out)
}

/// A walk together with terms `m·(plus - minus)` such that
/// `f(original) = Σ terms + f(walk)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub walk: BalancedEdgeSet,
    pub terms: Vec<Term>,
}

/// Replaces pairs of 3-edges on one color by three 2-edges until each color
/// has at most one 3-edge. The result is in `B_h` or has only 2-edges.
pub fn reduce_to_bh(h: &Hypergraph, w: &BalancedEdgeSet) -> Result<Reduction> {
    w.check_balanced(h)?;
    if [&w.blue, &w.red]
        .iter()
        .any(|m| m.elements().any(|e| !matches!(h.edges()[e].len(), 2 | 3)))
    {
        return Err(Error::Precondition(
            "walk uses edges of size other than 2 and 3".into(),
        ));
    }
    let mut cur = w.clone();
    let mut terms = Vec::new();
    for blue_side in [true, false] {
        loop {
            let side = if blue_side { &cur.blue } else { &cur.red };
            let threes = three_edges(h, side);
            if threes.len() < 2 {
                break;
            }
            let pair = Multiset::from_iter([threes[0], threes[1]]);
            let twos = pair_three_edges(h, threes[0], threes[1])?;
            let cofactor = side - &pair;
            let replaced = &cofactor + &twos;
            if blue_side {
                terms.push(Term::new(cofactor, pair, twos));
                cur.blue = replaced;
            } else {
                terms.push(Term::new(cofactor, twos, pair));
                cur.red = replaced;
            }
        }
    }
    let mut check = Polynomial::from_terms(&terms);
    for (m, c) in cur.polynomial().iter() {
        check.add_monomial(m, c);
    }
    if check != w.polynomial() {
        return Err(Error::Internal(
            "reduction identity does not expand to f(W)".into(),
        ));
    }
    Ok(Reduction { walk: cur, terms })
}

/// Terms of the telescoping identity
/// `t_e - Π t_{k_i} = (t_e - t_{k_1} t_{U_2}) + Σ_{j=1}^{l-2} (Π_{i≤j} t_{k_i})(t_{U_{j+1}} - t_{k_{j+1}} t_{U_{j+2}})`
/// with `U_j = k_j ∪ … ∪ k_l`. Every union must be an edge of `h`.
pub fn edge_refinement_rewrite(
    h: &Hypergraph,
    e: &[usize],
    parts: &[Vec<usize>],
) -> Result<Vec<Term>> {
    if parts.len() < 2 {
        return Err(Error::Parameter("at least two parts are needed".into()));
    }
    let mut covered: Vec<usize> = parts.iter().flatten().copied().collect();
    covered.sort_unstable();
    let mut target = e.to_vec();
    target.sort_unstable();
    if covered.windows(2).any(|p| p[0] == p[1]) || covered != target {
        return Err(Error::Parameter(
            "parts are not a disjoint cover of the edge".into(),
        ));
    }
    let lookup = |verts: &[usize]| {
        let mut v = verts.to_vec();
        v.sort_unstable();
        h.edge_id(&v)
            .ok_or_else(|| Error::Parameter(format!("vertex set {v:?} is not an edge")))
    };
    let ids: Vec<usize> = parts.iter().map(|p| lookup(p)).collect::<Result<_>>()?;
    let l = parts.len();
    let union_from = |j: usize| -> Result<usize> {
        let v: Vec<usize> = parts[j..].iter().flatten().copied().collect();
        lookup(&v)
    };
    let whole = lookup(e)?;
    let mut terms = vec![Term::new(
        Multiset::new(),
        Multiset::singleton(whole),
        Multiset::from_iter([ids[0], union_from(1)?]),
    )];
    for j in 1..l - 1 {
        let cofactor: Multiset = ids[..j].iter().copied().collect();
        terms.push(Term::new(
            cofactor,
            Multiset::singleton(union_from(j)?),
            Multiset::from_iter([ids[j], union_from(j + 1)?]),
        ));
    }
    let expected =
        Polynomial::binomial(&Multiset::singleton(whole), &ids.iter().copied().collect());
    if Polynomial::from_terms(&terms) != expected {
        return Err(Error::Internal(
            "telescoping identity does not expand".into(),
        ));
    }
    Ok(terms)
}

/// Primitive `B_h` walks of degree `n` on `h` whose blue side contains the
/// first 3-edge of `h`, up to `limit` walks. On a cumulant hypergraph every
/// `B_h` walk is a vertex relabelling of one of these.
pub fn bh_walks(h: &Hypergraph, n: usize, limit: Option<usize>) -> Result<Vec<BalancedEdgeSet>> {
    let threes: Vec<usize> = (0..h.n_edges()).filter(|&e| is_three_edge(h, e)).collect();
    let twos: Vec<usize> = (0..h.n_edges())
        .filter(|&e| h.edges()[e].len() == 2)
        .collect();
    let Some(&first) = threes.first() else {
        return Ok(Vec::new());
    };
    if n < 2 {
        return Ok(Vec::new());
    }
    let limit = limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let mut blue_twos = Vec::new();
    let mut stack = vec![(0usize, Vec::<usize>::new())];
    while let Some((start, cur)) = stack.pop() {
        if cur.len() == n - 1 {
            blue_twos.push(cur);
            continue;
        }
        for i in (start..twos.len()).rev() {
            let mut next = cur.clone();
            next.push(twos[i]);
            stack.push((i, next));
        }
    }
    for bt in blue_twos {
        if out.len() >= limit {
            break;
        }
        let mut blue: Multiset = bt.into_iter().collect();
        blue.insert(first, 1);
        let target = h.degree_vector(&blue)?;
        let mut reds = Vec::new();
        let _ = search::for_each_factorization(h, &target, None, Some(n), |red| {
            if red.size() == n && three_edges(h, red).len() == 1 && red.is_disjoint(&blue) {
                reds.push(red.clone());
            }
            ControlFlow::Continue(())
        });
        reds.sort();
        for red in reds {
            let w = BalancedEdgeSet::new(blue.clone(), red);
            if w.is_primitive(h)? {
                out.push(w);
                if out.len() >= limit {
                    break;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitting::rewrite_with_decomposition;

    #[test]
    fn kpartite_sizes() {
        let h = complete_kpartite(2, 2).unwrap();
        assert_eq!(h.n_edges(), 4);
        assert_eq!(h.edge_name(3), "e22");
        assert_eq!(complete_kpartite(3, 2).unwrap().n_edges(), 8);
        assert_eq!(complete_kpartite(2, 3).unwrap().n_edges(), 9);
        assert!(complete_kpartite(1, 3).is_err());
    }

    #[test]
    fn no_three_way_tables() {
        let h = no_three_way(2, 2, 2).unwrap();
        assert_eq!((h.n_vertices(), h.n_edges()), (12, 8));
        assert!(h.is_regular(2));
        let h = no_three_way(2, 3, 3).unwrap();
        assert_eq!(h.n_edges(), 18);
        let e = h.edge_by_name("e010").unwrap();
        let labels: Vec<String> = h
            .edge(e)
            .unwrap()
            .iter()
            .map(|&v| h.vertex_label(v))
            .collect();
        assert_eq!(labels, ["x01", "y00", "z10"]);
        assert!(!h.is_regular(2));
    }

    #[test]
    fn group_based_fixture() {
        let h = group_based_16();
        assert_eq!(h.n_edges(), 16);
        assert!(h.degrees().iter().all(|&d| d == 4));
        assert!(h.is_kpartite(h.partition().unwrap()).unwrap());
        let w = group_based_walk(&h);
        assert!(w.is_balanced(&h).unwrap());
        let d = group_based_decomposition(&h);
        assert!(d.is_proper());
        let r = rewrite_with_decomposition(&h, &w, &d).unwrap();
        assert_eq!(r.m1, Multiset::singleton(h.edge_by_name("e324").unwrap()));
        assert_eq!(r.m2, Multiset::singleton(h.edge_by_name("e441").unwrap()));
    }

    #[test]
    fn cumulant_counts() {
        assert_eq!(cumulant_hypergraph(3, true).unwrap().n_edges(), 4);
        assert_eq!(cumulant_hypergraph(4, false).unwrap().n_edges(), 10);
        assert_eq!(cumulant_hypergraph(4, true).unwrap().n_edges(), 11);
        let h = cumulant_hypergraph(3, true).unwrap();
        assert_eq!(h.edge_name(3), "e123");
    }

    #[test]
    fn slim_walk_matches_printed_walk() {
        let h = no_three_way(2, 3, 3).unwrap();
        let w = slim_table_walk(3, 3).unwrap();
        let names = |m: &Multiset| {
            let mut v: Vec<String> = m.elements().map(|e| h.edge_name(e)).collect();
            v.sort();
            v
        };
        assert_eq!(
            names(&w.blue),
            ["e000", "e011", "e022", "e101", "e112", "e120"]
        );
        assert_eq!(
            names(&w.red),
            ["e001", "e012", "e020", "e100", "e111", "e122"]
        );
        assert!(w.is_balanced(&h).unwrap());
    }

    fn named(h: &Hypergraph, names: &[&str]) -> Multiset {
        names.iter().map(|n| h.edge_by_name(n).unwrap()).collect()
    }

    #[test]
    fn cumulant_case_one() {
        // e2 = {1,2} ⊂ e1 = {1,2,5}; the first red 2-edge avoiding 5 is {1,3}.
        let h = cumulant_hypergraph(5, false).unwrap();
        let w = BalancedEdgeSet::new(
            named(&h, &["e12", "e14", "e35", "e123"]),
            named(&h, &["e13", "e13", "e24", "e125"]),
        );
        assert!(w.is_primitive(&h).unwrap());
        let d = cumulant_split_certificate(&h, &w).unwrap();
        assert_eq!(d.separator, named(&h, &["e135"]));
        assert_eq!(
            d.gamma2,
            BalancedEdgeSet::new(named(&h, &["e12", "e135"]), named(&h, &["e13", "e125"]))
        );
        assert!(is_bh(&h, &d.gamma1) && is_bh(&h, &d.gamma2));
        assert!(d.gamma1.degree() < 4 && d.gamma2.degree() < 4);
    }

    #[test]
    fn cumulant_certificates_on_small_walks() {
        let h = cumulant_hypergraph(5, false).unwrap();
        let walks = bh_walks(&h, 4, Some(40)).unwrap();
        assert!(!walks.is_empty());
        for w in &walks {
            let d = cumulant_split_certificate(&h, w).unwrap();
            assert!(d.is_proper());
        }
    }

    #[test]
    fn edge_refinement() {
        let h = cumulant_hypergraph(6, true).unwrap();
        let t = edge_refinement_rewrite(&h, &[0, 1, 2, 3], &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(t.len(), 1);
        let t = edge_refinement_rewrite(
            &h,
            &[0, 1, 2, 3, 4, 5],
            &[vec![0, 1], vec![2, 3], vec![4, 5]],
        )
        .unwrap();
        assert_eq!(t.len(), 2);
        let t =
            edge_refinement_rewrite(&h, &[0, 1, 2, 3, 4], &[vec![0, 1], vec![2, 3, 4]]).unwrap();
        assert_eq!(t.len(), 1);
        assert!(edge_refinement_rewrite(&h, &[0, 1, 2, 3], &[vec![0, 1], vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn bh_reduction() {
        let h = cumulant_hypergraph(4, false).unwrap();
        // e123 e124 e34 ⊔ e12 e12 e34 e34? Build from degrees: blue two
        // 3-edges, red only 2-edges.
        let blue = named(&h, &["e123", "e124"]);
        let red = named(&h, &["e12", "e13", "e24"]);
        let w = BalancedEdgeSet::new(blue, red);
        assert!(w.is_balanced(&h).unwrap());
        let r = reduce_to_bh(&h, &w).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert!(three_edges(&h, &r.walk.blue).is_empty());
    }
}
