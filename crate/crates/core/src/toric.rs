//! Fibers, Graver bases, minimal Markov bases and indispensability.
//!
//! A fiber is the set of monomials with a fixed vertex-degree vector `b`.
//! Minimal generators of multidegree `b` are computed from the graph `G_b`
//! on the fiber in which two monomials are adjacent when they share an
//! edge: its components are exactly the classes already connected by
//! generators of smaller multidegree, and a minimal generating set contains
//! one binomial per edge of a spanning tree on those components.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::balanced::{BalancedEdgeSet, Binomial};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::multiset::Multiset;
use crate::search::{self, DisjointSets};

/// All monomials with a common degree vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub degree_vector: Vec<u32>,
    /// Sorted, without repetition.
    pub points: Vec<Multiset>,
}

impl Fiber {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Whether `moves` (applied in either direction) connect all points.
    pub fn is_connected_by(&self, moves: &[Binomial]) -> bool {
        if self.points.len() <= 1 {
            return true;
        }
        let index: std::collections::HashMap<&Multiset, usize> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut ds = DisjointSets::new(self.points.len());
        for (i, p) in self.points.iter().enumerate() {
            for m in moves {
                if m.plus().is_subset(p) {
                    let q = &(p - m.plus()) + m.minus();
                    if let Some(&j) = index.get(&q) {
                        ds.union(i, j);
                    }
                }
            }
        }
        ds.components() == 1
    }

    /// The number of connected components of `G_b`.
    pub fn shared_edge_components(&self) -> usize {
        shared_edge_classes(&self.points).components()
    }
}

fn shared_edge_classes(points: &[Multiset]) -> DisjointSets {
    let mut ds = DisjointSets::new(points.len());
    let mut first_with: std::collections::HashMap<usize, usize> = Default::default();
    for (i, p) in points.iter().enumerate() {
        for e in p.support() {
            match first_with.get(&e) {
                Some(&j) => {
                    ds.union(i, j);
                }
                None => {
                    first_with.insert(e, i);
                }
            }
        }
    }
    ds
}

fn check_degree_vector(h: &Hypergraph, b: &[u32]) -> Result<()> {
    if b.len() != h.n_vertices() {
        return Err(Error::Parameter(format!(
            "degree vector has length {}, expected {}",
            b.len(),
            h.n_vertices()
        )));
    }
    Ok(())
}

/// Every monomial `u` with `A·u = b` and `|u| ≤ cap`.
pub fn enumerate_fiber(h: &Hypergraph, b: &[u32], cap: usize) -> Result<Fiber> {
    check_degree_vector(h, b)?;
    Ok(Fiber {
        degree_vector: b.to_vec(),
        points: search::factorizations(h, b, None, Some(cap)),
    })
}

/// Every monomial `u` with `A·u = b`. Finite because edges are nonempty.
pub fn full_fiber(h: &Hypergraph, b: &[u32]) -> Result<Fiber> {
    check_degree_vector(h, b)?;
    Ok(Fiber {
        degree_vector: b.to_vec(),
        points: search::factorizations(h, b, None, None),
    })
}

/// The largest `|u|` any monomial of the fiber can have.
fn max_fiber_size(h: &Hypergraph, b: &[u32]) -> usize {
    let total: u64 = b.iter().map(|&x| x as u64).sum();
    match h.min_edge_size() {
        Some(k) => (total / k as u64) as usize,
        None => 0,
    }
}

/// Order in which equally good connecting binomials are preferred.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    #[default]
    Forward,
    Reverse,
}

/// A minimal Markov basis, complete up to a degree cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkovBasis {
    /// Canonical sign representatives, sorted by degree and then exponents.
    pub elements: Vec<Binomial>,
    pub max_degree: usize,
    /// Every minimal generator of degree at most this is accounted for.
    pub complete_to_degree: usize,
    /// Some fiber touched below the cap still needs a generator above it.
    pub incomplete: bool,
    pub tie_break: TieBreak,
}

/// A Graver basis truncated at a degree cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraverBasis {
    pub elements: Vec<Binomial>,
    pub max_degree: usize,
    pub complete_to_degree: usize,
}

fn sort_basis(elements: &mut [Binomial]) {
    elements
        .sort_by(|a, b| (a.degree(), a.plus(), a.minus()).cmp(&(b.degree(), b.plus(), b.minus())));
}

/// Degree vectors whose bucket of monomials of degree `≤ cap` has at least
/// two members, in sorted order.
fn crowded_buckets(h: &Hypergraph, cap: usize) -> Vec<(Vec<u32>, Vec<Multiset>)> {
    let mut buckets: Vec<(Vec<u32>, Vec<Multiset>)> = search::monomials_by_degree(h, cap)
        .into_iter()
        .filter(|(_, m)| m.len() >= 2)
        .map(|(b, mut m)| {
            m.sort();
            (b, m)
        })
        .collect();
    buckets.sort();
    buckets
}

struct FiberGenerators {
    generators: Vec<Binomial>,
    disconnected: bool,
}

fn fiber_generators(h: &Hypergraph, b: &[u32], cap: usize, tie: TieBreak) -> FiberGenerators {
    let fiber = search::factorizations(h, b, None, None);
    let mut classes = shared_edge_classes(&fiber);
    if classes.components() == 1 {
        return FiberGenerators {
            generators: Vec::new(),
            disconnected: false,
        };
    }
    let roots: Vec<usize> = (0..fiber.len()).map(|i| classes.find(i)).collect();
    let small: Vec<usize> = (0..fiber.len())
        .filter(|&i| fiber[i].size() <= cap)
        .collect();
    let mut pairs = Vec::new();
    for (a, &i) in small.iter().enumerate() {
        for &j in &small[a + 1..] {
            if roots[i] != roots[j] {
                let d = fiber[i].size().max(fiber[j].size());
                pairs.push((d, i, j));
            }
        }
    }
    match tie {
        TieBreak::Forward => pairs.sort(),
        TieBreak::Reverse => pairs.sort_by(|x, y| x.0.cmp(&y.0).then(y.cmp(x))),
    }
    let mut tree = DisjointSets::new(fiber.len());
    let mut generators = Vec::new();
    let mut merged = 0;
    let needed = classes.components() - 1;
    for (_, i, j) in pairs {
        if merged == needed {
            break;
        }
        if tree.union(roots[i], roots[j]) {
            merged += 1;
            generators.push(Binomial::from_reduced(fiber[i].clone(), fiber[j].clone()).canonical());
        }
    }
    FiberGenerators {
        generators,
        disconnected: merged < needed,
    }
}

/// A minimal Markov basis up to `degree_cap`, preferring the
/// lexicographically first connecting binomials.
pub fn markov_basis(h: &Hypergraph, degree_cap: usize) -> Result<MarkovBasis> {
    markov_basis_with(h, degree_cap, TieBreak::Forward)
}

/// [`markov_basis`] with an explicit tie-breaking order.
pub fn markov_basis_with(h: &Hypergraph, degree_cap: usize, tie: TieBreak) -> Result<MarkovBasis> {
    if degree_cap == 0 {
        return Err(Error::Parameter("degree cap must be at least 1".into()));
    }
    let buckets = crowded_buckets(h, degree_cap);
    let per_fiber: Vec<FiberGenerators> = buckets
        .par_iter()
        .map(|(b, _)| fiber_generators(h, b, degree_cap, tie))
        .collect();
    let incomplete = per_fiber.iter().any(|f| f.disconnected);
    let mut elements: Vec<Binomial> = per_fiber.into_iter().flat_map(|f| f.generators).collect();
    sort_basis(&mut elements);
    let max_degree = elements.iter().map(Binomial::degree).max().unwrap_or(0);
    Ok(MarkovBasis {
        elements,
        max_degree,
        complete_to_degree: degree_cap,
        incomplete,
        tie_break: tie,
    })
}

/// The largest degree of a minimal generator, or `Incomplete` when some
/// fiber provably needs a generator above the cap.
pub fn markov_width(h: &Hypergraph, degree_cap: usize) -> Result<usize> {
    let basis = markov_basis(h, degree_cap)?;
    if basis.incomplete {
        return Err(Error::Incomplete(degree_cap));
    }
    Ok(basis.max_degree)
}

/// All primitive binomials of degree at most `degree_cap`, one sign each.
pub fn graver_basis(h: &Hypergraph, degree_cap: usize) -> Result<GraverBasis> {
    if degree_cap == 0 {
        return Err(Error::Parameter("degree cap must be at least 1".into()));
    }
    let buckets = crowded_buckets(h, degree_cap);
    let found: Vec<Vec<Binomial>> = buckets
        .par_iter()
        .map(|(_, monos)| -> Result<Vec<Binomial>> {
            let mut out = Vec::new();
            for (a, x) in monos.iter().enumerate() {
                for y in &monos[a + 1..] {
                    if !x.is_disjoint(y) {
                        continue;
                    }
                    let w = BalancedEdgeSet::new(x.clone(), y.clone());
                    if w.is_primitive(h)? {
                        out.push(Binomial::from_reduced(x.clone(), y.clone()).canonical());
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut elements: Vec<Binomial> = found.into_iter().flatten().collect();
    sort_basis(&mut elements);
    let max_degree = elements.iter().map(Binomial::degree).max().unwrap_or(0);
    Ok(GraverBasis {
        elements,
        max_degree,
        complete_to_degree: degree_cap,
    })
}

/// Whether the truncated Graver basis and the minimal Markov basis coincide
/// up to sign.
pub fn graver_equals_markov(h: &Hypergraph, degree_cap: usize) -> Result<bool> {
    let markov = markov_basis(h, degree_cap)?;
    if markov.incomplete {
        return Err(Error::Incomplete(degree_cap));
    }
    let graver = graver_basis(h, degree_cap)?;
    let canon = |v: &[Binomial]| v.iter().map(Binomial::canonical).collect::<HashSet<_>>();
    Ok(canon(&markov.elements) == canon(&graver.elements))
}

/// Whether `±b` belongs to every binomial generating set, decided on the
/// fiber of `b`: exactly when that fiber is `{plus, minus}`.
///
/// Fails with `CapExceeded` if the fiber may contain monomials of degree
/// above `degree_cap`.
pub fn is_indispensable(h: &Hypergraph, b: &Binomial, degree_cap: usize) -> Result<bool> {
    let target = h.degree_vector(b.plus())?;
    let needed = max_fiber_size(h, &target);
    if needed > degree_cap {
        return Err(Error::CapExceeded {
            needed,
            cap: degree_cap,
        });
    }
    let fiber = full_fiber(h, &target)?;
    Ok(fiber.len() == 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> Hypergraph {
        Hypergraph::new(4, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]).unwrap()
    }

    #[test]
    fn k22_fiber() {
        let f = enumerate_fiber(&k22(), &[1, 1, 1, 1], 2).unwrap();
        assert_eq!(f.len(), 2);
        let zero = enumerate_fiber(&k22(), &[0; 4], 3).unwrap();
        assert_eq!(zero.points, vec![Multiset::new()]);
        assert!(enumerate_fiber(&k22(), &[1], 3).is_err());
    }

    #[test]
    fn k22_bases() {
        let h = k22();
        let m = markov_basis(&h, 3).unwrap();
        assert_eq!(m.elements.len(), 1);
        assert_eq!(m.max_degree, 2);
        assert!(!m.incomplete);
        let g = graver_basis(&h, 4).unwrap();
        assert_eq!(g.elements.len(), 1);
        assert!(graver_equals_markov(&h, 4).unwrap());
        assert!(is_indispensable(&h, &m.elements[0], 4).unwrap());
    }

    #[test]
    fn single_edge_has_trivial_ideal() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        assert!(graver_basis(&h, 5).unwrap().elements.is_empty());
        assert_eq!(markov_width(&h, 5).unwrap(), 0);
    }

    #[test]
    fn cap_exceeded() {
        let h = k22();
        let b = markov_basis(&h, 2).unwrap().elements[0].clone();
        assert_eq!(
            is_indispensable(&h, &b, 1).unwrap_err(),
            Error::CapExceeded { needed: 2, cap: 1 }
        );
    }

    #[test]
    fn incomplete_when_generator_above_cap() {
        // The 6-cycle has a single cubic generator.
        let h = Hypergraph::new(
            6,
            vec![
                vec![0, 1],
                vec![1, 2],
                vec![2, 3],
                vec![3, 4],
                vec![4, 5],
                vec![0, 5],
            ],
        )
        .unwrap();
        assert_eq!(markov_width(&h, 3).unwrap(), 3);
        // With cap 2 no bucket has two monomials, so nothing is flagged.
        assert_eq!(markov_width(&h, 2).unwrap(), 0);
    }

    #[test]
    fn nonuniform_incomplete_flag() {
        // The all-ones fiber is {A}, {B, C}, {P1, P2, P3}: three pairwise
        // disjoint monomials, so two generators are needed and one of them
        // has degree 3.
        let h = Hypergraph::new(
            6,
            vec![
                vec![0, 1, 2, 3, 4, 5],
                vec![0, 1, 2],
                vec![3, 4, 5],
                vec![0, 1],
                vec![2, 3],
                vec![4, 5],
            ],
        )
        .unwrap();
        let m = markov_basis(&h, 2).unwrap();
        assert!(m.incomplete);
        assert_eq!(m.elements.len(), 1);
        assert_eq!(markov_width(&h, 2).unwrap_err(), Error::Incomplete(2));
        let m = markov_basis(&h, 3).unwrap();
        assert!(!m.incomplete);
        assert_eq!(m.elements.len(), 2);
        assert_eq!(m.max_degree, 3);
    }

    #[test]
    fn fiber_connectivity() {
        let h = k22();
        let m = markov_basis(&h, 4).unwrap();
        let f = full_fiber(&h, &[2, 2, 2, 2]).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.is_connected_by(&m.elements));
        assert!(!f.is_connected_by(&[]));
        assert_eq!(f.shared_edge_components(), 1);
    }
}
