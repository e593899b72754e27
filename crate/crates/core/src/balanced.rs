//! Bicolored edge multisets, the balancing condition and binomials.
//!
//! A [`BalancedEdgeSet`] pairs a blue and a red multiset of edge ids. It is
//! *balanced* when every vertex lies in as many blue edges as red edges,
//! counted with multiplicity; exactly then `prod t_blue - prod t_red` lies in
//! the toric ideal. Values are plain data: the host hypergraph is passed to
//! every method that needs vertex information.

use std::fmt;

use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::multiset::Multiset;
use crate::poly::{format_monomial, Polynomial};
use crate::search;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BalancedEdgeSet {
    pub blue: Multiset,
    pub red: Multiset,
}

impl BalancedEdgeSet {
    pub fn new(blue: Multiset, red: Multiset) -> Self {
        Self { blue, red }
    }

    /// Builds the set from edge-id lists; repeats encode multiplicity.
    pub fn from_edges(blue: &[usize], red: &[usize]) -> Self {
        Self::new(
            blue.iter().copied().collect(),
            red.iter().copied().collect(),
        )
    }

    /// Total number of edges, both colors, with multiplicity.
    pub fn size(&self) -> usize {
        self.blue.size() + self.red.size()
    }

    /// `max(|blue|, |red|)`: the degree of the associated binomial.
    pub fn degree(&self) -> usize {
        self.blue.size().max(self.red.size())
    }

    pub fn is_empty(&self) -> bool {
        self.blue.is_empty() && self.red.is_empty()
    }

    /// The same edges with colors exchanged.
    pub fn swapped(&self) -> Self {
        Self::new(self.red.clone(), self.blue.clone())
    }

    pub fn check_edges(&self, h: &Hypergraph) -> Result<()> {
        h.check_edges(&self.blue)?;
        h.check_edges(&self.red)
    }

    pub fn deg_blue(&self, h: &Hypergraph, v: usize) -> Result<u32> {
        color_degree(h, &self.blue, v)
    }

    pub fn deg_red(&self, h: &Hypergraph, v: usize) -> Result<u32> {
        color_degree(h, &self.red, v)
    }

    /// `max(deg_red(v), deg_blue(v))`.
    pub fn maxdeg(&self, h: &Hypergraph, v: usize) -> Result<u32> {
        Ok(self.deg_blue(h, v)?.max(self.deg_red(h, v)?))
    }

    /// Vertices lying in at least one edge of either color.
    pub fn vertices(&self, h: &Hypergraph) -> Result<Vec<usize>> {
        let b = h.degree_vector(&self.blue)?;
        let r = h.degree_vector(&self.red)?;
        Ok((0..h.n_vertices()).filter(|&v| b[v] + r[v] > 0).collect())
    }

    /// Checks the balancing condition; `Unbalanced(v)` names the first
    /// vertex where it fails.
    pub fn check_balanced(&self, h: &Hypergraph) -> Result<()> {
        let b = h.degree_vector(&self.blue)?;
        let r = h.degree_vector(&self.red)?;
        match (0..h.n_vertices()).find(|&v| b[v] != r[v]) {
            Some(v) => Err(Error::Unbalanced(v)),
            None => Ok(()),
        }
    }

    /// Whether `deg_blue(v) = deg_red(v)` at every vertex.
    pub fn is_balanced(&self, h: &Hypergraph) -> Result<bool> {
        match self.check_balanced(h) {
            Ok(()) => Ok(true),
            Err(Error::Unbalanced(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// The reduced binomial `prod t_blue - prod t_red` with shared edges
    /// cancelled.
    pub fn binomial(&self, h: &Hypergraph) -> Result<Binomial> {
        self.check_balanced(h)?;
        Binomial::new(h, self.blue.clone(), self.red.clone())
    }

    /// The walk `E(plus) ⊔_b E(minus)` of a binomial.
    pub fn from_binomial(h: &Hypergraph, b: &Binomial) -> Result<Self> {
        let w = Self::new(b.plus.clone(), b.minus.clone());
        w.check_balanced(h).map_err(|_| Error::NotInKernel)?;
        Ok(w)
    }

    /// `blue - red` as a polynomial, without cancelling shared edges.
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::binomial(&self.blue, &self.red)
    }

    /// `E + S`: `S` added to both colors.
    pub fn add_splitting(&self, h: &Hypergraph, s: &Multiset) -> Result<Self> {
        h.check_edges(s)?;
        Ok(Self::new(&self.blue + s, &self.red + s))
    }

    /// Whether no nonempty balanced set sits strictly inside this one on
    /// both colors.
    ///
    /// A walk whose colors share an edge is never primitive (the shared edge
    /// alone is a smaller balanced set, or the binomial is zero). Otherwise
    /// every proper nonempty `u ⊂ blue` is tested for a `v ⊆ red` with
    /// `A·v = A·u`.
    pub fn is_primitive(&self, h: &Hypergraph) -> Result<bool> {
        self.check_balanced(h)?;
        if self.is_empty() || !self.blue.is_disjoint(&self.red) {
            return Ok(false);
        }
        let full = self.blue.clone();
        let subs = search::sub_multisets(&self.blue);
        let witness = subs
            .par_iter()
            .filter(|u| !u.is_empty() && **u != full)
            .map(|u| {
                h.degree_vector(u)
                    .map(|target| search::has_factorization(h, &target, &self.red))
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(!witness.into_iter().any(|w| w))
    }

    /// Renders the set as `{blue edges} | {red edges}` with edge names.
    pub fn display<'a>(&'a self, h: &'a Hypergraph) -> impl fmt::Display + 'a {
        WalkDisplay { w: self, h }
    }
}

fn color_degree(h: &Hypergraph, m: &Multiset, v: usize) -> Result<u32> {
    if v >= h.n_vertices() {
        return Err(Error::InvalidVertex {
            vertex: v,
            n_vertices: h.n_vertices(),
        });
    }
    let mut d = 0;
    for (e, k) in m.iter() {
        if h.edge(e)?.contains(&v) {
            d += k;
        }
    }
    Ok(d)
}

struct WalkDisplay<'a> {
    w: &'a BalancedEdgeSet,
    h: &'a Hypergraph,
}

impl fmt::Display for WalkDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |m: &Multiset| {
            m.elements()
                .map(|e| self.h.edge_name(e))
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "{{{}}} | {{{}}}",
            names(&self.w.blue),
            names(&self.w.red)
        )
    }
}

/// A nonzero binomial `t^plus - t^minus` of the toric ideal, stored reduced:
/// `plus` and `minus` share no edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    plus: Multiset,
    minus: Multiset,
}

impl Binomial {
    /// Validates and reduces `t^plus - t^minus`.
    pub fn new(h: &Hypergraph, plus: Multiset, minus: Multiset) -> Result<Self> {
        Self::new_with_gcd(h, plus, minus).map(|(b, _)| b)
    }

    /// Like [`Binomial::new`], also returning the cancelled common factor.
    pub fn new_with_gcd(
        h: &Hypergraph,
        plus: Multiset,
        minus: Multiset,
    ) -> Result<(Self, Multiset)> {
        h.check_edges(&plus)?;
        h.check_edges(&minus)?;
        if h.degree_vector(&plus)? != h.degree_vector(&minus)? {
            return Err(Error::NotInKernel);
        }
        let g = &plus & &minus;
        let (plus, minus) = (&plus - &g, &minus - &g);
        if plus.is_empty() && minus.is_empty() {
            return Err(Error::ZeroBinomial);
        }
        Ok((Self { plus, minus }, g))
    }

    /// Wraps sides that are already known to be reduced and in the kernel.
    pub(crate) fn from_reduced(plus: Multiset, minus: Multiset) -> Self {
        debug_assert!(plus.is_disjoint(&minus));
        Self { plus, minus }
    }

    pub fn plus(&self) -> &Multiset {
        &self.plus
    }

    pub fn minus(&self) -> &Multiset {
        &self.minus
    }

    /// `max(|plus|, |minus|)`.
    pub fn degree(&self) -> usize {
        self.plus.size().max(self.minus.size())
    }

    pub fn negate(&self) -> Self {
        Self {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    /// The sign representative with `plus > minus` in multiset order.
    pub fn canonical(&self) -> Self {
        if self.plus >= self.minus {
            self.clone()
        } else {
            self.negate()
        }
    }

    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self == other || (self.plus == other.minus && self.minus == other.plus)
    }

    pub fn polynomial(&self) -> Polynomial {
        Polynomial::binomial(&self.plus, &self.minus)
    }

    /// Renders the binomial with edge names, e.g. `t_a*t_b - t_c^2`.
    pub fn display(&self, h: &Hypergraph) -> String {
        format!(
            "{} - {}",
            format_monomial(h, &self.plus),
            format_monomial(h, &self.minus)
        )
    }
}

impl Serialize for Binomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Binomial", 3)?;
        s.serialize_field("plus", &self.plus)?;
        s.serialize_field("minus", &self.minus)?;
        s.serialize_field("degree", &self.degree())?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> Hypergraph {
        // e0 = {x1,y1}, e1 = {x1,y2}, e2 = {x2,y1}, e3 = {x2,y2}
        Hypergraph::new(4, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]).unwrap()
    }

    #[test]
    fn four_cycle() {
        let h = k22();
        let w = BalancedEdgeSet::from_edges(&[0, 3], &[1, 2]);
        assert!(w.is_balanced(&h).unwrap());
        assert!(w.is_primitive(&h).unwrap());
        let b = w.binomial(&h).unwrap();
        assert_eq!(b.degree(), 2);
        assert_eq!(BalancedEdgeSet::from_binomial(&h, &b).unwrap(), w);
    }

    #[test]
    fn empty_and_one_sided() {
        let h = k22();
        let empty = BalancedEdgeSet::default();
        assert!(empty.is_balanced(&h).unwrap());
        assert_eq!(empty.binomial(&h).unwrap_err(), Error::ZeroBinomial);
        assert!(!empty.is_primitive(&h).unwrap());
        let one = BalancedEdgeSet::from_edges(&[0], &[]);
        assert!(!one.is_balanced(&h).unwrap());
        assert_eq!(one.binomial(&h).unwrap_err(), Error::Unbalanced(0));
    }

    #[test]
    fn unknown_edge() {
        let w = BalancedEdgeSet::from_edges(&[9], &[9]);
        assert_eq!(w.is_balanced(&k22()).unwrap_err(), Error::UnknownEdge(9));
    }

    #[test]
    fn binomial_reduces_shared_edges() {
        let h = k22();
        let w = BalancedEdgeSet::from_edges(&[0, 3, 0], &[1, 2, 0]);
        let b = w.binomial(&h).unwrap();
        assert_eq!(b.plus(), &[0, 3].into_iter().collect());
        assert!(!w.is_primitive(&h).unwrap());
        assert_eq!(
            Binomial::new(&h, [0].into_iter().collect(), [1].into_iter().collect()).unwrap_err(),
            Error::NotInKernel
        );
    }

    #[test]
    fn add_splitting_preserves_balance() {
        let h = k22();
        let w = BalancedEdgeSet::from_edges(&[0, 3], &[1, 2]);
        let s: Multiset = [1, 1, 2].into_iter().collect();
        let ws = w.add_splitting(&h, &s).unwrap();
        assert!(ws.is_balanced(&h).unwrap());
        assert_eq!(ws.blue.size(), 5);
        assert_eq!(w.add_splitting(&h, &Multiset::new()).unwrap(), w);
        assert!(w.add_splitting(&h, &[7].into_iter().collect()).is_err());
    }

    #[test]
    fn maxdeg() {
        let h = k22();
        let w = BalancedEdgeSet::from_edges(&[0, 3], &[1, 2]);
        assert_eq!(w.maxdeg(&h, 0).unwrap(), 1);
        let path = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let m = BalancedEdgeSet::from_edges(&[0, 1], &[]);
        assert_eq!(m.maxdeg(&path, 1).unwrap(), 2);
        let iso = Hypergraph::new(3, vec![vec![0, 1]]).unwrap();
        assert_eq!(
            BalancedEdgeSet::from_edges(&[0], &[0])
                .maxdeg(&iso, 2)
                .unwrap(),
            0
        );
    }

    #[test]
    fn binomial_json() {
        let h = k22();
        let b = BalancedEdgeSet::from_edges(&[0, 3], &[1, 2])
            .binomial(&h)
            .unwrap();
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"{"plus":{"0":1,"3":1},"minus":{"1":1,"2":1},"degree":2}"#
        );
    }
}
