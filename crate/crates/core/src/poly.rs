//! Integer polynomials in the edge variables, used to replay rewriting
//! identities exactly.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::hypergraph::Hypergraph;
use crate::multiset::Multiset;

/// A sparse polynomial: monomials (as edge multisets) with nonzero integer
/// coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Multiset, i64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The binomial `plus - minus`; zero when the monomials coincide.
    pub fn binomial(plus: &Multiset, minus: &Multiset) -> Self {
        let mut p = Self::zero();
        p.add_monomial(plus, 1);
        p.add_monomial(minus, -1);
        p
    }

    pub fn add_monomial(&mut self, m: &Multiset, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(m.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(m);
        }
    }

    pub fn add_term(&mut self, t: &Term) {
        self.add_monomial(&(&t.cofactor + &t.plus), 1);
        self.add_monomial(&(&t.cofactor + &t.minus), -1);
    }

    pub fn from_terms<'a, I: IntoIterator<Item = &'a Term>>(terms: I) -> Self {
        let mut p = Self::zero();
        for t in terms {
            p.add_term(t);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Multiset) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Multiset, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `cofactor · (plus - minus)`: one summand of a rewriting identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub cofactor: Multiset,
    pub plus: Multiset,
    pub minus: Multiset,
}

impl Term {
    pub fn new(cofactor: Multiset, plus: Multiset, minus: Multiset) -> Self {
        Self {
            cofactor,
            plus,
            minus,
        }
    }

    /// `max(|plus|, |minus|)`.
    pub fn degree(&self) -> usize {
        self.plus.size().max(self.minus.size())
    }

    pub fn is_zero(&self) -> bool {
        self.plus == self.minus
    }

    /// Renders the term with edge names, e.g. `t_a*(t_b*t_c - t_d^2)`.
    pub fn display<'a>(&'a self, h: &'a Hypergraph) -> impl fmt::Display + 'a {
        TermDisplay { term: self, h }
    }
}

/// Formats a monomial as `t_a*t_b^2`, or `1` when empty.
pub fn format_monomial(h: &Hypergraph, m: &Multiset) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(e, k)| match k {
            1 => format!("t_{}", h.edge_name(e)),
            _ => format!("t_{}^{}", h.edge_name(e), k),
        })
        .collect::<Vec<_>>()
        .join("*")
}

struct TermDisplay<'a> {
    term: &'a Term,
    h: &'a Hypergraph,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = format!(
            "{} - {}",
            format_monomial(self.h, &self.term.plus),
            format_monomial(self.h, &self.term.minus)
        );
        if self.term.cofactor.is_empty() {
            write!(f, "({inner})")
        } else {
            write!(
                f,
                "{}*({inner})",
                format_monomial(self.h, &self.term.cofactor)
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(v: &[usize]) -> Multiset {
        v.iter().copied().collect()
    }

    #[test]
    fn telescoping_cancels() {
        // a(b - c) + c(a - d) = ab - cd
        let t1 = Term::new(ms(&[0]), ms(&[1]), ms(&[2]));
        let t2 = Term::new(ms(&[2]), ms(&[0]), ms(&[3]));
        let lhs = Polynomial::from_terms([&t1, &t2]);
        assert_eq!(lhs, Polynomial::binomial(&ms(&[0, 1]), &ms(&[2, 3])));
        assert_eq!(lhs.len(), 2);
    }

    #[test]
    fn zero_binomial() {
        assert!(Polynomial::binomial(&ms(&[1, 1]), &ms(&[1, 1])).is_zero());
        assert!(Term::new(ms(&[]), ms(&[4]), ms(&[4])).is_zero());
    }

    #[test]
    fn display() {
        let h = Hypergraph::new(2, vec![vec![0], vec![1], vec![0, 1]]).unwrap();
        let t = Term::new(ms(&[2]), ms(&[0, 0]), ms(&[1, 2]));
        assert_eq!(t.display(&h).to_string(), "t_e2*(t_e0^2 - t_e1*t_e2)");
    }
}
