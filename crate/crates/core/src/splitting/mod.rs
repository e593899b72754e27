//! Separators, decompositions and splitting sets.
//!
//! A decomposition `(Γ1, S, Γ2)` of a balanced edge set `E` splits it into
//! two balanced parts with `E = Γ1 ⊔ Γ2`, each color of each part inside
//! the same color of `E`, and `S = Γ1.red ∩ Γ2.blue`. A multiset `S` is a
//! splitting set of a walk `W` when `W + S` admits such a decomposition with
//! separator `S`; the binomial of `W` is then `m1·f(Γ1) + m2·f(Γ2)`.
//!
//! Both parts are required to differ from `W + S` and from `W` itself. The
//! second condition rules out the degenerate split `Γ1 = S ⊔_b S`, `Γ2 = W`,
//! which exists for every `S ⊆ W.blue` and carries no information.

mod certificate;

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::balanced::{BalancedEdgeSet, Binomial};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::multiset::Multiset;
use crate::poly::{Polynomial, Term};

pub use certificate::{
    check_nonuniform_conditions, find_degree_certificate, CertificateCaps, CertificateSearch,
    DegreeCertificate, Rule, Step, Terminal, Witness,
};

/// How a separator sits inside the two parts of its decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeparatorKind {
    /// `S ⊊ Γ1.red` and `S ⊊ Γ2.blue`.
    Proper,
    /// `Γ1.red = S`. Also used when `Γ1.red = S = Γ2.blue`.
    Blue,
    /// `Γ2.blue = S` and `Γ1.red ≠ S`.
    Red,
}

impl SeparatorKind {
    /// Classifies `s` given both sides it must sit in; `None` if `s` is not
    /// contained in both.
    pub fn classify(gamma1_red: &Multiset, s: &Multiset, gamma2_blue: &Multiset) -> Option<Self> {
        if !s.is_subset(gamma1_red) || !s.is_subset(gamma2_blue) {
            return None;
        }
        Some(if s != gamma1_red && s != gamma2_blue {
            Self::Proper
        } else if s == gamma1_red {
            Self::Blue
        } else {
            Self::Red
        })
    }
}

/// A decomposition `(Γ1, S, Γ2)` together with its separator class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub gamma1: BalancedEdgeSet,
    pub separator: Multiset,
    pub gamma2: BalancedEdgeSet,
    pub kind: SeparatorKind,
}

impl Decomposition {
    /// Builds a decomposition and classifies its separator. Fails if `S` is
    /// not inside both `Γ1.red` and `Γ2.blue`.
    pub fn new(
        gamma1: BalancedEdgeSet,
        separator: Multiset,
        gamma2: BalancedEdgeSet,
    ) -> Result<Self> {
        let kind =
            SeparatorKind::classify(&gamma1.red, &separator, &gamma2.blue).ok_or_else(|| {
                Error::InvalidDecomposition("separator is not inside Γ1.red and Γ2.blue".into())
            })?;
        Ok(Self {
            gamma1,
            separator,
            gamma2,
            kind,
        })
    }

    pub fn is_proper(&self) -> bool {
        self.kind == SeparatorKind::Proper
    }

    pub fn is_blue(&self) -> bool {
        self.kind == SeparatorKind::Blue
    }

    pub fn is_red(&self) -> bool {
        self.kind == SeparatorKind::Red
    }

    /// The walk this decomposition splits: `Γ1 ⊔ Γ2` minus `S` on both colors.
    pub fn walk(&self) -> BalancedEdgeSet {
        let blue = &self.gamma1.blue + &self.gamma2.blue;
        let red = &self.gamma1.red + &self.gamma2.red;
        BalancedEdgeSet::new(&blue - &self.separator, &red - &self.separator)
    }
}

/// Outcome of [`check_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ValidProper,
    ValidBlue,
    ValidRed,
    Invalid(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        !matches!(self, Verdict::Invalid(_))
    }

    pub fn kind(&self) -> Option<SeparatorKind> {
        match self {
            Verdict::ValidProper => Some(SeparatorKind::Proper),
            Verdict::ValidBlue => Some(SeparatorKind::Blue),
            Verdict::ValidRed => Some(SeparatorKind::Red),
            Verdict::Invalid(_) => None,
        }
    }

    fn of(kind: SeparatorKind) -> Self {
        match kind {
            SeparatorKind::Proper => Verdict::ValidProper,
            SeparatorKind::Blue => Verdict::ValidBlue,
            SeparatorKind::Red => Verdict::ValidRed,
        }
    }
}

/// Checks every decomposition condition of `d` against `whole` and
/// classifies the separator. The first violated condition is reported.
pub fn check_decomposition(h: &Hypergraph, whole: &BalancedEdgeSet, d: &Decomposition) -> Verdict {
    match check_inner(h, whole, d) {
        Ok(kind) => Verdict::of(kind),
        Err(reason) => Verdict::Invalid(reason),
    }
}

fn check_inner(
    h: &Hypergraph,
    whole: &BalancedEdgeSet,
    d: &Decomposition,
) -> std::result::Result<SeparatorKind, String> {
    let named = |what: &str, e: Error| format!("{what}: {e}");
    for (what, part) in [("whole", whole), ("Γ1", &d.gamma1), ("Γ2", &d.gamma2)] {
        part.check_balanced(h).map_err(|e| named(what, e))?;
    }
    h.check_edges(&d.separator)
        .map_err(|e| named("separator", e))?;
    if d.separator.is_empty() {
        return Err("separator is empty".into());
    }
    for (what, sub, sup) in [
        ("Γ1.blue ⊆ whole.blue", &d.gamma1.blue, &whole.blue),
        ("Γ2.blue ⊆ whole.blue", &d.gamma2.blue, &whole.blue),
        ("Γ1.red ⊆ whole.red", &d.gamma1.red, &whole.red),
        ("Γ2.red ⊆ whole.red", &d.gamma2.red, &whole.red),
    ] {
        if !sub.is_subset(sup) {
            return Err(format!("coloring condition {what} fails"));
        }
    }
    if &d.gamma1.blue + &d.gamma2.blue != whole.blue || &d.gamma1.red + &d.gamma2.red != whole.red {
        return Err("whole is not Γ1 ⊔ Γ2".into());
    }
    if &d.gamma1.red & &d.gamma2.blue != d.separator {
        return Err("separator is not Γ1.red ∩ Γ2.blue".into());
    }
    let walk = BalancedEdgeSet::new(&whole.blue - &d.separator, &whole.red - &d.separator);
    for (what, part) in [("Γ1", &d.gamma1), ("Γ2", &d.gamma2)] {
        if part == whole {
            return Err(format!("{what} equals the whole set"));
        }
        if part == &walk {
            return Err(format!("{what} equals the walk being split"));
        }
    }
    let kind = SeparatorKind::classify(&d.gamma1.red, &d.separator, &d.gamma2.blue)
        .ok_or_else(|| "separator is not inside Γ1.red and Γ2.blue".to_string())?;
    if kind != d.kind {
        return Err(format!("separator is {kind:?}, recorded as {:?}", d.kind));
    }
    Ok(kind)
}

/// Calls `f` on every decomposition of `W + S` with separator `S`.
pub(crate) fn for_each_decomposition<F>(
    h: &Hypergraph,
    w: &BalancedEdgeSet,
    s: &Multiset,
    mut f: F,
) -> Result<ControlFlow<()>>
where
    F: FnMut(Decomposition) -> ControlFlow<()>,
{
    w.check_balanced(h)?;
    let whole = w.add_splitting(h, s)?;
    if s.is_empty() {
        return Ok(ControlFlow::Continue(()));
    }
    let edges: Vec<usize> = whole.blue.union(&whole.red).support().collect();
    // Per edge: the admissible (Γ1.red, Γ1.blue) multiplicities.
    let options: Vec<Vec<(u32, u32)>> = edges
        .iter()
        .map(|&e| {
            let (r, b, k) = (
                whole.red.multiplicity(e),
                whole.blue.multiplicity(e),
                s.multiplicity(e),
            );
            let mut opts = Vec::new();
            for a in k..=r {
                for c in 0..=b - k {
                    if a == k || b - c == k {
                        opts.push((a, c));
                    }
                }
            }
            opts
        })
        .collect();
    let nv = h.n_vertices();
    let mut lo = vec![vec![0i64; nv]; edges.len() + 1];
    let mut hi = vec![vec![0i64; nv]; edges.len() + 1];
    for i in (0..edges.len()).rev() {
        let (mut dmin, mut dmax) = (i64::MAX, i64::MIN);
        for &(a, c) in &options[i] {
            let d = c as i64 - a as i64;
            dmin = dmin.min(d);
            dmax = dmax.max(d);
        }
        lo[i] = lo[i + 1].clone();
        hi[i] = hi[i + 1].clone();
        for &v in h.edge(edges[i])? {
            lo[i][v] += dmin;
            hi[i][v] += dmax;
        }
    }
    let mut dfs = DecompositionDfs {
        h,
        w,
        whole: &whole,
        s,
        edges: &edges,
        options: &options,
        lo: &lo,
        hi: &hi,
        imbalance: vec![0; nv],
        choice: vec![(0, 0); edges.len()],
    };
    Ok(dfs.run(0, &mut f))
}

struct DecompositionDfs<'a> {
    h: &'a Hypergraph,
    w: &'a BalancedEdgeSet,
    whole: &'a BalancedEdgeSet,
    s: &'a Multiset,
    edges: &'a [usize],
    options: &'a [Vec<(u32, u32)>],
    lo: &'a [Vec<i64>],
    hi: &'a [Vec<i64>],
    imbalance: Vec<i64>,
    choice: Vec<(u32, u32)>,
}

impl DecompositionDfs<'_> {
    fn run<F>(&mut self, i: usize, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(Decomposition) -> ControlFlow<()>,
    {
        if i == self.edges.len() {
            return match self.leaf() {
                Some(d) => f(d),
                None => ControlFlow::Continue(()),
            };
        }
        let verts = &self.h.edges()[self.edges[i]];
        for &(a, c) in &self.options[i] {
            let d = c as i64 - a as i64;
            for &v in verts {
                self.imbalance[v] += d;
            }
            let feasible = verts.iter().all(|&v| {
                let x = self.imbalance[v];
                x + self.lo[i + 1][v] <= 0 && 0 <= x + self.hi[i + 1][v]
            });
            if feasible {
                self.choice[i] = (a, c);
                let flow = self.run(i + 1, f);
                if flow.is_break() {
                    for &v in verts {
                        self.imbalance[v] -= d;
                    }
                    return flow;
                }
            }
            for &v in verts {
                self.imbalance[v] -= d;
            }
        }
        ControlFlow::Continue(())
    }

    fn leaf(&self) -> Option<Decomposition> {
        let red = Multiset::from_pairs(
            self.edges
                .iter()
                .zip(&self.choice)
                .map(|(&e, &(a, _))| (e, a)),
        );
        let blue = Multiset::from_pairs(
            self.edges
                .iter()
                .zip(&self.choice)
                .map(|(&e, &(_, c))| (e, c)),
        );
        let g1 = BalancedEdgeSet::new(blue, red);
        let g2 = BalancedEdgeSet::new(&self.whole.blue - &g1.blue, &self.whole.red - &g1.red);
        if [&g1, &g2].iter().any(|g| *g == self.whole || *g == self.w) {
            return None;
        }
        Decomposition::new(g1, self.s.clone(), g2).ok()
    }
}

/// Every decomposition of `W + S` with separator `S`, in search order.
pub fn decompositions(
    h: &Hypergraph,
    w: &BalancedEdgeSet,
    s: &Multiset,
) -> Result<Vec<Decomposition>> {
    let mut out = Vec::new();
    let _ = for_each_decomposition(h, w, s, |d| {
        out.push(d);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// A witnessing decomposition for `S`, preferring proper ones, then blue.
fn best_decomposition(
    h: &Hypergraph,
    w: &BalancedEdgeSet,
    s: &Multiset,
) -> Result<Option<Decomposition>> {
    let mut best: Option<Decomposition> = None;
    let _ = for_each_decomposition(h, w, s, |d| {
        let better = best.as_ref().is_none_or(|b| d.kind < b.kind);
        let proper = d.is_proper();
        if better {
            best = Some(d);
        }
        if proper {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(best)
}

/// Bounds on the candidate splitting sets. `None` leaves a dimension
/// unbounded; the search is still finite because `deg(v; S) ≤ deg_blue(v; W)`
/// holds for every splitting set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCaps {
    pub size_cap: Option<usize>,
    pub mult_cap: Option<u32>,
}

impl SplitCaps {
    pub fn exhaustive() -> Self {
        Self::default()
    }

    pub fn new(size_cap: usize, mult_cap: u32) -> Self {
        Self {
            size_cap: Some(size_cap),
            mult_cap: Some(mult_cap),
        }
    }

    /// Size below `n = max(|W.blue|, |W.red|)` and multiplicity at most 2.
    pub fn default_for(w: &BalancedEdgeSet) -> Self {
        Self::new(w.degree().saturating_sub(1), 2)
    }
}

/// A splitting set with one witnessing decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingSet {
    pub set: Multiset,
    pub decomposition: Decomposition,
}

/// Result of [`find_splitting_sets`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitSearch {
    pub found: Vec<SplittingSet>,
    pub caps: SplitCaps,
    /// True when the caps never cut the candidate space, so `found` lists
    /// every splitting set.
    pub exhaustive: bool,
}

/// Candidate splitting sets of `w` within `caps`, sorted by size and then
/// multiset order, plus whether the caps pruned anything.
pub(crate) fn candidate_sets(
    h: &Hypergraph,
    w: &BalancedEdgeSet,
    caps: SplitCaps,
) -> Result<(Vec<Multiset>, bool)> {
    let budget: Vec<u32> = h.degree_vector(&w.blue)?;
    let edges: Vec<usize> = (0..h.n_edges())
        .filter(|&e| h.edges()[e].iter().all(|&v| budget[v] > 0))
        .collect();
    struct Gen<'a> {
        h: &'a Hypergraph,
        edges: &'a [usize],
        caps: SplitCaps,
        budget: Vec<u32>,
        size: usize,
        cur: Vec<(usize, u32)>,
        out: Vec<Multiset>,
        pruned: bool,
    }
    impl Gen<'_> {
        fn run(&mut self, i: usize) {
            if i == self.edges.len() {
                if self.size > 0 {
                    self.out
                        .push(Multiset::from_pairs(self.cur.iter().copied()));
                }
                return;
            }
            let e = self.edges[i];
            let verts = &self.h.edges()[e];
            let natural = verts.iter().map(|&v| self.budget[v]).min().unwrap_or(0);
            let mut k_max = natural;
            if let Some(m) = self.caps.mult_cap {
                k_max = k_max.min(m);
            }
            if let Some(s) = self.caps.size_cap {
                k_max = k_max.min(u32::try_from(s.saturating_sub(self.size)).unwrap_or(u32::MAX));
            }
            if k_max < natural {
                self.pruned = true;
            }
            for k in 0..=k_max {
                for &v in verts {
                    self.budget[v] -= k;
                }
                self.size += k as usize;
                self.cur.push((e, k));
                self.run(i + 1);
                self.cur.pop();
                self.size -= k as usize;
                for &v in verts {
                    self.budget[v] += k;
                }
            }
        }
    }
    let mut g = Gen {
        h,
        edges: &edges,
        caps,
        budget,
        size: 0,
        cur: Vec::new(),
        out: Vec::new(),
        pruned: false,
    };
    g.run(0);
    let mut out = g.out;
    out.sort_by(|a, b| (a.size(), a).cmp(&(b.size(), b)));
    Ok((out, !g.pruned))
}

/// Every splitting set of `w` within `caps`, each with one decomposition
/// (proper when one exists, otherwise blue, otherwise red).
pub fn find_splitting_sets(
    h: &Hypergraph,
    w: &BalancedEdgeSet,
    caps: SplitCaps,
) -> Result<SplitSearch> {
    w.check_balanced(h)?;
    let (candidates, exhaustive) = candidate_sets(h, w, caps)?;
    let found: Vec<Option<SplittingSet>> = candidates
        .par_iter()
        .map(|s| {
            Ok(best_decomposition(h, w, s)?.map(|d| SplittingSet {
                set: s.clone(),
                decomposition: d,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(SplitSearch {
        found: found.into_iter().flatten().collect(),
        caps,
        exhaustive,
    })
}

/// Whether `S` admits a decomposition of `W + S` in which it is proper.
pub fn is_proper_splitting_set(h: &Hypergraph, w: &BalancedEdgeSet, s: &Multiset) -> Result<bool> {
    Ok(best_decomposition(h, w, s)?.is_some_and(|d| d.is_proper()))
}

/// The binomial of a walk rewritten through a decomposition of `W + S`:
/// `f(W) = m1·f1 + m2·f2` with `f1`, `f2` the reduced binomials of `Γ1`, `Γ2`.
/// A part whose colors coincide contributes nothing and has `f = None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rewrite {
    pub m1: Multiset,
    pub f1: Option<Binomial>,
    pub m2: Multiset,
    pub f2: Option<Binomial>,
}

impl Rewrite {
    /// The identity as terms `m·(plus - minus)`, zero terms omitted.
    pub fn terms(&self) -> Vec<Term> {
        [(&self.m1, &self.f1), (&self.m2, &self.f2)]
            .into_iter()
            .filter_map(|(m, f)| {
                f.as_ref()
                    .map(|f| Term::new(m.clone(), f.plus().clone(), f.minus().clone()))
            })
            .collect()
    }
}

/// The two unreduced terms `(u2/s)·(u1 - v1)` and `(v1/s)·(u2 - v2)` for a
/// decomposition `Γ1 = u1 ⊔_b v1`, `Γ2 = u2 ⊔_b v2` with separator `s`.
pub(crate) fn decomposition_terms(d: &Decomposition) -> [Term; 2] {
    let m1 = &d.gamma2.blue - &d.separator;
    let m2 = &d.gamma1.red - &d.separator;
    [
        Term::new(m1, d.gamma1.blue.clone(), d.gamma1.red.clone()),
        Term::new(m2, d.gamma2.blue.clone(), d.gamma2.red.clone()),
    ]
}

/// The unreduced rewriting identity of a decomposition, summing to the
/// binomial of its walk.
pub fn decomposition_identity(d: &Decomposition) -> Vec<Term> {
    decomposition_terms(d).to_vec()
}

/// Rewrites the binomial of `walk` through a decomposition of
/// `walk + d.separator` and verifies the identity by expansion.
pub fn rewrite_with_decomposition(
    h: &Hypergraph,
    walk: &BalancedEdgeSet,
    d: &Decomposition,
) -> Result<Rewrite> {
    let whole = walk.add_splitting(h, &d.separator)?;
    if let Verdict::Invalid(reason) = check_decomposition(h, &whole, d) {
        return Err(Error::InvalidDecomposition(reason));
    }
    let [t1, t2] = decomposition_terms(d);
    let reduce = |t: Term| -> Result<(Multiset, Option<Binomial>)> {
        match Binomial::new_with_gcd(h, t.plus, t.minus) {
            Ok((b, g)) => Ok((&t.cofactor + &g, Some(b))),
            Err(Error::ZeroBinomial) => Ok((t.cofactor, None)),
            Err(e) => Err(e),
        }
    };
    let (m1, f1) = reduce(t1)?;
    let (m2, f2) = reduce(t2)?;
    let rewrite = Rewrite { m1, f1, m2, f2 };
    if Polynomial::from_terms(&rewrite.terms()) != walk.polynomial() {
        return Err(Error::Internal(
            "rewriting identity does not expand to f(W)".into(),
        ));
    }
    Ok(rewrite)
}

/// Whether some decomposition witnessing that `S` is proper has
/// `|Γ1| < |W|` and `|Γ2| < |W|`.
///
/// Requires a uniform host and a proper splitting set `S`.
pub fn check_lemma_proper_split(h: &Hypergraph, w: &BalancedEdgeSet, s: &Multiset) -> Result<bool> {
    if h.is_uniform().is_none() {
        return Err(Error::Precondition("the hypergraph is not uniform".into()));
    }
    let proper: Vec<Decomposition> = decompositions(h, w, s)?
        .into_iter()
        .filter(|d| d.is_proper())
        .collect();
    if proper.is_empty() {
        return Err(Error::Precondition(
            "S is not a proper splitting set".into(),
        ));
    }
    Ok(proper
        .iter()
        .any(|d| d.gamma1.size() < w.size() && d.gamma2.size() < w.size()))
}
