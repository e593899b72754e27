//! Certificates that a primitive walk's binomial is a combination of
//! binomials of smaller degree.
//!
//! Two shapes are searched. A *split* is one proper splitting set of the
//! walk. A *sequence* is a chain of blue moves `(u_i -> S_i)` on the blue
//! side and red moves `(z_i -> R_i)` on the red side, run in lockstep, ending
//! either in a shared edge of `S_N` and `R_N` or in a proper split of the
//! final walk. Both replay to an exact telescoping identity.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    candidate_sets, check_decomposition, decomposition_terms, for_each_decomposition,
    Decomposition, SeparatorKind, SplitCaps, Verdict,
};
use crate::balanced::BalancedEdgeSet;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::multiset::Multiset;
use crate::poly::{Polynomial, Term};
use crate::search;

/// Which size rules a certificate obeys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// Uniform host: splitting sets of size `< n`, any number of steps.
    Uniform,
    /// Any host: one step, `|Γ1.blue|, |Υ2.red| < n` and
    /// `|Γ2.blue|, |Υ1.red| ≤ n`.
    Nonuniform,
}

/// One lockstep move: a blue decomposition of `W_{i-1} + S_i` and a red
/// decomposition of `W_{i-1} + R_i`, giving `W_i = Γ2.blue ⊔_b Υ1.red`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub blue: Decomposition,
    pub red: Decomposition,
    pub walk: BalancedEdgeSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Terminal {
    /// An edge lying in both `S_N` and `R_N`.
    SharedEdge { edge: usize },
    /// A proper splitting of `W_N`.
    ProperSplit { decomposition: Decomposition },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Witness {
    #[serde(rename = "condition_i")]
    Split { decomposition: Decomposition },
    #[serde(rename = "condition_ii")]
    Sequence {
        steps: Vec<Step>,
        terminal: Terminal,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCertificate {
    pub rule: Rule,
    pub walk: BalancedEdgeSet,
    pub witness: Witness,
}

impl DegreeCertificate {
    /// `n = |W.blue|`.
    pub fn n(&self) -> usize {
        self.walk.blue.size()
    }

    /// The walk after the last step (the walk itself for a split).
    pub fn final_walk(&self) -> &BalancedEdgeSet {
        match &self.witness {
            Witness::Sequence { steps, .. } => steps.last().map_or(&self.walk, |s| &s.walk),
            Witness::Split { .. } => &self.walk,
        }
    }

    /// Terms `m·(plus - minus)` summing to `f(W)`.
    pub fn identity(&self) -> Vec<Term> {
        match &self.witness {
            Witness::Split { decomposition } => decomposition_terms(decomposition).to_vec(),
            Witness::Sequence { steps, terminal } => {
                let mut terms = Vec::new();
                let mut prev = &self.walk;
                let mut red_terms = Vec::new();
                for step in steps {
                    let (u, s) = (&step.blue.gamma1.blue, &step.blue.separator);
                    terms.push(Term::new(&prev.blue - u, u.clone(), s.clone()));
                    let (r, z) = (&step.red.separator, &step.red.gamma2.red);
                    red_terms.push(Term::new(&prev.red - z, r.clone(), z.clone()));
                    prev = &step.walk;
                }
                match terminal {
                    Terminal::SharedEdge { edge } => {
                        let e = Multiset::singleton(*edge);
                        terms.push(Term::new(e.clone(), &prev.blue - &e, &prev.red - &e));
                    }
                    Terminal::ProperSplit { decomposition } => {
                        terms.extend(decomposition_terms(decomposition));
                    }
                }
                terms.extend(red_terms);
                terms
            }
        }
    }

    /// Re-checks every decomposition, size rule and the identity.
    pub fn verify(&self, h: &Hypergraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        self.walk.check_balanced(h)?;
        let n = self.n();
        match self.rule {
            Rule::Uniform => {
                if h.is_uniform().is_none() {
                    return bad("uniform rule on a non-uniform hypergraph".into());
                }
            }
            Rule::Nonuniform => {
                if self.walk.red.size() > n {
                    return bad("|W.red| exceeds |W.blue|".into());
                }
            }
        }
        let expect = |whole: &BalancedEdgeSet,
                      d: &Decomposition,
                      kind: SeparatorKind,
                      what: &str| match check_decomposition(h, whole, d) {
            Verdict::Invalid(r) => Err(Error::InvalidDecomposition(format!("{what}: {r}"))),
            v if v.kind() != Some(kind) => Err(Error::InvalidDecomposition(format!(
                "{what}: expected {kind:?}, found {v:?}"
            ))),
            _ => Ok(()),
        };
        let parts_below = |d: &Decomposition, what: &str| -> Result<()> {
            for g in [&d.gamma1, &d.gamma2] {
                if g.blue.size() >= n || g.red.size() >= n {
                    return Err(Error::InvalidDecomposition(format!(
                        "{what}: a part has a color of size ≥ n"
                    )));
                }
            }
            Ok(())
        };
        match &self.witness {
            Witness::Split { decomposition: d } => {
                let whole = self.walk.add_splitting(h, &d.separator)?;
                expect(&whole, d, SeparatorKind::Proper, "split")?;
                parts_below(d, "split")?;
            }
            Witness::Sequence { steps, terminal } => {
                if steps.is_empty() {
                    return bad("empty sequence".into());
                }
                if self.rule == Rule::Nonuniform && steps.len() != 1 {
                    return bad("the non-uniform rule takes exactly one step".into());
                }
                let mut prev = self.walk.clone();
                for (i, step) in steps.iter().enumerate() {
                    let what = format!("step {}", i + 1);
                    let (s, r) = (&step.blue.separator, &step.red.separator);
                    if s.size() >= n || r.size() >= n {
                        return bad(format!("{what}: splitting set of size ≥ n"));
                    }
                    expect(
                        &prev.add_splitting(h, s)?,
                        &step.blue,
                        SeparatorKind::Blue,
                        &format!("{what} blue"),
                    )?;
                    expect(
                        &prev.add_splitting(h, r)?,
                        &step.red,
                        SeparatorKind::Red,
                        &format!("{what} red"),
                    )?;
                    let next = BalancedEdgeSet::new(
                        step.blue.gamma2.blue.clone(),
                        step.red.gamma1.red.clone(),
                    );
                    if next != step.walk {
                        return bad(format!("{what}: recorded walk is not Γ2.blue ⊔_b Υ1.red"));
                    }
                    if self.rule == Rule::Nonuniform {
                        let (g1b, y2r) = (step.blue.gamma1.blue.size(), step.red.gamma2.red.size());
                        let (g2b, y1r) = (step.blue.gamma2.blue.size(), step.red.gamma1.red.size());
                        if g1b >= n || y2r >= n || g2b > n || y1r > n {
                            return bad(format!("{what}: size constraints fail"));
                        }
                    }
                    prev = next;
                }
                let last = steps.last().expect("nonempty");
                match terminal {
                    Terminal::SharedEdge { edge } => {
                        if !last.blue.separator.contains(*edge)
                            || !last.red.separator.contains(*edge)
                        {
                            return bad("terminal edge is not in both S_N and R_N".into());
                        }
                    }
                    Terminal::ProperSplit { decomposition: d } => {
                        if self.rule == Rule::Nonuniform {
                            return bad("the non-uniform rule ends in a shared edge".into());
                        }
                        let whole = prev.add_splitting(h, &d.separator)?;
                        expect(&whole, d, SeparatorKind::Proper, "terminal")?;
                        if d.gamma1.size() >= prev.size() || d.gamma2.size() >= prev.size() {
                            return bad("terminal split does not shrink the walk".into());
                        }
                    }
                }
            }
        }
        let identity = self.identity();
        if Polynomial::from_terms(&identity) != self.walk.polynomial() {
            return bad("identity does not expand to f(W)".into());
        }
        if let Some(t) = identity
            .iter()
            .find(|t| t.degree() >= n.max(self.walk.red.size()))
        {
            return bad(format!(
                "identity term of degree {} is not below n",
                t.degree()
            ));
        }
        Ok(())
    }
}

/// Bounds for [`find_degree_certificate`] and [`check_nonuniform_conditions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCaps {
    /// Longest move sequence tried.
    pub max_steps: usize,
    /// Candidate splitting sets for a split and for terminal splits.
    pub split: SplitCaps,
    /// Whether to look for a split before sequences.
    pub condition_i: bool,
    /// Distinct states kept per side and level.
    pub max_states: usize,
    /// Final walks probed for a proper split per level.
    pub max_terminal_checks: usize,
}

impl Default for CertificateCaps {
    fn default() -> Self {
        Self {
            max_steps: 3,
            split: SplitCaps::exhaustive(),
            condition_i: true,
            max_states: 20_000,
            max_terminal_checks: 64,
        }
    }
}

/// Result of a certificate search. `certificate: None` only means nothing
/// was found within `caps`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateSearch {
    pub certificate: Option<DegreeCertificate>,
    pub caps: CertificateCaps,
    /// Some state layer hit `max_states` or a terminal probe hit
    /// `max_terminal_checks`.
    pub truncated: bool,
}

/// First proper decomposition of `w + S` over candidate `S`, in candidate
/// order, accepted by `keep`.
fn first_proper_split<K>(
    h: &Hypergraph,
    w: &BalancedEdgeSet,
    caps: SplitCaps,
    keep: K,
) -> Result<Option<Decomposition>>
where
    K: Fn(&Decomposition) -> bool + Sync,
{
    let (candidates, _) = candidate_sets(h, w, caps)?;
    let found = candidates
        .par_iter()
        .map(|s| {
            let mut hit = None;
            let _ = for_each_decomposition(h, w, s, |d| {
                if d.is_proper() && keep(&d) {
                    hit = Some(d);
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            })?;
            Ok(hit)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().next())
}

/// Moves `(removed, added)` from `state`: `removed ⊊ state` nonempty,
/// `added ≠ removed` with the same degree vector, both within the size
/// limits.
fn moves(
    h: &Hypergraph,
    state: &Multiset,
    max_removed: usize,
    max_added: usize,
) -> Result<Vec<(Multiset, Multiset)>> {
    let subs: Vec<Multiset> = search::sub_multisets(state)
        .into_iter()
        .filter(|u| !u.is_empty() && u != state && u.size() <= max_removed)
        .collect();
    let per: Vec<Vec<(Multiset, Multiset)>> = subs
        .par_iter()
        .map(|u| {
            let target = h.degree_vector(u)?;
            Ok(search::factorizations(h, &target, None, Some(max_added))
                .into_iter()
                .filter(|x| x != u && !x.is_empty())
                .map(|x| (u.clone(), x))
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

struct Node {
    state: Multiset,
    parent: usize,
    removed: Multiset,
    added: Multiset,
}

/// Layered search over one side. Layer `L` holds the distinct states
/// reachable in exactly `L` moves.
fn expand(
    h: &Hypergraph,
    layer: &[Node],
    max_removed: usize,
    max_added: usize,
    max_states: usize,
    truncated: &mut bool,
) -> Result<Vec<Node>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (pi, node) in layer.iter().enumerate() {
        for (removed, added) in moves(h, &node.state, max_removed, max_added)? {
            let state = &(&node.state - &removed) + &added;
            if seen.contains(&state) {
                continue;
            }
            if out.len() >= max_states {
                *truncated = true;
                return Ok(out);
            }
            seen.insert(state.clone());
            out.push(Node {
                state,
                parent: pi,
                removed,
                added,
            });
        }
    }
    Ok(out)
}

/// Node indices at levels `1..=level` leading to `layers[level][idx]`.
fn path(layers: &[Vec<Node>], level: usize, mut idx: usize) -> Vec<usize> {
    let mut out = vec![idx];
    for l in (2..=level).rev() {
        idx = layers[l][idx].parent;
        out.push(idx);
    }
    out.reverse();
    out
}

/// Decompositions for one lockstep move from `prev`.
fn step_pair(prev: &BalancedEdgeSet, blue: &Node, red: &Node) -> Result<Step> {
    let (u, s) = (&blue.removed, &blue.added);
    let g1 = BalancedEdgeSet::new(u.clone(), s.clone());
    let g2 = BalancedEdgeSet::new(&(&prev.blue - u) + s, prev.red.clone());
    let blue_d = Decomposition::new(g1, s.clone(), g2)?;
    let (z, r) = (&red.removed, &red.added);
    let y1 = BalancedEdgeSet::new(prev.blue.clone(), &(&prev.red - z) + r);
    let y2 = BalancedEdgeSet::new(r.clone(), z.clone());
    let red_d = Decomposition::new(y1, r.clone(), y2)?;
    let walk = BalancedEdgeSet::new(blue_d.gamma2.blue.clone(), red_d.gamma1.red.clone());
    Ok(Step {
        blue: blue_d,
        red: red_d,
        walk,
    })
}

fn assemble(
    w: &BalancedEdgeSet,
    blue_layers: &[Vec<Node>],
    red_layers: &[Vec<Node>],
    level: usize,
    bi: usize,
    ri: usize,
) -> Result<Vec<Step>> {
    let bp = path(blue_layers, level, bi);
    let rp = path(red_layers, level, ri);
    let mut steps = Vec::with_capacity(level);
    let mut prev = w.clone();
    for l in 1..=level {
        let step = step_pair(&prev, &blue_layers[l][bp[l - 1]], &red_layers[l][rp[l - 1]])?;
        prev = step.walk.clone();
        steps.push(step);
    }
    Ok(steps)
}

/// Searches for a certificate that `f(W)` is generated in degree `< n`
/// on a uniform host, for a primitive `W` of degree `n > d`.
pub fn find_degree_certificate(
    h: &Hypergraph,
    w: &BalancedEdgeSet,
    d: usize,
    caps: CertificateCaps,
) -> Result<CertificateSearch> {
    if h.is_uniform().is_none() {
        return Err(Error::Precondition("the hypergraph is not uniform".into()));
    }
    if !w.is_primitive(h)? {
        return Err(Error::Precondition("the walk is not primitive".into()));
    }
    let n = w.blue.size();
    if n <= d {
        return Err(Error::Precondition(format!(
            "walk degree {n} does not exceed d = {d}"
        )));
    }
    let mut truncated = false;
    let done = |witness, truncated| CertificateSearch {
        certificate: Some(DegreeCertificate {
            rule: Rule::Uniform,
            walk: w.clone(),
            witness,
        }),
        caps,
        truncated,
    };
    if caps.condition_i {
        if let Some(decomposition) = first_proper_split(h, w, caps.split, |_| true)? {
            return Ok(done(Witness::Split { decomposition }, false));
        }
    }
    let root = |m: &Multiset| {
        vec![Node {
            state: m.clone(),
            parent: usize::MAX,
            removed: Multiset::new(),
            added: Multiset::new(),
        }]
    };
    let mut blue_layers = vec![root(&w.blue)];
    let mut red_layers = vec![root(&w.red)];
    for level in 1..=caps.max_steps {
        let b = expand(
            h,
            &blue_layers[level - 1],
            n - 1,
            n - 1,
            caps.max_states,
            &mut truncated,
        )?;
        let r = expand(
            h,
            &red_layers[level - 1],
            n - 1,
            n - 1,
            caps.max_states,
            &mut truncated,
        )?;
        blue_layers.push(b);
        red_layers.push(r);
        if let Some((bi, ri, edge)) = shared_edge(&blue_layers[level], &red_layers[level]) {
            let steps = assemble(w, &blue_layers, &red_layers, level, bi, ri)?;
            return Ok(done(
                Witness::Sequence {
                    steps,
                    terminal: Terminal::SharedEdge { edge },
                },
                truncated,
            ));
        }
        let mut probes = 0;
        'probe: for (bi, bn) in blue_layers[level].iter().enumerate() {
            for (ri, rn) in red_layers[level].iter().enumerate() {
                if probes >= caps.max_terminal_checks {
                    truncated = true;
                    break 'probe;
                }
                probes += 1;
                let wn = BalancedEdgeSet::new(bn.state.clone(), rn.state.clone());
                if !wn.blue.is_disjoint(&wn.red) {
                    continue;
                }
                if let Some(decomposition) = first_proper_split(h, &wn, caps.split, |_| true)? {
                    let steps = assemble(w, &blue_layers, &red_layers, level, bi, ri)?;
                    return Ok(done(
                        Witness::Sequence {
                            steps,
                            terminal: Terminal::ProperSplit { decomposition },
                        },
                        truncated,
                    ));
                }
            }
        }
    }
    Ok(CertificateSearch {
        certificate: None,
        caps,
        truncated,
    })
}

/// First pair (blue node, red node, edge) with the edge added on both sides.
fn shared_edge(blue: &[Node], red: &[Node]) -> Option<(usize, usize, usize)> {
    let mut first_red: HashMap<usize, usize> = HashMap::new();
    for (ri, node) in red.iter().enumerate() {
        for e in node.added.support() {
            first_red.entry(e).or_insert(ri);
        }
    }
    blue.iter().enumerate().find_map(|(bi, node)| {
        node.added
            .support()
            .find_map(|e| first_red.get(&e).map(|&ri| (bi, ri, e)))
    })
}

/// Searches the one-step conditions for any host, with `n = |E.blue| ≥ |E.red|`:
/// a proper split whose parts have both colors below `n`, or a blue move
/// and a red move whose added sets share an edge under the size limits.
pub fn check_nonuniform_conditions(
    h: &Hypergraph,
    e: &BalancedEdgeSet,
    caps: CertificateCaps,
) -> Result<CertificateSearch> {
    e.check_balanced(h)?;
    let n = e.blue.size();
    if e.red.size() > n {
        return Err(Error::Precondition("|E.red| exceeds |E.blue|".into()));
    }
    let done = |witness| CertificateSearch {
        certificate: Some(DegreeCertificate {
            rule: Rule::Nonuniform,
            walk: e.clone(),
            witness,
        }),
        caps,
        truncated: false,
    };
    if caps.condition_i {
        let small = |d: &Decomposition| {
            [&d.gamma1, &d.gamma2]
                .iter()
                .all(|g| g.blue.size() < n && g.red.size() < n)
        };
        if let Some(decomposition) = first_proper_split(h, e, caps.split, small)? {
            return Ok(done(Witness::Split { decomposition }));
        }
    }
    let max = n.saturating_sub(1);
    let blue: Vec<Node> = moves(h, &e.blue, max, max)?
        .into_iter()
        .filter(|(u, s)| e.blue.size() - u.size() + s.size() <= n)
        .map(|(removed, added)| Node {
            state: &(&e.blue - &removed) + &added,
            parent: 0,
            removed,
            added,
        })
        .collect();
    let red: Vec<Node> = moves(h, &e.red, max, max)?
        .into_iter()
        .filter(|(z, r)| e.red.size() - z.size() + r.size() <= n)
        .map(|(removed, added)| Node {
            state: &(&e.red - &removed) + &added,
            parent: 0,
            removed,
            added,
        })
        .collect();
    if let Some((bi, ri, edge)) = shared_edge(&blue, &red) {
        let step = step_pair(e, &blue[bi], &red[ri])?;
        return Ok(done(Witness::Sequence {
            steps: vec![step],
            terminal: Terminal::SharedEdge { edge },
        }));
    }
    Ok(CertificateSearch {
        certificate: None,
        caps,
        truncated: false,
    })
}
