//! JSON documents for hypergraphs, walks, binomials, bases and certificates.
//!
//! Every top-level document carries a `schema` tag. Edges are written by
//! name; on input an edge may be given by id, by name, or by its vertex
//! list (vertex ids or labels). Repeated entries encode multiplicity.

use serde::{Deserialize, Serialize};

use crate::balanced::{BalancedEdgeSet, Binomial};
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::hypergraph::Hypergraph;
use crate::multiset::Multiset;
use crate::poly::{Polynomial, Term};
use crate::splitting::{
    check_decomposition, Decomposition, DegreeCertificate, Rule, SeparatorKind, SplitCaps,
    SplitSearch, SplittingSet, Step, Terminal, Verdict, Witness,
};
use crate::toric::{GraverBasis, MarkovBasis};

pub const SCHEMA_HYPERGRAPH: &str = "hypergraph";
pub const SCHEMA_WALK: &str = "walk";
pub const SCHEMA_BINOMIAL: &str = "binomial";
pub const SCHEMA_BASIS: &str = "basis";
pub const SCHEMA_CERTIFICATE: &str = "certificate";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Id(usize),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeRef {
    Id(usize),
    Name(String),
    Vertices(Vec<VertexRef>),
}

fn resolve_vertex(h: &Hypergraph, v: &VertexRef) -> Result<usize> {
    match v {
        VertexRef::Id(i) if *i < h.n_vertices() => Ok(*i),
        VertexRef::Id(i) => Err(Error::InvalidVertex {
            vertex: *i,
            n_vertices: h.n_vertices(),
        }),
        VertexRef::Label(l) => h
            .vertex_by_label(l)
            .or_else(|| l.parse().ok().filter(|&i| i < h.n_vertices()))
            .ok_or_else(|| Error::Json(format!("unknown vertex label {l:?}"))),
    }
}

/// Resolves one edge reference against `h`.
pub fn resolve_edge(h: &Hypergraph, r: &EdgeRef) -> Result<usize> {
    match r {
        EdgeRef::Id(i) if *i < h.n_edges() => Ok(*i),
        EdgeRef::Id(i) => Err(Error::UnknownEdge(*i)),
        EdgeRef::Name(n) => h
            .edge_by_name(n)
            .ok_or_else(|| Error::Json(format!("unknown edge name {n:?}"))),
        EdgeRef::Vertices(vs) => {
            let mut v = vs
                .iter()
                .map(|x| resolve_vertex(h, x))
                .collect::<Result<Vec<_>>>()?;
            v.sort_unstable();
            h.edge_id(&v)
                .ok_or_else(|| Error::Json(format!("vertex set {v:?} is not an edge")))
        }
    }
}

pub fn decode_edges(h: &Hypergraph, refs: &[EdgeRef]) -> Result<Multiset> {
    refs.iter().map(|r| resolve_edge(h, r)).collect()
}

/// Edge names of `m` in id order, repeated by multiplicity.
pub fn encode_edges(h: &Hypergraph, m: &Multiset) -> Vec<EdgeRef> {
    m.elements()
        .map(|e| EdgeRef::Name(h.edge_name(e)))
        .collect()
}

fn schema_tag(s: &str) -> String {
    s.to_string()
}

fn expect_schema(found: &str, want: &str) -> Result<()> {
    if found != want {
        return Err(Error::Json(format!(
            "expected schema {want:?}, found {found:?}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphDoc {
    pub schema: String,
    pub n_vertices: usize,
    pub edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
}

impl HypergraphDoc {
    pub fn new(h: &Hypergraph, family: Option<FamilySpec>) -> Self {
        Self {
            schema: schema_tag(SCHEMA_HYPERGRAPH),
            n_vertices: h.n_vertices(),
            edges: h.edges().to_vec(),
            vertex_labels: h.vertex_labels().map(<[String]>::to_vec),
            edge_names: h.edge_names().map(<[String]>::to_vec),
            partition: h.partition().map(<[Vec<usize>]>::to_vec),
            family,
        }
    }

    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        expect_schema(&self.schema, SCHEMA_HYPERGRAPH)?;
        let mut h = Hypergraph::new(self.n_vertices, self.edges.clone())?;
        if let Some(l) = &self.vertex_labels {
            h = h.with_vertex_labels(l.clone())?;
        }
        if let Some(n) = &self.edge_names {
            h = h.with_edge_names(n.clone())?;
        }
        if let Some(p) = &self.partition {
            h = h.with_partition(p.clone())?;
        }
        Ok(h)
    }
}

/// Two colors of edge references.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sides {
    pub blue: Vec<EdgeRef>,
    pub red: Vec<EdgeRef>,
}

impl Sides {
    pub fn encode(h: &Hypergraph, w: &BalancedEdgeSet) -> Self {
        Self {
            blue: encode_edges(h, &w.blue),
            red: encode_edges(h, &w.red),
        }
    }

    pub fn decode(&self, h: &Hypergraph) -> Result<BalancedEdgeSet> {
        Ok(BalancedEdgeSet::new(
            decode_edges(h, &self.blue)?,
            decode_edges(h, &self.red)?,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkDoc {
    pub schema: String,
    #[serde(flatten)]
    pub sides: Sides,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypergraph: Option<HypergraphDoc>,
}

impl WalkDoc {
    pub fn new(h: &Hypergraph, w: &BalancedEdgeSet, embed: Option<HypergraphDoc>) -> Self {
        Self {
            schema: schema_tag(SCHEMA_WALK),
            sides: Sides::encode(h, w),
            hypergraph: embed,
        }
    }

    pub fn decode(&self, h: &Hypergraph) -> Result<BalancedEdgeSet> {
        expect_schema(&self.schema, SCHEMA_WALK)?;
        self.sides.decode(h)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialDoc {
    pub schema: String,
    pub plus: Vec<EdgeRef>,
    pub minus: Vec<EdgeRef>,
    #[serde(default)]
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub display: Option<String>,
}

impl BinomialDoc {
    pub fn new(h: &Hypergraph, b: &Binomial) -> Self {
        Self {
            schema: schema_tag(SCHEMA_BINOMIAL),
            plus: encode_edges(h, b.plus()),
            minus: encode_edges(h, b.minus()),
            degree: b.degree(),
            display: Some(b.display(h)),
        }
    }

    /// The reduced binomial `plus - minus`.
    pub fn decode(&self, h: &Hypergraph) -> Result<Binomial> {
        expect_schema(&self.schema, SCHEMA_BINOMIAL)?;
        Binomial::new(
            h,
            decode_edges(h, &self.plus)?,
            decode_edges(h, &self.minus)?,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Markov,
    Graver,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub schema: String,
    pub kind: BasisKind,
    pub degree_cap: usize,
    pub complete_to_degree: usize,
    pub incomplete: bool,
    pub max_degree: usize,
    pub count: usize,
    pub elements: Vec<BinomialDoc>,
}

impl BasisDoc {
    pub fn markov(h: &Hypergraph, b: &MarkovBasis, cap: usize) -> Self {
        Self {
            schema: schema_tag(SCHEMA_BASIS),
            kind: BasisKind::Markov,
            degree_cap: cap,
            complete_to_degree: b.complete_to_degree,
            incomplete: b.incomplete,
            max_degree: b.max_degree,
            count: b.elements.len(),
            elements: b.elements.iter().map(|e| BinomialDoc::new(h, e)).collect(),
        }
    }

    pub fn graver(h: &Hypergraph, b: &GraverBasis, cap: usize) -> Self {
        Self {
            schema: schema_tag(SCHEMA_BASIS),
            kind: BasisKind::Graver,
            degree_cap: cap,
            complete_to_degree: b.complete_to_degree,
            incomplete: false,
            max_degree: b.max_degree,
            count: b.elements.len(),
            elements: b.elements.iter().map(|e| BinomialDoc::new(h, e)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub gamma1: Sides,
    pub separator: Vec<EdgeRef>,
    pub gamma2: Sides,
    pub kind: SeparatorKind,
}

impl DecompositionDoc {
    pub fn encode(h: &Hypergraph, d: &Decomposition) -> Self {
        Self {
            gamma1: Sides::encode(h, &d.gamma1),
            separator: encode_edges(h, &d.separator),
            gamma2: Sides::encode(h, &d.gamma2),
            kind: d.kind,
        }
    }

    /// Decodes without reclassifying; the recorded kind is kept so that
    /// verification can compare it.
    pub fn decode(&self, h: &Hypergraph) -> Result<Decomposition> {
        Ok(Decomposition {
            gamma1: self.gamma1.decode(h)?,
            separator: decode_edges(h, &self.separator)?,
            gamma2: self.gamma2.decode(h)?,
            kind: self.kind,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub cofactor: Vec<EdgeRef>,
    pub plus: Vec<EdgeRef>,
    pub minus: Vec<EdgeRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub display: Option<String>,
}

impl TermDoc {
    pub fn encode(h: &Hypergraph, t: &Term) -> Self {
        Self {
            cofactor: encode_edges(h, &t.cofactor),
            plus: encode_edges(h, &t.plus),
            minus: encode_edges(h, &t.minus),
            display: Some(t.display(h).to_string()),
        }
    }

    pub fn decode(&self, h: &Hypergraph) -> Result<Term> {
        Ok(Term::new(
            decode_edges(h, &self.cofactor)?,
            decode_edges(h, &self.plus)?,
            decode_edges(h, &self.minus)?,
        ))
    }
}

fn encode_terms(h: &Hypergraph, terms: &[Term]) -> Vec<TermDoc> {
    terms.iter().map(|t| TermDoc::encode(h, t)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub blue: DecompositionDoc,
    pub red: DecompositionDoc,
    pub walk: Sides,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TerminalDoc {
    SharedEdge { edge: EdgeRef },
    ProperSplit { decomposition: DecompositionDoc },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum WitnessDoc {
    #[serde(rename = "condition_i")]
    Split { decomposition: DecompositionDoc },
    #[serde(rename = "condition_ii")]
    Sequence {
        steps: Vec<StepDoc>,
        terminal: TerminalDoc,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCertificateDoc {
    pub rule: Rule,
    pub walk: Sides,
    pub witness: WitnessDoc,
}

impl DegreeCertificateDoc {
    pub fn encode(h: &Hypergraph, c: &DegreeCertificate) -> Self {
        let witness = match &c.witness {
            Witness::Split { decomposition } => WitnessDoc::Split {
                decomposition: DecompositionDoc::encode(h, decomposition),
            },
            Witness::Sequence { steps, terminal } => WitnessDoc::Sequence {
                steps: steps
                    .iter()
                    .map(|s| StepDoc {
                        blue: DecompositionDoc::encode(h, &s.blue),
                        red: DecompositionDoc::encode(h, &s.red),
                        walk: Sides::encode(h, &s.walk),
                    })
                    .collect(),
                terminal: match terminal {
                    Terminal::SharedEdge { edge } => TerminalDoc::SharedEdge {
                        edge: EdgeRef::Name(h.edge_name(*edge)),
                    },
                    Terminal::ProperSplit { decomposition } => TerminalDoc::ProperSplit {
                        decomposition: DecompositionDoc::encode(h, decomposition),
                    },
                },
            },
        };
        Self {
            rule: c.rule,
            walk: Sides::encode(h, &c.walk),
            witness,
        }
    }

    pub fn decode(&self, h: &Hypergraph) -> Result<DegreeCertificate> {
        let witness = match &self.witness {
            WitnessDoc::Split { decomposition } => Witness::Split {
                decomposition: decomposition.decode(h)?,
            },
            WitnessDoc::Sequence { steps, terminal } => Witness::Sequence {
                steps: steps
                    .iter()
                    .map(|s| {
                        Ok(Step {
                            blue: s.blue.decode(h)?,
                            red: s.red.decode(h)?,
                            walk: s.walk.decode(h)?,
                        })
                    })
                    .collect::<Result<_>>()?,
                terminal: match terminal {
                    TerminalDoc::SharedEdge { edge } => Terminal::SharedEdge {
                        edge: resolve_edge(h, edge)?,
                    },
                    TerminalDoc::ProperSplit { decomposition } => Terminal::ProperSplit {
                        decomposition: decomposition.decode(h)?,
                    },
                },
            },
        };
        Ok(DegreeCertificate {
            rule: self.rule,
            walk: self.walk.decode(h)?,
            witness,
        })
    }
}

/// One splitting set with its decomposition and rewriting identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundDoc {
    pub splitting_set: Vec<EdgeRef>,
    pub decomposition: DecompositionDoc,
    pub identity: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateBody {
    /// Output of a splitting-set search.
    SplittingSets {
        walk: Sides,
        caps: SplitCaps,
        exhaustive: bool,
        found: Vec<FoundDoc>,
    },
    /// A degree certificate, or its absence under the recorded caps.
    Degree {
        walk: Sides,
        caps: serde_json::Value,
        truncated: bool,
        certificate: Option<Box<DegreeCertificateDoc>>,
        identity: Vec<TermDoc>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub schema: String,
    pub hypergraph: HypergraphDoc,
    #[serde(flatten)]
    pub body: CertificateBody,
}

impl CertificateDoc {
    pub fn splitting_sets(h: &Hypergraph, w: &BalancedEdgeSet, search: &SplitSearch) -> Self {
        let found = search
            .found
            .iter()
            .map(|SplittingSet { set, decomposition }| FoundDoc {
                splitting_set: encode_edges(h, set),
                decomposition: DecompositionDoc::encode(h, decomposition),
                identity: encode_terms(h, &crate::splitting::decomposition_identity(decomposition)),
            })
            .collect();
        Self {
            schema: schema_tag(SCHEMA_CERTIFICATE),
            hypergraph: HypergraphDoc::new(h, None),
            body: CertificateBody::SplittingSets {
                walk: Sides::encode(h, w),
                caps: search.caps,
                exhaustive: search.exhaustive,
                found,
            },
        }
    }

    pub fn degree<C: Serialize>(
        h: &Hypergraph,
        w: &BalancedEdgeSet,
        caps: &C,
        truncated: bool,
        cert: Option<&DegreeCertificate>,
    ) -> Result<Self> {
        Ok(Self {
            schema: schema_tag(SCHEMA_CERTIFICATE),
            hypergraph: HypergraphDoc::new(h, None),
            body: CertificateBody::Degree {
                walk: Sides::encode(h, w),
                caps: serde_json::to_value(caps)?,
                truncated,
                certificate: cert.map(|c| Box::new(DegreeCertificateDoc::encode(h, c))),
                identity: cert
                    .map(|c| encode_terms(h, &c.identity()))
                    .unwrap_or_default(),
            },
        })
    }

    /// Re-checks every decomposition and replays every recorded identity.
    /// A degree document without a certificate has nothing to verify and
    /// fails.
    pub fn verify(&self) -> Result<()> {
        expect_schema(&self.schema, SCHEMA_CERTIFICATE)?;
        let h = self.hypergraph.to_hypergraph()?;
        let replay = |w: &BalancedEdgeSet, terms: &[TermDoc]| -> Result<()> {
            let terms = terms
                .iter()
                .map(|t| t.decode(&h))
                .collect::<Result<Vec<_>>>()?;
            if Polynomial::from_terms(&terms) != w.polynomial() {
                return Err(Error::InvalidDecomposition(
                    "recorded identity does not expand to f(W)".into(),
                ));
            }
            Ok(())
        };
        match &self.body {
            CertificateBody::SplittingSets { walk, found, .. } => {
                let w = walk.decode(&h)?;
                w.check_balanced(&h)?;
                for f in found {
                    let s = decode_edges(&h, &f.splitting_set)?;
                    let d = f.decomposition.decode(&h)?;
                    if d.separator != s {
                        return Err(Error::InvalidDecomposition(
                            "splitting set differs from the separator".into(),
                        ));
                    }
                    if let Verdict::Invalid(r) =
                        check_decomposition(&h, &w.add_splitting(&h, &s)?, &d)
                    {
                        return Err(Error::InvalidDecomposition(r));
                    }
                    replay(&w, &f.identity)?;
                }
                Ok(())
            }
            CertificateBody::Degree {
                walk,
                certificate,
                identity,
                ..
            } => {
                let doc = certificate.as_ref().ok_or_else(|| {
                    Error::InvalidDecomposition("no certificate was found".into())
                })?;
                let c = doc.decode(&h)?;
                if c.walk != walk.decode(&h)? {
                    return Err(Error::InvalidDecomposition(
                        "certificate walk differs from the document walk".into(),
                    ));
                }
                c.verify(&h)?;
                replay(&c.walk, identity)
            }
        }
    }
}

/// Parses any document and returns its schema tag.
pub fn schema_of(value: &serde_json::Value) -> Option<&str> {
    value.get("schema")?.as_str()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{group_based_16, group_based_walk};
    use crate::splitting::{find_splitting_sets, SplitCaps};

    #[test]
    fn edge_refs() {
        let h = group_based_16();
        let refs: Vec<EdgeRef> =
            serde_json::from_str(r#"[0, "e122", ["x1", "y3", "z3"], [0, 4, 8]]"#).unwrap();
        let m = decode_edges(&h, &refs).unwrap();
        assert_eq!(m, Multiset::from_pairs([(0, 2), (1, 1), (2, 1)]));
        assert!(decode_edges(&h, &[EdgeRef::Name("e999".into())]).is_err());
    }

    #[test]
    fn hypergraph_round_trip() {
        let h = group_based_16();
        let doc = HypergraphDoc::new(&h, Some(FamilySpec::Groupbased16));
        let text = serde_json::to_string(&doc).unwrap();
        let back: HypergraphDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_hypergraph().unwrap(), h);
    }

    #[test]
    fn splitting_certificate_round_trip() {
        let h = group_based_16();
        let w = group_based_walk(&h);
        let search = find_splitting_sets(&h, &w, SplitCaps::new(2, 1)).unwrap();
        let doc = CertificateDoc::splitting_sets(&h, &w, &search);
        doc.verify().unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        let mut back: CertificateDoc = serde_json::from_str(&text).unwrap();
        back.verify().unwrap();
        if let CertificateBody::SplittingSets { found, .. } = &mut back.body {
            found[0].decomposition.gamma1.blue[0] = EdgeRef::Name("e414".into());
        }
        assert!(back.verify().is_err());
    }
}
