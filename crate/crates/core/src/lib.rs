//! Exact combinatorics of toric ideals of hypergraphs.
//!
//! A hypergraph `H` defines the monomial map `t_e -> prod_{v in e} x_v`; its
//! kernel `I_H` is generated by binomials that correspond to *balanced edge
//! sets*: bicolored edge multisets in which every vertex sees as many blue as
//! red edges. This crate works with those objects directly:
//!
//! - [`multiset`]: multiset algebra (union, intersection, difference, sum).
//! - [`hypergraph`]: simple hypergraphs and their incidence matrices.
//! - [`balanced`]: balanced edge sets, binomials, primitivity, `E + S`.
//! - [`toric`]: fibers, Graver bases, minimal Markov bases, indispensability.
//! - [`splitting`]: decompositions, splitting sets, rewriting identities and
//!   degree certificates.
//! - [`families`]: the named hypergraph and walk families (independence
//!   models, no-3-way interaction, cumulant hypergraphs, ...).
//! - [`io`]: the JSON documents exchanged by the command-line tool.
//!
//! Every search is exact and bounded by explicit caps; results that depend on
//! a cap say so.

pub mod balanced;
pub mod error;
pub mod families;
pub mod hypergraph;
pub mod io;
pub mod multiset;
pub mod poly;
pub mod splitting;
pub mod toric;

mod search;

pub use balanced::{BalancedEdgeSet, Binomial};
pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, IncidenceMatrix};
pub use multiset::{Containment, Multiset};
pub use poly::{Polynomial, Term};
pub use splitting::{
    CertificateCaps, Decomposition, DegreeCertificate, SeparatorKind, SplitCaps, Verdict,
};
pub use toric::{Fiber, GraverBasis, MarkovBasis, TieBreak};

/// A monomial in the edge variables `t_e`, identified with its multiset of
/// edges.
pub type Monomial = Multiset;
