//! Shared fixtures for the benchmarks.

use hypertoric::families::{
    complete_kpartite, cumulant_hypergraph, group_based_16, group_based_walk, no_three_way,
};
use hypertoric::{BalancedEdgeSet, Hypergraph};

/// Hosts for basis computations, with a degree cap that keeps each run short.
pub fn basis_hosts() -> Vec<(&'static str, Hypergraph, usize)> {
    vec![
        ("no3way_2x2x2", no_three_way(2, 2, 2).unwrap(), 6),
        ("kpartite_2x3", complete_kpartite(2, 3).unwrap(), 4),
        ("kpartite_3x2", complete_kpartite(3, 2).unwrap(), 4),
        ("cumulant_4", cumulant_hypergraph(4, false).unwrap(), 5),
        ("cumulant_5", cumulant_hypergraph(5, false).unwrap(), 4),
    ]
}

/// The hexagon `x0y0 x1y1 x2y2 - x0y1 x1y2 x2y0` on `K_{3,3}`.
pub fn k33_hexagon() -> (Hypergraph, BalancedEdgeSet) {
    (
        complete_kpartite(2, 3).unwrap(),
        BalancedEdgeSet::from_edges(&[0, 4, 8], &[1, 5, 6]),
    )
}

pub fn group_based() -> (Hypergraph, BalancedEdgeSet) {
    let h = group_based_16();
    let w = group_based_walk(&h);
    (h, w)
}
