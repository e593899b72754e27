//! Simple hypergraphs on dense vertex ids and the incidence matrix of the
//! monomial map `t_e -> x^e`.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::multiset::Multiset;

/// A simple hypergraph on vertices `0..n_vertices`.
///
/// Edges are stored as sorted vertex lists; the edge id is the position in
/// the edge list. Vertex labels, edge names and a vertex partition are
/// optional metadata and never influence the algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n_vertices: usize,
    edges: Vec<Vec<usize>>,
    vertex_labels: Option<Vec<String>>,
    edge_names: Option<Vec<String>>,
    partition: Option<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
    incident: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge. Rejects empty edges, repeated
    /// vertices inside an edge, out-of-range vertices and duplicate edges.
    pub fn new(n_vertices: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut index = HashMap::with_capacity(edges.len());
        let mut incident = vec![Vec::new(); n_vertices];
        let mut sorted_edges = Vec::with_capacity(edges.len());
        for (id, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            if e.is_empty() {
                return Err(Error::InvalidHypergraph(format!("edge {id} is empty")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {id} repeats a vertex"
                )));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::InvalidVertex {
                    vertex: v,
                    n_vertices,
                });
            }
            if let Some(prev) = index.insert(e.clone(), id) {
                return Err(Error::InvalidHypergraph(format!(
                    "edges {prev} and {id} are equal; hypergraphs must be simple"
                )));
            }
            for &v in &e {
                incident[v].push(id);
            }
            sorted_edges.push(e);
        }
        Ok(Self {
            n_vertices,
            edges: sorted_edges,
            vertex_labels: None,
            edge_names: None,
            partition: None,
            index,
            incident,
        })
    }

    pub fn with_vertex_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n_vertices {
            return Err(Error::InvalidHypergraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n_vertices
            )));
        }
        self.vertex_labels = Some(labels);
        Ok(self)
    }

    pub fn with_edge_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.edges.len() {
            return Err(Error::InvalidHypergraph(format!(
                "{} names for {} edges",
                names.len(),
                self.edges.len()
            )));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::InvalidHypergraph(
                "edge names must be distinct".into(),
            ));
        }
        self.edge_names = Some(names);
        Ok(self)
    }

    /// Attaches a vertex partition after checking that it is one.
    pub fn with_partition(mut self, blocks: Vec<Vec<usize>>) -> Result<Self> {
        self.check_partition(&blocks)?;
        self.partition = Some(blocks);
        Ok(self)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<&[usize]> {
        self.edges
            .get(id)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownEdge(id))
    }

    /// The id of the edge with exactly these vertices, in any order.
    pub fn edge_id(&self, vertices: &[usize]) -> Option<usize> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }

    /// Edge ids containing `v`, in increasing order.
    pub fn incident_edges(&self, v: usize) -> Result<&[usize]> {
        self.incident
            .get(v)
            .map(Vec::as_slice)
            .ok_or(Error::InvalidVertex {
                vertex: v,
                n_vertices: self.n_vertices,
            })
    }

    pub fn vertex_labels(&self) -> Option<&[String]> {
        self.vertex_labels.as_deref()
    }

    pub fn edge_names(&self) -> Option<&[String]> {
        self.edge_names.as_deref()
    }

    pub fn partition(&self) -> Option<&[Vec<usize>]> {
        self.partition.as_deref()
    }

    pub fn vertex_label(&self, v: usize) -> String {
        match &self.vertex_labels {
            Some(l) if v < l.len() => l[v].clone(),
            _ => v.to_string(),
        }
    }

    /// The display name of an edge: its given name, or `e<id>`.
    pub fn edge_name(&self, id: usize) -> String {
        match &self.edge_names {
            Some(n) if id < n.len() => n[id].clone(),
            _ => format!("e{id}"),
        }
    }

    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        match &self.edge_names {
            Some(names) => names.iter().position(|n| n == name),
            None => name
                .strip_prefix('e')?
                .parse()
                .ok()
                .filter(|&i| i < self.n_edges()),
        }
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.vertex_labels.as_ref()?.iter().position(|l| l == label)
    }

    /// `deg(v; H)`: the number of edges containing `v`.
    pub fn degree(&self, v: usize) -> Result<usize> {
        self.incident_edges(v).map(<[usize]>::len)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incident.iter().map(Vec::len).collect()
    }

    /// `Some(k)` when every edge has exactly `k` vertices; `None` for mixed
    /// sizes and for the edgeless hypergraph.
    pub fn is_uniform(&self) -> Option<usize> {
        let k = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == k).then_some(k)
    }

    pub fn min_edge_size(&self) -> Option<usize> {
        self.edges.iter().map(Vec::len).min()
    }

    fn check_partition(&self, blocks: &[Vec<usize>]) -> Result<()> {
        let mut seen = vec![false; self.n_vertices];
        for block in blocks {
            for &v in block {
                if v >= self.n_vertices {
                    return Err(Error::MalformedPartition(format!(
                        "vertex {v} is out of range"
                    )));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::MalformedPartition(format!(
                        "vertex {v} lies in two blocks"
                    )));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedPartition(format!(
                "vertex {v} is in no block"
            )));
        }
        Ok(())
    }

    /// True iff every edge meets every block in exactly one vertex.
    pub fn is_kpartite(&self, blocks: &[Vec<usize>]) -> Result<bool> {
        self.check_partition(blocks)?;
        let mut block_of = vec![0; self.n_vertices];
        for (b, block) in blocks.iter().enumerate() {
            for &v in block {
                block_of[v] = b;
            }
        }
        Ok(self.edges.iter().all(|e| {
            let mut hits = vec![0u32; blocks.len()];
            for &v in e {
                hits[block_of[v]] += 1;
            }
            hits.iter().all(|&h| h == 1)
        }))
    }

    /// True iff every vertex of `V`, isolated ones included, has degree `r`.
    pub fn is_regular(&self, r: usize) -> bool {
        self.incident.iter().all(|inc| inc.len() == r)
    }

    /// True iff every vertex lying in some edge has degree `r`.
    pub fn is_regular_on_covered(&self, r: usize) -> bool {
        self.incident
            .iter()
            .all(|inc| inc.is_empty() || inc.len() == r)
    }

    /// The edges contained in `w`, on the vertex set `w` renumbered in
    /// increasing order. Labels, edge names and the partition are carried
    /// over; partition blocks that become empty are dropped.
    pub fn induced_subhypergraph(&self, w: &[usize]) -> Result<Self> {
        let keep: BTreeSet<usize> = w.iter().copied().collect();
        if let Some(&v) = keep.iter().find(|&&v| v >= self.n_vertices) {
            return Err(Error::InvalidVertex {
                vertex: v,
                n_vertices: self.n_vertices,
            });
        }
        let mut renumber = vec![usize::MAX; self.n_vertices];
        for (new, &old) in keep.iter().enumerate() {
            renumber[old] = new;
        }
        let mut edges = Vec::new();
        let mut names = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if e.iter().all(|v| keep.contains(v)) {
                edges.push(e.iter().map(|&v| renumber[v]).collect());
                names.push(self.edge_name(id));
            }
        }
        let mut sub = Self::new(keep.len(), edges)?;
        if let Some(labels) = &self.vertex_labels {
            sub = sub.with_vertex_labels(keep.iter().map(|&v| labels[v].clone()).collect())?;
        }
        if self.edge_names.is_some() {
            sub = sub.with_edge_names(names)?;
        }
        if let Some(blocks) = &self.partition {
            let blocks: Vec<Vec<usize>> = blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .filter(|v| keep.contains(v))
                        .map(|&v| renumber[v])
                        .collect()
                })
                .filter(|b: &Vec<usize>| !b.is_empty())
                .collect();
            sub = sub.with_partition(blocks)?;
        }
        Ok(sub)
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut entries = vec![vec![0u8; self.n_edges()]; self.n_vertices];
        for (j, e) in self.edges.iter().enumerate() {
            for &v in e {
                entries[v][j] = 1;
            }
        }
        IncidenceMatrix { entries }
    }

    /// `A·u`: the vertex-degree vector of a multiset of edges.
    pub fn degree_vector(&self, edges: &Multiset) -> Result<Vec<u32>> {
        let mut deg = vec![0u32; self.n_vertices];
        for (e, k) in edges.iter() {
            for &v in self.edge(e)? {
                deg[v] += k;
            }
        }
        Ok(deg)
    }

    /// Checks that every element of `m` is an edge id.
    pub fn check_edges(&self, m: &Multiset) -> Result<()> {
        match m.support().find(|&e| e >= self.n_edges()) {
            Some(e) => Err(Error::UnknownEdge(e)),
            None => Ok(()),
        }
    }
}

/// The 0/1 vertex-by-edge matrix of a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    entries: Vec<Vec<u8>>,
}

impl IncidenceMatrix {
    pub fn n_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn n_cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn get(&self, vertex: usize, edge: usize) -> u8 {
        self.entries[vertex][edge]
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.entries
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| x as usize).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.n_cols())
            .map(|j| self.entries.iter().map(|r| r[j] as usize).sum())
            .collect()
    }

    /// The matrix-vector product with an exponent vector over edges.
    pub fn apply(&self, u: &[u32]) -> Vec<u32> {
        self.entries
            .iter()
            .map(|r| r.iter().zip(u).map(|(&a, &x)| a as u32 * x).sum())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn rejects_non_simple_and_bad_edges() {
        assert!(Hypergraph::new(3, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![1, 1]]).is_err());
        assert_eq!(
            Hypergraph::new(2, vec![vec![0, 2]]).unwrap_err(),
            Error::InvalidVertex {
                vertex: 2,
                n_vertices: 2
            }
        );
    }

    #[test]
    fn degrees() {
        let h = Hypergraph::new(3, vec![vec![0, 1]]).unwrap();
        assert_eq!(h.degree(0).unwrap(), 1);
        assert_eq!(h.degree(2).unwrap(), 0);
        assert!(h.degree(3).is_err());
    }

    #[test]
    fn uniformity() {
        assert_eq!(triangle().is_uniform(), Some(2));
        assert_eq!(Hypergraph::new(4, vec![]).unwrap().is_uniform(), None);
        let mixed = Hypergraph::new(3, vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(mixed.is_uniform(), None);
    }

    #[test]
    fn kpartite() {
        let k22 = Hypergraph::new(4, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]).unwrap();
        assert!(k22.is_kpartite(&[vec![0, 1], vec![2, 3]]).unwrap());
        // Each 2-partition of a triangle leaves some edge inside one block.
        let t = triangle();
        for blocks in [
            vec![vec![0], vec![1, 2]],
            vec![vec![1], vec![0, 2]],
            vec![vec![2], vec![0, 1]],
            vec![vec![], vec![0, 1, 2]],
        ] {
            assert!(!t.is_kpartite(&blocks).unwrap());
        }
        assert!(matches!(
            t.is_kpartite(&[vec![0, 1], vec![1, 2]]),
            Err(Error::MalformedPartition(_))
        ));
        assert!(matches!(
            t.is_kpartite(&[vec![0, 1]]),
            Err(Error::MalformedPartition(_))
        ));
    }

    #[test]
    fn regularity() {
        let single = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        assert!(single.is_regular(1));
        let path = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(!path.is_regular(2));
        let isolated = Hypergraph::new(3, vec![vec![0, 1]]).unwrap();
        assert!(!isolated.is_regular(1));
        assert!(isolated.is_regular_on_covered(1));
    }

    #[test]
    fn induced() {
        let t = triangle();
        let sub = t.induced_subhypergraph(&[0, 1]).unwrap();
        assert_eq!(sub.n_vertices(), 2);
        assert_eq!(sub.edges(), &[vec![0, 1]]);
        assert_eq!(t.induced_subhypergraph(&[0, 1, 2]).unwrap(), t);
    }

    #[test]
    fn incidence() {
        let h = Hypergraph::new(3, vec![vec![0, 1]]).unwrap();
        let a = h.incidence_matrix();
        assert_eq!((a.get(0, 0), a.get(1, 0), a.get(2, 0)), (1, 1, 0));
        let k22 = Hypergraph::new(4, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]).unwrap();
        let a = k22.incidence_matrix();
        assert_eq!((a.n_rows(), a.n_cols()), (4, 4));
        assert_eq!(a.col_sums(), vec![2; 4]);
        assert_eq!(a.row_sums(), k22.degrees());
        assert_eq!(a.apply(&[1, 0, 0, 1]), vec![1, 1, 1, 1]);
    }

    #[test]
    fn names() {
        let t = triangle()
            .with_edge_names(vec!["a".into(), "b".into(), "c".into()])
            .unwrap();
        assert_eq!(t.edge_by_name("b"), Some(1));
        assert_eq!(triangle().edge_by_name("e2"), Some(2));
        assert_eq!(triangle().edge_by_name("e3"), None);
        assert_eq!(t.edge_id(&[2, 1]), Some(1));
    }
}
