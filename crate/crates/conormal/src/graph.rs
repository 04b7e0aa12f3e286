//! Finite simple undirected graphs on dense vertex indices `0..n`.
//!
//! The adjacency matrix and the sorted edge list always describe the same
//! edge set; everything downstream (products, permutations, labelings)
//! identifies vertices and edges by index, so the representation is the
//! contract.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order must be at least 1")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("twin status requires two distinct vertices, got {0} twice")]
    InvalidPair(usize),
}

/// Named graph families used throughout the test corpora.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Path,
    Cycle,
    Complete,
}

/// Relation between the neighborhoods of two distinct vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwinStatus {
    /// Equal open neighborhoods (the vertices are non-adjacent).
    FalseTwins,
    /// Equal closed neighborhoods (the vertices are adjacent).
    TrueTwins,
    NotTwins,
}

/// A finite simple undirected graph.
///
/// Vertices are `0..n`. Edges are stored both as a flat adjacency matrix
/// and as the lexicographically sorted list of pairs `(u, v)` with `u < v`;
/// edge indices used by edge labelings refer to positions in that list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list, validating simplicity.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut adj = vec![false; n * n];
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange { vertex: a, order: n });
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange { vertex: b, order: n });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if adj[u * n + v] {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[u * n + v] = true;
            adj[v * n + u] = true;
            list.push((u, v));
        }
        list.sort_unstable();
        let mut degrees = vec![0usize; n];
        for &(u, v) in &list {
            degrees[u] += 1;
            degrees[v] += 1;
        }
        Ok(Graph { n, adj, edges: list, degrees })
    }

    /// The empty graph on `n` vertices.
    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, std::iter::empty())
    }

    /// Path, cycle, or complete graph of the given order.
    pub fn family(kind: FamilyKind, n: usize) -> Result<Self, GraphError> {
        match kind {
            FamilyKind::Path => {
                if n < 1 {
                    return Err(GraphError::InvalidFamily("path requires n >= 1".into()));
                }
                Graph::new(n, (1..n).map(|i| (i - 1, i)))
            }
            FamilyKind::Cycle => {
                if n < 3 {
                    return Err(GraphError::InvalidFamily(format!(
                        "cycle requires n >= 3, got {n}"
                    )));
                }
                Graph::new(n, (1..n).map(|i| (i - 1, i)).chain(std::iter::once((0, n - 1))))
            }
            FamilyKind::Complete => {
                if n < 1 {
                    return Err(GraphError::InvalidFamily("complete graph requires n >= 1".into()));
                }
                Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
        }
    }

    pub fn path(n: usize) -> Self {
        Graph::family(FamilyKind::Path, n).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        Graph::family(FamilyKind::Cycle, n).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        Graph::family(FamilyKind::Complete, n).unwrap()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Sorted edge list; `(u, v)` with `u < v`, lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Position of edge `(u, v)` in the sorted edge list, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    /// Open or closed neighborhood of `v`, as a sorted vertex list.
    pub fn neighborhood(&self, v: usize, closed: bool) -> Result<Vec<usize>, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, order: self.n });
        }
        let mut out: Vec<usize> = (0..self.n).filter(|&u| self.adjacent(v, u)).collect();
        if closed {
            out.push(v);
            out.sort_unstable();
        }
        Ok(out)
    }

    /// Complement graph: `u ~ v` iff `u != v` and not adjacent here.
    pub fn complement(&self) -> Graph {
        let edges = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.adjacent(u, v));
        Graph::new(self.n, edges).expect("complement of a valid graph is valid")
    }

    /// Equal open neighborhoods, ignoring the two vertices themselves.
    fn open_neighborhoods_equal(&self, u: usize, v: usize) -> bool {
        !self.adjacent(u, v)
            && (0..self.n)
                .filter(|&w| w != u && w != v)
                .all(|w| self.adjacent(u, w) == self.adjacent(v, w))
    }

    fn closed_neighborhoods_equal(&self, u: usize, v: usize) -> bool {
        self.adjacent(u, v)
            && (0..self.n)
                .filter(|&w| w != u && w != v)
                .all(|w| self.adjacent(u, w) == self.adjacent(v, w))
    }

    /// Classifies a pair of distinct vertices as false twins (equal open
    /// neighborhoods), true twins (equal closed neighborhoods), or neither.
    /// The two twin cases are mutually exclusive for distinct vertices.
    pub fn twin_status(&self, u: usize, v: usize) -> Result<TwinStatus, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u, order: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, order: self.n });
        }
        if u == v {
            return Err(GraphError::InvalidPair(u));
        }
        if self.open_neighborhoods_equal(u, v) {
            Ok(TwinStatus::FalseTwins)
        } else if self.closed_neighborhoods_equal(u, v) {
            Ok(TwinStatus::TrueTwins)
        } else {
            Ok(TwinStatus::NotTwins)
        }
    }

    /// True iff some pair of distinct vertices has equal open neighborhoods.
    pub fn has_false_twins(&self) -> bool {
        (0..self.n).any(|u| (u + 1..self.n).any(|v| self.open_neighborhoods_equal(u, v)))
    }

    /// Vertices adjacent to every other vertex.
    pub fn dominating_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degrees[v] == self.n - 1).collect()
    }

    pub fn has_dominating_vertex(&self) -> bool {
        (0..self.n).any(|v| self.degrees[v] == self.n - 1)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in 0..self.n {
                if self.adjacent(v, u) && !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// True iff `sub` has the same vertex set and every edge of `sub` is an
    /// edge of `self`, under the shared vertex indexing.
    pub fn is_spanning_subgraph_of(sub: &Graph, host: &Graph) -> bool {
        sub.n == host.n && sub.edges.iter().all(|&(u, v)| host.adjacent(u, v))
    }

    /// Removes a vertex and its edges, shifting higher indices down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, order: self.n });
        }
        if self.n == 1 {
            return Err(GraphError::EmptyGraph);
        }
        let shift = |w: usize| if w > v { w - 1 } else { w };
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (shift(a), shift(b)));
        Graph::new(self.n - 1, edges)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}
