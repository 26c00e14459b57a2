//! Immutable simple graphs stored as adjacency bitsets.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vertex_set::{VertexSet, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    IndexOutOfRange { u: usize, v: usize, n: usize },
    #[error("bad family parameters: {0}")]
    BadParams(String),
    #[error("operation requires a graph with at least one vertex")]
    EmptyGraph,
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

/// Named standard graphs with canonical labelings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphFamily {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Empty(usize),
}

/// The induced-subgraph shapes the solvers maximise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Forest,
    LinearForest,
    InducedPath,
}

impl Shape {
    pub const ALL: [Shape; 3] = [Shape::Forest, Shape::LinearForest, Shape::InducedPath];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Forest => "forest",
            Shape::LinearForest => "linear_forest",
            Shape::InducedPath => "induced_path",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Graph {
    /// Builds a graph from an edge list. Repeated pairs collapse to one edge.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::IndexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    /// Builds a graph directly from adjacency rows, checking every invariant.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let all = VertexSet::full(n);
        for (u, row) in adj.iter().enumerate() {
            if row.contains(u) {
                return Err(GraphError::SelfLoop(u));
            }
            if !row.is_subset(all) {
                let v = row.difference(all).first().unwrap_or(n);
                return Err(GraphError::IndexOutOfRange { u, v, n });
            }
            for v in row.iter() {
                if !adj[v].contains(u) {
                    return Err(GraphError::BadParams(format!(
                        "asymmetric adjacency between {u} and {v}"
                    )));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    pub fn standard(family: GraphFamily) -> Result<Self, GraphError> {
        let bad = |msg: &str| Err(GraphError::BadParams(format!("{family:?}: {msg}")));
        match family {
            GraphFamily::Path(n) => {
                if n == 0 {
                    return bad("order must be at least 1");
                }
                let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
                Graph::new(n, &edges)
            }
            GraphFamily::Cycle(n) => {
                if n < 3 {
                    return bad("a cycle needs at least 3 vertices");
                }
                let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
                Graph::new(n, &edges)
            }
            GraphFamily::Complete(n) => {
                if n == 0 {
                    return bad("order must be at least 1");
                }
                let mut edges = Vec::new();
                for v in 1..n {
                    for u in 0..v {
                        edges.push((u, v));
                    }
                }
                Graph::new(n, &edges)
            }
            GraphFamily::CompleteBipartite(a, b) => {
                if a == 0 || b == 0 {
                    return bad("both parts must be non-empty");
                }
                let mut edges = Vec::with_capacity(a * b);
                for u in 0..a {
                    for v in a..a + b {
                        edges.push((u, v));
                    }
                }
                Graph::new(a + b, &edges)
            }
            GraphFamily::Empty(n) => {
                if n == 0 {
                    return bad("order must be at least 1");
                }
                Graph::empty(n)
            }
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for v in 0..self.n {
            for u in self.adj[v].iter().take_while(|&u| u < v) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let all = VertexSet::full(self.n);
        let adj = (0..self.n)
            .map(|v| all.difference(self.adj[v]).without(v))
            .collect();
        Graph { n: self.n, adj }
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// `Some(r)` when every vertex has degree `r`.
    pub fn regularity(&self) -> Result<Option<usize>, GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let r = self.degree(0);
        Ok((1..self.n).all(|v| self.degree(v) == r).then_some(r))
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).max()
    }

    /// Number of neighbours of `v` inside `s`.
    #[inline]
    pub fn degree_in(&self, v: usize, s: VertexSet) -> usize {
        self.adj[v].intersection(s).len()
    }

    pub fn induced_size(&self, s: VertexSet) -> usize {
        s.iter().map(|v| self.degree_in(v, s)).sum::<usize>() / 2
    }

    /// The connected component of `v` in the subgraph induced by `within`.
    pub fn component_within(&self, v: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier.iter() {
                next = next.union(self.adj[u]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Components of the subgraph induced by `s`, ordered by smallest member.
    pub fn components_within(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.component_within(v, s);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_within(0, self.vertices()) == self.vertices()
    }

    /// Tests whether `s` induces a subgraph of the requested shape.
    ///
    /// The empty set is a forest and a linear forest but not an induced path.
    pub fn shape_check(&self, s: VertexSet, shape: Shape) -> bool {
        debug_assert!(s.is_subset(self.vertices()));
        let comps = self.components_within(s).len();
        let acyclic = self.induced_size(s) + comps == s.len();
        match shape {
            Shape::Forest => acyclic,
            Shape::LinearForest => acyclic && s.iter().all(|v| self.degree_in(v, s) <= 2),
            Shape::InducedPath => {
                comps == 1 && acyclic && s.iter().all(|v| self.degree_in(v, s) <= 2)
            }
        }
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal the order");
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for (u, v) in self.edges() {
            adj[perm[u]].insert(perm[v]);
            adj[perm[v]].insert(perm[u]);
        }
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by `s`, with vertices renumbered in ascending order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Graph {
        let verts = s.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let adj = verts
            .iter()
            .map(|&v| self.adj[v].intersection(s).iter().map(|u| index[u]).collect())
            .collect();
        Graph { n: verts.len(), adj }
    }

    /// Copy of the graph with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::IndexOutOfRange { u, v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let mut g = self.clone();
        g.adj[u].insert(v);
        g.adj[v].insert(u);
        Ok(g)
    }

    /// Copy of the graph with a new vertex `n` joined to `nbrs`.
    pub fn with_vertex(&self, nbrs: VertexSet) -> Result<Graph, GraphError> {
        let n = self.n;
        if n + 1 > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n + 1));
        }
        debug_assert!(nbrs.is_subset(self.vertices()));
        let mut adj = self.adj.clone();
        for u in nbrs.iter() {
            adj[u].insert(n);
        }
        adj.push(nbrs);
        Ok(Graph { n: n + 1, adj })
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let mut adj = self.adj.clone();
        for row in &other.adj {
            adj.push(VertexSet(row.bits() << self.n));
        }
        Ok(Graph { n, adj })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn k(n: usize) -> Graph {
        Graph::standard(GraphFamily::Complete(n)).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::standard(GraphFamily::Cycle(n)).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::standard(GraphFamily::Path(n)).unwrap()
    }

    #[test]
    fn make_graph_examples() {
        let g = Graph::new(0, &[]).unwrap();
        assert_eq!(g.order(), 0);
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3, path(3));
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.degree_sequence(), vec![3, 3, 3, 3]);
    }

    #[test]
    fn make_graph_errors_and_dedup() {
        assert_eq!(Graph::new(129, &[]), Err(GraphError::OrderTooLarge(129)));
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            Graph::new(3, &[(0, 3)]),
            Err(GraphError::IndexOutOfRange { .. })
        ));
        let g = Graph::new(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.size(), 1);
        assert!(Graph::empty(128).is_ok());
    }

    #[test]
    fn standard_families() {
        let k4 = k(4);
        assert_eq!(k4.regularity().unwrap(), Some(3));
        let k33 = Graph::standard(GraphFamily::CompleteBipartite(3, 3)).unwrap();
        assert_eq!(k33.regularity().unwrap(), Some(3));
        assert_eq!((k33.order(), k33.size()), (6, 9));
        let c5 = cycle(5);
        assert_eq!((c5.order(), c5.regularity().unwrap()), (5, Some(2)));
        assert!(Graph::standard(GraphFamily::Cycle(2)).is_err());
        assert!(Graph::standard(GraphFamily::CompleteBipartite(0, 2)).is_err());
        assert!(Graph::standard(GraphFamily::Path(0)).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(k(4).complement(), Graph::empty(4).unwrap());
        let p6 = path(6);
        assert_eq!(p6.complement().complement(), p6);
        // C5 -> complement via the map i -> 2i mod 5
        let c5 = cycle(5);
        let perm: Vec<usize> = (0..5).map(|i| (2 * i) % 5).collect();
        assert_eq!(c5.relabel(&perm), c5.complement());
    }

    #[test]
    fn complement_of_c5_found_by_isomorphism_search() {
        let c5 = cycle(5);
        let comp = c5.complement();
        let mut perm: Vec<usize> = (0..5).collect();
        let mut found = false;
        permute(&mut perm, 0, &mut |p| {
            if c5.relabel(p) == comp {
                found = true;
            }
        });
        assert!(found);
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(path(3).degree_sequence(), vec![1, 2, 1]);
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.degree_sequence(), vec![3, 1, 1, 1]);
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(path(4).regularity().unwrap(), None);
        assert_eq!(cycle(7).regularity().unwrap(), Some(2));
        assert_eq!(Graph::empty(0).unwrap().regularity(), Err(GraphError::EmptyGraph));
    }

    #[test]
    fn shape_examples() {
        assert!(k(4).shape_check(set(&[0, 1]), Shape::LinearForest));
        let star = Graph::standard(GraphFamily::CompleteBipartite(1, 3)).unwrap();
        assert!(!star.shape_check(star.vertices(), Shape::LinearForest));
        assert!(star.shape_check(star.vertices(), Shape::Forest));
        let c5 = cycle(5);
        for v in 0..5 {
            assert!(c5.shape_check(c5.vertices().without(v), Shape::InducedPath));
        }
        assert!(!c5.shape_check(c5.vertices(), Shape::Forest));
        assert!(c5.shape_check(VertexSet::EMPTY, Shape::Forest));
        assert!(c5.shape_check(VertexSet::EMPTY, Shape::LinearForest));
        assert!(!c5.shape_check(VertexSet::EMPTY, Shape::InducedPath));
        assert!(c5.shape_check(set(&[3]), Shape::InducedPath));
        assert!(!c5.shape_check(set(&[0, 2]), Shape::InducedPath));
    }

    #[test]
    fn components() {
        assert_eq!(path(5).connected_components(), vec![VertexSet::full(5)]);
        let e3 = Graph::empty(3).unwrap();
        assert_eq!(e3.connected_components().len(), 3);
        let g = k(3).disjoint_union(&k(2)).unwrap();
        let sizes: Vec<usize> = g.connected_components().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![3, 2]);
        assert!(!g.is_connected());
    }

    #[test]
    fn induced_subgraph_and_with_vertex() {
        let c5 = cycle(5);
        assert_eq!(c5.induced_subgraph(set(&[0, 1, 2, 3])), path(4));
        let g = path(3).with_vertex(set(&[0, 2])).unwrap();
        assert_eq!(g.relabel(&[0, 1, 2, 3]).size(), 4);
        assert_eq!(g.regularity().unwrap(), Some(2));
    }
}
