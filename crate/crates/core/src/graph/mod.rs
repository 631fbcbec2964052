//! Immutable simple graphs, vertex sets, colourings and caterpillars.

mod caterpillar;
mod colouring;
mod components;
pub mod io;
mod vertex_set;

pub use caterpillar::{is_caterpillar, make_caterpillar, shape_for, CaterpillarShape, LabeledCaterpillar};
pub use colouring::{equipartition, ColouredGraph};
pub use components::{balanced_split, complement_components, components, largest_component};
pub use vertex_set::VertexSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("invalid caterpillar shape ({h},{d},{t}): need h,d,t >= 1 or (1,0,0)")]
    InvalidShape { h: usize, d: usize, t: usize },
    #[error("graph is not a caterpillar")]
    NotCaterpillar,
    #[error("vertex {0} appears in two colour classes")]
    OverlappingClasses(usize),
    #[error("cannot split {n} vertices into {classes} nonempty classes")]
    TooFewVertices { n: usize, classes: usize },
}

/// Finite simple undirected graph on vertices `0..n`.
///
/// Neighbour lists are kept sorted so membership tests are binary searches.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edges: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
        Graph { adj, edges: n * n.saturating_sub(1) / 2 }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, edges: edges.len() })
    }

    /// Like [`Graph::from_edges`] but silently merges duplicate edges.
    pub fn from_edges_dedup(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut norm: Vec<_> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        norm.sort_unstable();
        norm.dedup();
        Graph::from_edges(n, &norm)
    }

    fn from_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, edges }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::from_sorted_unchecked((0..self.n()).collect())
    }

    /// Edge `uv` is present iff `u != v` and `uv` is absent here.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut adj = Vec::with_capacity(n);
        for v in 0..n {
            let mut list = Vec::with_capacity(n - 1 - self.degree(v));
            let mut it = self.adj[v].iter().peekable();
            for u in 0..n {
                if it.peek() == Some(&&u) {
                    it.next();
                } else if u != v {
                    list.push(u);
                }
            }
            adj.push(list);
        }
        Graph::from_adjacency(adj)
    }

    /// Induced subgraph on `set`, relabelled `0..|set|` in ascending order.
    /// The returned vector maps new ids back to ids of `self`.
    pub fn induced(&self, set: &VertexSet) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n()];
        for (i, v) in set.iter().enumerate() {
            index[v] = i;
        }
        let adj = set
            .iter()
            .map(|v| self.adj[v].iter().filter_map(|&u| (index[u] != usize::MAX).then_some(index[u])).collect())
            .collect();
        (Graph::from_adjacency(adj), set.iter().collect())
    }

    /// Open neighbourhood `N(A)`: vertices outside `A` with a neighbour in `A`.
    pub fn neighbourhood(&self, set: &VertexSet) -> VertexSet {
        let mut mark = vec![false; self.n()];
        for v in set {
            for &u in &self.adj[v] {
                mark[u] = true;
            }
        }
        for v in set {
            mark[v] = false;
        }
        VertexSet::from_sorted_unchecked((0..self.n()).filter(|&u| mark[u]).collect())
    }

    /// Closed neighbourhood `N[A] = N(A) ∪ A`.
    pub fn closed_neighbourhood(&self, set: &VertexSet) -> VertexSet {
        let mut mark = vec![false; self.n()];
        for v in set {
            mark[v] = true;
            for &u in &self.adj[v] {
                mark[u] = true;
            }
        }
        VertexSet::from_sorted_unchecked((0..self.n()).filter(|&u| mark[u]).collect())
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        if self.adj[v].len() < set.len() {
            self.adj[v].iter().filter(|&&u| set.contains(u)).count()
        } else {
            set.iter().filter(|&u| self.has_edge(v, u)).count()
        }
    }

    /// First edge between `a` and `b`, if any.
    pub fn edge_between(&self, a: &VertexSet, b: &VertexSet) -> Option<(usize, usize)> {
        for u in a {
            for &v in &self.adj[u] {
                if b.contains(v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn anti_adjacent(&self, a: &VertexSet, b: &VertexSet) -> bool {
        self.edge_between(a, b).is_none()
    }

    /// First non-edge `(u, v)` with `u ∈ a`, `v ∈ b`, if any.
    pub fn missing_edge_between(&self, a: &VertexSet, b: &VertexSet) -> Option<(usize, usize)> {
        for u in a {
            for v in b {
                if u == v || !self.has_edge(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_connected_on(&self, set: &VertexSet) -> bool {
        match set.first() {
            None => false,
            Some(_) => largest_component(self, set).len() == set.len(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.is_connected_on(&self.vertices())
    }

    /// Disjoint union, with `other`'s vertices shifted up by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|list| list.iter().map(|&u| u + shift).collect()));
        Graph::from_adjacency(adj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cliques() -> Graph {
        Graph::complete(3).disjoint_union(&Graph::complete(2))
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::from_edges(3, &[(0, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, .. })));
        assert_eq!(Graph::from_edges_dedup(3, &[(0, 1), (1, 0)]).unwrap().edge_count(), 1);
    }

    #[test]
    fn complement_of_complete_is_edgeless() {
        let c = Graph::complete(6).complement();
        assert_eq!(c, Graph::empty(6));
    }

    #[test]
    fn complement_degrees() {
        let g = Graph::cycle(7);
        let c = g.complement();
        for v in 0..7 {
            assert_eq!(c.degree(v), 6 - g.degree(v));
        }
        assert_eq!(c.complement(), g);
    }

    #[test]
    fn p4_is_self_complementary() {
        let c = Graph::path(4).complement();
        // P_4 complement is the path 1-3-0-2.
        let relabelled = Graph::from_edges(4, &[(1, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(c, relabelled);
    }

    #[test]
    fn neighbourhoods() {
        let g = Graph::path(5);
        let a = VertexSet::from([1, 2]);
        assert_eq!(g.neighbourhood(&a).as_slice(), &[0, 3]);
        assert_eq!(g.closed_neighbourhood(&a).as_slice(), &[0, 1, 2, 3]);
    }

    #[test]
    fn induced_relabels() {
        let g = two_cliques();
        let (h, map) = g.induced(&VertexSet::from([1, 2, 3]));
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn pair_checks() {
        let g = two_cliques();
        let a = VertexSet::from([0, 1, 2]);
        let b = VertexSet::from([3, 4]);
        assert!(g.anti_adjacent(&a, &b));
        assert_eq!(g.missing_edge_between(&a, &b), Some((0, 3)));
        assert!(g.complement().missing_edge_between(&a, &b).is_none());
    }
}
