use super::{Graph, GraphError, VertexSet};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// A graph together with an ordered family of disjoint colour classes.
///
/// The classes need not cover every vertex; vertices outside all classes are
/// simply never looked at by the class-based searches.
#[derive(Clone, Debug)]
pub struct ColouredGraph {
    graph: Arc<Graph>,
    classes: Vec<VertexSet>,
    colour_of: Vec<Option<usize>>,
}

impl ColouredGraph {
    /// Fails if two classes share a vertex or a class member is out of range.
    pub fn new(graph: Arc<Graph>, classes: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = graph.n();
        let mut colour_of = vec![None; n];
        for (i, class) in classes.iter().enumerate() {
            for v in class {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if colour_of[v].is_some() {
                    return Err(GraphError::OverlappingClasses(v));
                }
                colour_of[v] = Some(i);
            }
        }
        Ok(ColouredGraph { graph, classes, colour_of })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<Graph> {
        Arc::clone(&self.graph)
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &VertexSet {
        &self.classes[i]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn colour_of(&self, v: usize) -> Option<usize> {
        self.colour_of.get(v).copied().flatten()
    }

    /// Index of the single class containing all of `set`, if there is one.
    pub fn class_containing(&self, set: &VertexSet) -> Option<usize> {
        let first = self.colour_of(set.first()?)?;
        set.iter().all(|v| self.colour_of(v) == Some(first)).then_some(first)
    }

    /// Same graph, new classes.
    pub fn recoloured(&self, classes: Vec<VertexSet>) -> Result<Self, GraphError> {
        ColouredGraph::new(self.shared_graph(), classes)
    }
}

/// Splits `g` into `classes` equal colour classes of `⌊n/classes⌋` vertices.
///
/// Vertex ids are shuffled with a seeded generator; the last `n mod classes`
/// positions of the shuffle are discarded and the rest are cut into
/// consecutive blocks.
pub fn equipartition(g: Arc<Graph>, classes: usize, seed: u64) -> Result<ColouredGraph, GraphError> {
    let n = g.n();
    if classes == 0 || n < classes {
        return Err(GraphError::TooFewVertices { n, classes });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let size = n / classes;
    let parts = order[..size * classes].chunks(size).map(|c| c.iter().copied().collect()).collect();
    ColouredGraph::new(g, parts)
}
