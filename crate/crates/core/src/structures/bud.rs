use super::StructureError;
use crate::graph::{ColouredGraph, VertexSet};
use crate::rational::{self, Rational};
use serde::{Deserialize, Serialize};

/// Connected vertex set whose neighbourhood covers an α-fraction of the
/// class `witness_colour`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bud {
    pub vertices: VertexSet,
    pub witness_colour: usize,
}

/// Smallest `j` with `G[b]` connected and `|N(b) ∩ V_j| ≥ α|V_j|`; `None`
/// when `b` is disconnected or no class qualifies. Empty classes never
/// qualify.
pub fn is_alpha_bud(cg: &ColouredGraph, b: &VertexSet, alpha: &Rational) -> Result<Option<usize>, StructureError> {
    if b.is_empty() {
        return Err(StructureError::EmptyBud);
    }
    let g = cg.graph();
    if let Some(v) = b.iter().find(|&v| v >= g.n()) {
        return Err(StructureError::OutOfRange(v));
    }
    if !g.is_connected_on(b) {
        return Ok(None);
    }
    let mut hits = vec![0usize; cg.class_count()];
    for u in &g.neighbourhood(b) {
        if let Some(j) = cg.colour_of(u) {
            hits[j] += 1;
        }
    }
    Ok((0..cg.class_count())
        .find(|&j| !cg.class(j).is_empty() && rational::int(hits[j]) >= alpha * rational::int(cg.class(j).len())))
}

/// Every set lies inside one colour class and no two sets share a class.
pub fn is_colour_compatible<'a>(family: impl IntoIterator<Item = &'a VertexSet>, cg: &ColouredGraph) -> bool {
    let mut used = vec![false; cg.class_count()];
    for set in family {
        match cg.class_containing(set) {
            Some(i) if !used[i] => used[i] = true,
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::rational::ratio;
    use std::sync::Arc;

    fn star_coloured() -> ColouredGraph {
        // Vertex 0 (class 0) is adjacent to every vertex of class 1 = {1,2,3}.
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (4, 5)]).unwrap();
        ColouredGraph::new(
            Arc::new(g),
            vec![VertexSet::from([0]), VertexSet::from([1, 2, 3]), VertexSet::from([4, 5])],
        )
        .unwrap()
    }

    #[test]
    fn full_neighbourhood_witness() {
        let cg = star_coloured();
        assert_eq!(is_alpha_bud(&cg, &VertexSet::from([0]), &ratio(1, 1)).unwrap(), Some(1));
    }

    #[test]
    fn disconnected_is_never_a_bud() {
        let cg = star_coloured();
        assert_eq!(is_alpha_bud(&cg, &VertexSet::from([0, 4]), &ratio(1, 100)).unwrap(), None);
        assert_eq!(is_alpha_bud(&cg, &VertexSet::new(), &ratio(1, 2)), Err(StructureError::EmptyBud));
    }

    #[test]
    fn threshold_is_exact() {
        let cg = star_coloured();
        let b = VertexSet::from([1]);
        // N({1}) = {0}: all of class 0.
        assert_eq!(is_alpha_bud(&cg, &b, &ratio(1, 1)).unwrap(), Some(0));
        let b = VertexSet::from([4]);
        // N({4}) = {5}: half of class 2.
        assert_eq!(is_alpha_bud(&cg, &b, &ratio(1, 2)).unwrap(), Some(2));
        assert_eq!(is_alpha_bud(&cg, &b, &ratio(2, 3)).unwrap(), None);
    }

    #[test]
    fn compatibility() {
        let cg = star_coloured();
        let a = VertexSet::from([1, 2]);
        let b = VertexSet::from([4]);
        let c = VertexSet::from([3]);
        let straddle = VertexSet::from([0, 1]);
        assert!(is_colour_compatible([&a, &b], &cg));
        assert!(!is_colour_compatible([&a, &c], &cg));
        assert!(!is_colour_compatible([&straddle], &cg));
        assert!(is_colour_compatible(std::iter::empty(), &cg));
    }
}
