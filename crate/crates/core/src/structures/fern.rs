use super::{is_alpha_bud, is_colour_compatible, Bud, Clause, Violation};
use crate::graph::{ColouredGraph, VertexSet};
use crate::rational::Rational;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FernNode {
    pub parent: Option<usize>,
    pub bud: Bud,
}

/// Rooted tree of buds, node 0 the root, parents listed before children.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fern {
    pub arity: usize,
    pub nodes: Vec<FernNode>,
}

impl Fern {
    pub fn leaf(arity: usize, bud: Bud) -> Self {
        Fern { arity, nodes: vec![FernNode { parent: None, bud }] }
    }

    /// New root `bud` whose children are the roots of `children`.
    pub fn graft(arity: usize, bud: Bud, children: Vec<Fern>) -> Self {
        let mut nodes = vec![FernNode { parent: None, bud }];
        for child in children {
            let offset = nodes.len();
            nodes.extend(child.nodes.into_iter().map(|node| FernNode {
                parent: Some(node.parent.map_or(0, |p| p + offset)),
                bud: node.bud,
            }));
        }
        Fern { arity, nodes }
    }

    pub fn root(&self) -> &Bud {
        &self.nodes[0].bud
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn children(&self, node: usize) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&c| self.nodes[c].parent == Some(node)).collect()
    }

    pub fn depth(&self, node: usize) -> usize {
        let mut depth = 0;
        let mut cur = node;
        while let Some(p) = self.nodes[cur].parent {
            depth += 1;
            cur = p;
        }
        depth
    }

    /// Edges on a longest root-to-leaf path.
    pub fn height(&self) -> usize {
        (0..self.nodes.len()).map(|v| self.depth(v)).max().unwrap_or(0)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.nodes.iter().fold(VertexSet::new(), |acc, node| acc.union(&node.bud.vertices))
    }

    fn check_structure(&self) -> Result<(), Violation> {
        if self.nodes.is_empty() {
            return Err(Violation::new(Clause::Structure, "fern has no nodes"));
        }
        for (i, node) in self.nodes.iter().enumerate() {
            match node.parent {
                None if i != 0 => return Err(Violation::new(Clause::Structure, format!("node {i} has no parent"))),
                Some(_) if i == 0 => return Err(Violation::new(Clause::Structure, "root has a parent")),
                Some(p) if p >= i => {
                    return Err(Violation::new(Clause::Structure, format!("node {i} listed before its parent {p}")))
                }
                _ => {}
            }
        }
        let mut child_count = vec![0usize; self.nodes.len()];
        for node in &self.nodes[1..] {
            child_count[node.parent.unwrap_or(0)] += 1;
        }
        if let Some(i) = child_count.iter().position(|&c| c != 0 && c != self.arity) {
            return Err(Violation::new(
                Clause::Structure,
                format!("node {i} has {} children, expected {}", child_count[i], self.arity),
            ));
        }
        Ok(())
    }
}

/// Checks every fern clause against `cg`; stored witness colours are ignored.
pub fn validate_fern(cg: &ColouredGraph, fern: &Fern, alpha: &Rational) -> Result<(), Violation> {
    fern.check_structure()?;
    let g = cg.graph();
    for (i, node) in fern.nodes.iter().enumerate() {
        let b = &node.bud.vertices;
        if b.is_empty() || b.last().is_some_and(|v| v >= g.n()) || !g.is_connected_on(b) {
            return Err(Violation::new(Clause::Connectivity, format!("bud of node {i} is not a connected vertex set")));
        }
    }
    for (i, node) in fern.nodes.iter().enumerate() {
        if is_alpha_bud(cg, &node.bud.vertices, alpha).ok().flatten().is_none() {
            return Err(Violation::new(Clause::BudBound, format!("bud of node {i} is not an α-bud")));
        }
    }
    if !is_colour_compatible(fern.nodes.iter().map(|node| &node.bud.vertices), cg) {
        return Err(Violation::new(Clause::Compatibility, "buds are not colour-compatible"));
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (i, node) in fern.nodes.iter().enumerate() {
        for v in &node.bud.vertices {
            owner[v] = i;
        }
    }
    for (i, node) in fern.nodes.iter().enumerate() {
        for v in &node.bud.vertices {
            for &u in g.neighbours(v) {
                let j = owner[u];
                if j == usize::MAX || j == i {
                    continue;
                }
                if fern.nodes[i].parent != Some(j) && fern.nodes[j].parent != Some(i) {
                    return Err(Violation::new(
                        Clause::AntiAdjacency,
                        format!("buds of nodes {i} and {j} share edge ({}, {})", v.min(u), v.max(u)),
                    ));
                }
            }
        }
    }
    for (c, node) in fern.nodes.iter().enumerate().skip(1) {
        let p = node.parent.unwrap_or(0);
        let child = &node.bud.vertices;
        if let Some(v) = fern.nodes[p].bud.vertices.iter().find(|&v| !g.neighbours(v).iter().any(|&u| child.contains(u)))
        {
            return Err(Violation::new(
                Clause::ParentChild,
                format!("vertex {v} of node {p} has no neighbour in child node {c}"),
            ));
        }
    }
    Ok(())
}

/// `z` is disjoint from the fern, anti-adjacent to every non-root bud and
/// every vertex of `z` has a neighbour in the root bud.
pub fn grows_on(cg: &ColouredGraph, fern: &Fern, z: &VertexSet) -> bool {
    let g = cg.graph();
    if !z.is_disjoint(&fern.vertex_set()) {
        return false;
    }
    if fern.nodes.iter().skip(1).any(|node| !g.anti_adjacent(&node.bud.vertices, z)) {
        return false;
    }
    let root = &fern.root().vertices;
    z.iter().all(|v| g.neighbours(v).iter().any(|&u| root.contains(u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::rational::ratio;
    use std::sync::Arc;

    fn bud(vs: &[usize]) -> Bud {
        Bud { vertices: vs.iter().copied().collect(), witness_colour: 0 }
    }

    /// Root 0 with children 1 and 2, each class a singleton; class 3 = {3}
    /// is adjacent to everything so every bud is a 1-bud.
    fn cherry() -> (ColouredGraph, Fern) {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        let classes = (0..4).map(VertexSet::singleton).collect();
        let cg = ColouredGraph::new(Arc::new(g), classes).unwrap();
        let fern = Fern::graft(2, bud(&[0]), vec![Fern::leaf(2, bud(&[1])), Fern::leaf(2, bud(&[2]))]);
        (cg, fern)
    }

    #[test]
    fn valid_cherry() {
        let (cg, fern) = cherry();
        assert_eq!(fern.height(), 1);
        assert_eq!(fern.children(0), vec![1, 2]);
        assert_eq!(validate_fern(&cg, &fern, &ratio(1, 1)), Ok(()));
    }

    #[test]
    fn sibling_edge_is_anti_adjacency_failure() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        let cg = ColouredGraph::new(Arc::new(g), (0..4).map(VertexSet::singleton).collect()).unwrap();
        let (_, fern) = cherry();
        let err = validate_fern(&cg, &fern, &ratio(1, 1)).unwrap_err();
        assert_eq!(err.clause, Clause::AntiAdjacency);
    }

    #[test]
    fn wrong_arity_is_structure_failure() {
        let (cg, fern) = cherry();
        let lopsided = Fern { arity: 3, ..fern };
        assert_eq!(validate_fern(&cg, &lopsided, &ratio(1, 1)).unwrap_err().clause, Clause::Structure);
    }

    #[test]
    fn shared_class_is_compatibility_failure() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        let classes = vec![VertexSet::from([0]), VertexSet::from([1, 2]), VertexSet::from([3])];
        let cg = ColouredGraph::new(Arc::new(g), classes).unwrap();
        let (_, fern) = cherry();
        assert_eq!(validate_fern(&cg, &fern, &ratio(1, 2)).unwrap_err().clause, Clause::Compatibility);
    }

    #[test]
    fn growth_set() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (0, 4)]).unwrap();
        let cg = ColouredGraph::new(Arc::new(g), (0..5).map(VertexSet::singleton).collect()).unwrap();
        let (_, fern) = cherry();
        assert!(grows_on(&cg, &fern, &VertexSet::from([4])));
        assert!(!grows_on(&cg, &fern, &VertexSet::from([3])));
        assert!(!grows_on(&cg, &fern, &VertexSet::from([1])));
    }
}
