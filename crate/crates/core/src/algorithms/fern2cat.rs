use super::AlgoError;
use crate::graph::ColouredGraph;
use crate::structures::{Fern, JuniorCaterpillar};

/// Reads an `(h, d)` junior caterpillar off a fern of arity `d + 1` and
/// height at least `h`.
///
/// The spine follows the root path to the first node at depth `h`: `v_1` is
/// the smallest vertex of the root bud and each later `v_i` the smallest
/// vertex of its bud adjacent to `v_{i-1}`. The buds at `v_i` are the other
/// children of the `i`-th path node.
pub fn fern_to_junior(cg: &ColouredGraph, fern: &Fern, h: usize, d: usize) -> Result<JuniorCaterpillar, AlgoError> {
    if fern.arity != d + 1 {
        return Err(AlgoError::Precondition(format!("fern arity {} is not d + 1 = {}", fern.arity, d + 1)));
    }
    if h == 0 || fern.height() < h {
        return Err(AlgoError::Precondition(format!("fern height {} is below h = {h}", fern.height())));
    }
    let g = cg.graph();
    let deep = (0..fern.len()).find(|&x| fern.depth(x) == h).unwrap_or(0);
    let mut nodes = vec![deep];
    while let Some(p) = fern.nodes[*nodes.last().unwrap_or(&0)].parent {
        nodes.push(p);
    }
    nodes.reverse();

    let mut path: Vec<usize> = Vec::with_capacity(h);
    for &node in &nodes[..h] {
        let bud = &fern.nodes[node].bud.vertices;
        let v = match path.last() {
            None => bud.first(),
            Some(&prev) => bud.iter().find(|&u| g.has_edge(prev, u)),
        };
        let v = v.ok_or_else(|| AlgoError::Precondition(format!("bud of node {node} has no vertex to extend the path")))?;
        path.push(v);
    }
    let buds = (0..h)
        .map(|i| {
            fern.children(nodes[i])
                .into_iter()
                .filter(|&c| c != nodes[i + 1])
                .map(|c| fern.nodes[c].bud.clone())
                .collect()
        })
        .collect();
    Ok(JuniorCaterpillar { path, buds })
}
