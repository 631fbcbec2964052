use super::{Graph, VertexSet};

/// Connected components of `g[s]`, ordered by their smallest vertex.
pub fn components(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    let mut state = vec![0u8; g.n()]; // 0 = outside s, 1 = unvisited, 2 = visited
    for v in s {
        state[v] = 1;
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for root in s {
        if state[root] != 1 {
            continue;
        }
        state[root] = 2;
        stack.push(root);
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &u in g.neighbours(v) {
                if state[u] == 1 {
                    state[u] = 2;
                    stack.push(u);
                }
            }
        }
        out.push(comp.into_iter().collect());
    }
    out
}

/// A maximum-cardinality component of `g[s]`; ties go to the component with
/// the smallest minimum vertex. Empty input gives the empty set.
pub fn largest_component(g: &Graph, s: &VertexSet) -> VertexSet {
    let mut best = VertexSet::new();
    for comp in components(g, s) {
        if comp.len() > best.len() {
            best = comp;
        }
    }
    best
}

/// Connected components of the complement of `g`, ordered by their smallest
/// vertex, in `O(n + m)` without building the complement.
pub fn complement_components(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut unvisited: Vec<usize> = (0..n).rev().collect();
    let mut is_nb = vec![false; n];
    let mut out = Vec::new();
    while let Some(root) = unvisited.pop() {
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &u in g.neighbours(v) {
                is_nb[u] = true;
            }
            let (keep, reached): (Vec<usize>, Vec<usize>) = unvisited.iter().partition(|&&u| is_nb[u]);
            for &u in g.neighbours(v) {
                is_nb[u] = false;
            }
            unvisited = keep;
            comp.extend_from_slice(&reached);
            stack.extend(reached);
        }
        out.push(comp.into_iter().collect::<VertexSet>());
    }
    out.sort_by_key(|c| c.first());
    out
}

/// Splits a family of components into two sides of nearly equal total size:
/// largest first, each to the currently smaller side. Fewer than two
/// components gives `None`.
pub fn balanced_split(comps: &[VertexSet]) -> Option<(VertexSet, VertexSet)> {
    if comps.len() < 2 {
        return None;
    }
    let mut order: Vec<&VertexSet> = comps.iter().collect();
    order.sort_by_key(|c| (std::cmp::Reverse(c.len()), c.first()));
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for c in order {
        let side = if a.len() <= b.len() { &mut a } else { &mut b };
        side.extend(c.iter());
    }
    Some((a.into_iter().collect(), b.into_iter().collect()))
}
