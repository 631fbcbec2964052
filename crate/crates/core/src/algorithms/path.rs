use super::AlgoError;
use crate::graph::{components, largest_component, Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathGrowResult {
    /// Disjoint anti-adjacent sets, each of size at least Δ.
    Pair(VertexSet, VertexSet),
    /// Induced path in order, starting at the requested root.
    Path(Vec<usize>),
}

/// Induced path on `t` vertices starting at `v`, or a pair with both sides of
/// size at least `delta`.
///
/// Requires `g` connected, maximum degree at most `delta` and more than
/// `(t + 2) * delta` vertices.
pub fn path_grow(g: &Graph, v: usize, t: usize, delta: usize) -> Result<PathGrowResult, AlgoError> {
    let n = g.n();
    if v >= n {
        return Err(AlgoError::Precondition(format!("root {v} outside a graph on {n} vertices")));
    }
    if t == 0 || delta == 0 {
        return Err(AlgoError::Precondition("t and Δ must be positive".into()));
    }
    if g.max_degree() > delta {
        return Err(AlgoError::Precondition(format!("maximum degree {} exceeds Δ = {delta}", g.max_degree())));
    }
    if n <= (t + 2) * delta {
        return Err(AlgoError::Precondition(format!("{n} vertices, more than {} required", (t + 2) * delta)));
    }
    if !g.is_connected() {
        return Err(AlgoError::Precondition("graph is not connected".into()));
    }

    let mut path = vec![v];
    let mut in_z = vec![false; n];
    let mark_closed = |x: usize, in_z: &mut Vec<bool>| {
        in_z[x] = true;
        for &u in g.neighbours(x) {
            in_z[u] = true;
        }
    };
    mark_closed(v, &mut in_z);
    // C_{i-1}, which avoids N[{v_1, …, v_{i-1}}]; C_0 is the whole graph.
    let mut prev_comp: Vec<bool> = vec![true; n];

    for _ in 1..t {
        let rest: VertexSet = (0..n).filter(|&u| !in_z[u]).collect();
        let largest = largest_component(g, &rest);
        if largest.len() + delta <= rest.len() {
            return Ok(harvest(components(g, &rest), largest, &rest, delta));
        }
        let mut in_comp = vec![false; n];
        for u in &largest {
            in_comp[u] = true;
        }
        let last = *path.last().unwrap_or(&v);
        let next = g
            .neighbours(last)
            .iter()
            .copied()
            .find(|&u| prev_comp[u] && g.neighbours(u).iter().any(|&w| in_comp[w]));
        let Some(next) = next else {
            return Err(AlgoError::Internal(format!("no extension of the path {path:?}")));
        };
        path.push(next);
        mark_closed(next, &mut in_z);
        prev_comp = in_comp;
    }
    Ok(PathGrowResult::Path(path))
}

// The largest component is too small to hold all but Δ vertices of C, so
// components of g[C] split into two anti-adjacent sides of size ≥ Δ.
fn harvest(comps: Vec<VertexSet>, largest: VertexSet, rest: &VertexSet, delta: usize) -> PathGrowResult {
    if largest.len() >= delta {
        let other = rest.difference(&largest);
        return PathGrowResult::Pair(largest, other);
    }
    let mut a = VertexSet::new();
    for comp in comps {
        if a.len() >= delta {
            break;
        }
        a = a.union(&comp);
    }
    let b = rest.difference(&a);
    PathGrowResult::Pair(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(g: &Graph, v: usize, t: usize, delta: usize, out: &PathGrowResult) {
        match out {
            PathGrowResult::Path(p) => {
                assert_eq!(p.len(), t);
                assert_eq!(p[0], v);
                for i in 0..p.len() {
                    for j in i + 1..p.len() {
                        assert_eq!(g.has_edge(p[i], p[j]), j == i + 1, "{p:?}");
                    }
                }
            }
            PathGrowResult::Pair(a, b) => {
                assert!(a.len() >= delta && b.len() >= delta);
                assert!(a.is_disjoint(b) && g.anti_adjacent(a, b));
            }
        }
    }

    #[test]
    fn cycle_twelve() {
        let g = Graph::cycle(12);
        let out = path_grow(&g, 0, 3, 2).unwrap();
        check(&g, 0, 3, 2, &out);
    }

    #[test]
    fn long_path_from_endpoint() {
        let g = Graph::path(20);
        let out = path_grow(&g, 0, 4, 2).unwrap();
        assert_eq!(out, PathGrowResult::Path(vec![0, 1, 2, 3]));
    }

    #[test]
    fn single_vertex_path() {
        let g = Graph::cycle(9);
        assert_eq!(path_grow(&g, 3, 1, 2).unwrap(), PathGrowResult::Path(vec![3]));
    }

    #[test]
    fn path_from_middle_splits_into_pair() {
        // Removing N[10] from P_21 leaves two halves of 9 vertices each.
        let g = Graph::path(21);
        let out = path_grow(&g, 10, 3, 2).unwrap();
        check(&g, 10, 3, 2, &out);
        assert!(matches!(out, PathGrowResult::Pair(..)));
    }

    #[test]
    fn preconditions() {
        let g = Graph::path(8);
        assert!(matches!(path_grow(&g, 0, 3, 2), Err(AlgoError::Precondition(_))));
        assert!(matches!(path_grow(&Graph::complete(20), 0, 2, 3), Err(AlgoError::Precondition(_))));
        let two = Graph::path(10).disjoint_union(&Graph::path(10));
        assert!(matches!(path_grow(&two, 0, 2, 2), Err(AlgoError::Precondition(_))));
    }
}
