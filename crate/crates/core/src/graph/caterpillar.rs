use super::{Graph, GraphError, VertexSet};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Parameters `(h, d, t)` of the template caterpillar: an `h`-vertex spine,
/// `d` legs at every spine vertex, `t` vertices on every leg.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaterpillarShape {
    pub h: usize,
    pub d: usize,
    pub t: usize,
}

impl CaterpillarShape {
    pub fn new(h: usize, d: usize, t: usize) -> Result<Self, GraphError> {
        let shape = CaterpillarShape { h, d, t };
        shape.validate()?;
        Ok(shape)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let CaterpillarShape { h, d, t } = *self;
        if (h >= 1 && d >= 1 && t >= 1) || (h, d, t) == (1, 0, 0) {
            Ok(())
        } else {
            Err(GraphError::InvalidShape { h, d, t })
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.h + self.h * self.d * self.t
    }

    pub fn leg_count(&self) -> usize {
        self.h * self.d
    }
}

impl fmt::Display for CaterpillarShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.h, self.d, self.t)
    }
}

impl std::str::FromStr for CaterpillarShape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<_> = s.trim().trim_matches(|c| c == '(' || c == ')').split(',').collect();
        if parts.len() != 3 {
            return Err(format!("expected h,d,t but got {s:?}"));
        }
        let mut vals = [0usize; 3];
        for (slot, p) in vals.iter_mut().zip(&parts) {
            *slot = p.trim().parse().map_err(|_| format!("bad integer {p:?} in shape {s:?}"))?;
        }
        CaterpillarShape::new(vals[0], vals[1], vals[2]).map_err(|e| e.to_string())
    }
}

/// The canonical labelled `T_{h,d,t}`.
///
/// Vertex order: spine `0..h`, then the legs in `(i, j)` lexicographic order,
/// each listed from its attachment end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledCaterpillar {
    pub shape: CaterpillarShape,
    pub graph: Graph,
    pub spine: Vec<usize>,
    legs: Vec<Vec<usize>>,
}

impl LabeledCaterpillar {
    /// Leg `P_{i,j}` (0-based), attachment end first.
    pub fn leg(&self, i: usize, j: usize) -> &[usize] {
        &self.legs[i * self.shape.d + j]
    }

    pub fn legs(&self) -> &[Vec<usize>] {
        &self.legs
    }
}

pub fn make_caterpillar(shape: CaterpillarShape) -> Result<LabeledCaterpillar, GraphError> {
    shape.validate()?;
    let CaterpillarShape { h, d, t } = shape;
    let spine: Vec<usize> = (0..h).collect();
    let mut edges: Vec<(usize, usize)> = (1..h).map(|i| (i - 1, i)).collect();
    let mut legs = Vec::with_capacity(h * d);
    let mut next = h;
    for i in 0..h {
        for _ in 0..d {
            let leg: Vec<usize> = (next..next + t).collect();
            next += t;
            edges.push((i, leg[0]));
            edges.extend(leg.windows(2).map(|w| (w[0], w[1])));
            legs.push(leg);
        }
    }
    let graph = Graph::from_edges(next, &edges)?;
    Ok(LabeledCaterpillar { shape, graph, spine, legs })
}

/// Recognises caterpillars: trees whose degree-≥3 vertices all lie on one
/// path. Returns a dominating shape and an induced embedding of `g` into the
/// canonical `T_{h,d,t}` (as a map from `g`'s vertices to template vertices).
pub fn is_caterpillar(g: &Graph) -> Option<(CaterpillarShape, Vec<usize>)> {
    let n = g.n();
    if n == 0 || g.edge_count() != n - 1 || !g.is_connected() {
        return None;
    }
    if n == 1 {
        return Some((CaterpillarShape { h: 1, d: 0, t: 0 }, vec![0]));
    }
    let spine = spine_path(g)?;
    let on_spine = {
        let mut mark = vec![false; n];
        for &v in &spine {
            mark[v] = true;
        }
        mark
    };

    // Legs hanging off each spine vertex, each followed outwards.
    let mut legs_at: Vec<Vec<Vec<usize>>> = Vec::with_capacity(spine.len());
    for &s in &spine {
        let mut legs = Vec::new();
        for &w in g.neighbours(s) {
            if on_spine[w] {
                continue;
            }
            let mut leg = vec![w];
            let (mut prev, mut cur) = (s, w);
            loop {
                let next: Vec<usize> = g.neighbours(cur).iter().copied().filter(|&x| x != prev).collect();
                match next.as_slice() {
                    [] => break,
                    [x] => {
                        leg.push(*x);
                        prev = cur;
                        cur = *x;
                    }
                    _ => return None,
                }
            }
            legs.push(leg);
        }
        legs_at.push(legs);
    }

    let h = spine.len();
    let d = legs_at.iter().map(Vec::len).max().unwrap_or(0);
    let t = legs_at.iter().flatten().map(Vec::len).max().unwrap_or(0);
    let shape = CaterpillarShape::new(h, d, t).ok()?;
    let mut map = vec![usize::MAX; n];
    for (i, &s) in spine.iter().enumerate() {
        map[s] = i;
        for (j, leg) in legs_at[i].iter().enumerate() {
            let base = h + (i * d + j) * t;
            for (k, &v) in leg.iter().enumerate() {
                map[v] = base + k;
            }
        }
    }
    Some((shape, map))
}

/// Spine of a tree on ≥ 2 vertices: the minimal path containing every vertex
/// of degree ≥ 3, or a path endpoint when there is none.
fn spine_path(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let branch: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    if branch.is_empty() {
        let end = (0..n).find(|&v| g.degree(v) == 1)?;
        return Some(vec![end]);
    }
    // Prune leaves that are not branch vertices until only the Steiner subtree remains.
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = queue.pop() {
        if !alive[v] || g.degree(v) >= 3 {
            continue;
        }
        alive[v] = false;
        for &u in g.neighbours(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] == 1 {
                    queue.push(u);
                }
            }
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if kept.iter().any(|&v| deg[v] > 2) {
        return None;
    }
    let start = *kept.iter().find(|&&v| deg[v] <= 1)?;
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g.neighbours(cur).iter().copied().find(|&u| alive[u] && u != prev);
        match next {
            Some(u) => {
                path.push(u);
                prev = cur;
                cur = u;
            }
            None => break,
        }
    }
    Some(path)
}

/// Some `(h, d, t)` whose template contains `g` as an induced subgraph.
pub fn shape_for(g: &Graph) -> Result<CaterpillarShape, GraphError> {
    is_caterpillar(g).map(|(shape, _)| shape).ok_or(GraphError::NotCaterpillar)
}

impl LabeledCaterpillar {
    pub fn shape_for(&self) -> CaterpillarShape {
        self.shape
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.graph.vertices()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_tree(g: &Graph) -> bool {
        g.n() >= 1 && g.edge_count() == g.n() - 1 && g.is_connected()
    }

    /// Induced-ness of a vertex map, checked pair by pair.
    fn embeds(pattern: &Graph, host: &Graph, map: &[usize]) -> bool {
        let mut used = map.to_vec();
        used.sort_unstable();
        used.dedup();
        used.len() == map.len()
            && (0..pattern.n()).all(|u| {
                (0..pattern.n()).all(|v| u == v || pattern.has_edge(u, v) == host.has_edge(map[u], map[v]))
            })
    }

    #[test]
    fn single_vertex() {
        let c = make_caterpillar(CaterpillarShape::new(1, 0, 0).unwrap()).unwrap();
        assert_eq!(c.graph.n(), 1);
        assert_eq!(shape_for(&c.graph).unwrap(), CaterpillarShape { h: 1, d: 0, t: 0 });
    }

    #[test]
    fn t11t_is_a_path() {
        for t in 1..6 {
            let c = make_caterpillar(CaterpillarShape::new(1, 1, t).unwrap()).unwrap();
            assert_eq!(c.graph, Graph::path(t + 1));
            assert_eq!(shape_for(&Graph::path(t + 1)).unwrap(), CaterpillarShape { h: 1, d: 1, t });
        }
    }

    #[test]
    fn t221_has_two_spine_vertices_with_two_leaves() {
        let c = make_caterpillar(CaterpillarShape::new(2, 2, 1).unwrap()).unwrap();
        assert_eq!(c.graph.n(), 6);
        assert!(is_tree(&c.graph));
        assert!(c.graph.has_edge(0, 1));
        assert_eq!(c.graph.degree(0), 3);
        assert_eq!(c.graph.degree(1), 3);
        assert_eq!(c.leg(1, 0), &[4]);
        assert!((2..6).all(|v| c.graph.degree(v) == 1));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(CaterpillarShape::new(2, 0, 0).is_err());
        assert!(CaterpillarShape::new(0, 1, 1).is_err());
        assert!(CaterpillarShape::new(1, 1, 0).is_err());
        assert!("2,1,2".parse::<CaterpillarShape>().is_ok());
        assert!("2,1".parse::<CaterpillarShape>().is_err());
    }

    #[test]
    fn template_invariants() {
        for h in 1..=4 {
            for d in 1..=4 {
                for t in 1..=4 {
                    let shape = CaterpillarShape::new(h, d, t).unwrap();
                    let c = make_caterpillar(shape).unwrap();
                    assert_eq!(c.graph.n(), h + h * d * t);
                    assert!(is_tree(&c.graph));
                    for v in c.graph.vertices().iter().filter(|&v| c.graph.degree(v) >= 3) {
                        assert!(v < h, "branch vertex {v} off the spine");
                    }
                    let (found, map) = is_caterpillar(&c.graph).expect("template is a caterpillar");
                    let host = make_caterpillar(found).unwrap();
                    assert!(embeds(&c.graph, &host.graph, &map));
                }
            }
        }
    }

    #[test]
    fn t322_recognised_as_itself() {
        let c = make_caterpillar(CaterpillarShape::new(3, 2, 2).unwrap()).unwrap();
        assert_eq!(shape_for(&c.graph).unwrap(), CaterpillarShape { h: 3, d: 2, t: 2 });
    }

    #[test]
    fn p5_and_star() {
        let (shape, map) = is_caterpillar(&Graph::path(5)).unwrap();
        assert_eq!(shape, CaterpillarShape { h: 1, d: 1, t: 4 });
        assert!(embeds(&Graph::path(5), &make_caterpillar(shape).unwrap().graph, &map));

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let (shape, map) = is_caterpillar(&star).unwrap();
        assert_eq!(shape, CaterpillarShape { h: 1, d: 3, t: 1 });
        assert!(embeds(&star, &make_caterpillar(shape).unwrap().graph, &map));
    }

    #[test]
    fn smallest_non_caterpillar() {
        // Centre 0 with three children, each carrying two leaves: branch vertices 1, 2, 3 are not on one path.
        let mut edges = vec![(0, 1), (0, 2), (0, 3)];
        for (i, c) in [1, 2, 3].into_iter().enumerate() {
            edges.push((c, 4 + 2 * i));
            edges.push((c, 5 + 2 * i));
        }
        let g = Graph::from_edges(10, &edges).unwrap();
        assert!(is_caterpillar(&g).is_none());
        assert_eq!(shape_for(&g), Err(GraphError::NotCaterpillar));
    }

    #[test]
    fn spider_with_long_legs_is_a_caterpillar() {
        let mut edges = Vec::new();
        for leg in 0..3 {
            let base = 1 + 3 * leg;
            edges.extend([(0, base), (base, base + 1), (base + 1, base + 2)]);
        }
        let g = Graph::from_edges(10, &edges).unwrap();
        let (shape, _) = is_caterpillar(&g).unwrap();
        assert_eq!(shape, CaterpillarShape { h: 1, d: 3, t: 3 });
    }

    #[test]
    fn non_trees() {
        assert!(is_caterpillar(&Graph::cycle(5)).is_none());
        assert!(is_caterpillar(&Graph::empty(2)).is_none());
        assert!(is_caterpillar(&Graph::empty(0)).is_none());
    }
}
