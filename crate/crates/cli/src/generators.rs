//! Seeded instance factories. Planted generators also return the certificate
//! they planted, in the same schema the pipeline emits.

use eh_certify::graph::make_caterpillar;
use eh_certify::rational::{self, Rational};
use eh_certify::structures::{Bud, Fern, JuniorCaterpillar};
use eh_certify::{CaterpillarShape, Certificate, ColouredGraph, Embedding, Graph, VertexSet};
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub certificate: Option<Certificate>,
}

type EdgeSet = BTreeSet<(usize, usize)>;

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn build(n: usize, edges: &EdgeSet) -> Graph {
    let list: Vec<_> = edges.iter().copied().collect();
    Graph::from_edges(n, &list).expect("generated edges are simple")
}

fn probability(p: &Rational) -> Result<(u64, u64), String> {
    match rational::to_u64_parts(p) {
        Some((a, b)) if a <= b => Ok((a, b)),
        _ => Err(format!("edge probability {} must lie in [0, 1]", rational::format(p))),
    }
}

fn gnp_edges(n: usize, p: &Rational, rng: &mut ChaCha8Rng) -> Result<EdgeSet, String> {
    let (a, b) = probability(p)?;
    let mut edges = EdgeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_range(0..b) < a {
                edges.insert((u, v));
            }
        }
    }
    Ok(edges)
}

/// Erdős–Rényi `G(n, p)` with exact rational `p`.
pub fn gnp(n: usize, p: &Rational, seed: u64) -> Result<Instance, String> {
    let mut rng = rng(seed);
    let edges = gnp_edges(n, p, &mut rng)?;
    Ok(Instance { graph: build(n, &edges), certificate: None })
}

/// Random graph with maximum degree at most `delta`, from `4·n·Δ` random
/// edge proposals that are kept when both ends still have spare degree.
pub fn bounded_degree(n: usize, delta: usize, seed: u64) -> Result<Instance, String> {
    let mut rng = rng(seed);
    let mut deg = vec![0usize; n];
    let mut edges = EdgeSet::new();
    if n >= 2 {
        for _ in 0..4 * n * delta {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v && deg[u] < delta && deg[v] < delta && edges.insert(key(u, v)) {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    Ok(Instance { graph: build(n, &edges), certificate: None })
}

/// `G(n, p)` with the template of `shape` forced onto a random vertex subset.
pub fn planted_caterpillar(n: usize, p: &Rational, shape: CaterpillarShape, seed: u64) -> Result<Instance, String> {
    let template = make_caterpillar(shape).map_err(|e| e.to_string())?;
    let k = template.graph.n();
    if k > n {
        return Err(format!("template {shape} has {k} vertices, more than n = {n}"));
    }
    let mut rng = rng(seed);
    let mut edges = gnp_edges(n, p, &mut rng)?;
    let map = index::sample(&mut rng, n, k).into_vec();
    for a in 0..k {
        for b in a + 1..k {
            let e = key(map[a], map[b]);
            if template.graph.has_edge(a, b) {
                edges.insert(e);
            } else {
                edges.remove(&e);
            }
        }
    }
    let certificate = Certificate::pattern(false, shape, Embedding::new(map));
    Ok(Instance { graph: build(n, &edges), certificate: Some(certificate) })
}

/// `G(n, p)` with every edge between two random disjoint `size`-sets removed.
pub fn planted_bipartite_hole(n: usize, p: &Rational, size: usize, seed: u64) -> Result<Instance, String> {
    if size == 0 || 2 * size > n {
        return Err(format!("hole sides of size {size} do not fit in n = {n}"));
    }
    let mut rng = rng(seed);
    let mut edges = gnp_edges(n, p, &mut rng)?;
    let picked = index::sample(&mut rng, n, 2 * size).into_vec();
    let (a, b): (VertexSet, VertexSet) = (picked[..size].iter().copied().collect(), picked[size..].iter().copied().collect());
    for u in &a {
        for v in &b {
            edges.remove(&key(u, v));
        }
    }
    let certificate = Certificate::anti_pair(a, b, n);
    Ok(Instance { graph: build(n, &edges), certificate: Some(certificate) })
}

/// Disjoint cliques on `⌊n/2⌋` and `⌈n/2⌉` vertices.
pub fn two_cliques(n: usize) -> Result<Instance, String> {
    if n < 2 {
        return Err("two_cliques needs n ≥ 2".into());
    }
    let m = n / 2;
    let graph = Graph::complete(m).disjoint_union(&Graph::complete(n - m));
    let certificate = Certificate::anti_pair((0..m).collect(), (m..n).collect(), n);
    Ok(Instance { graph, certificate: Some(certificate) })
}

/// Connected graph with maximum degree at most `delta`: a random tree plus
/// about `extra` further random edges.
pub fn connected_bounded_degree(n: usize, delta: usize, extra: usize, seed: u64) -> Result<Graph, String> {
    if n > 2 && delta < 2 {
        return Err("a connected graph on more than two vertices needs Δ ≥ 2".into());
    }
    let mut rng = rng(seed);
    let mut deg = vec![0usize; n];
    let mut edges = EdgeSet::new();
    let mut open: Vec<usize> = Vec::new();
    for v in 0..n {
        if v > 0 {
            let at = rng.gen_range(0..open.len());
            let u = open[at];
            edges.insert((u, v));
            deg[u] += 1;
            deg[v] += 1;
            if deg[u] == delta {
                open.swap_remove(at);
            }
        }
        if deg[v] < delta {
            open.push(v);
        }
    }
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n.max(1)), rng.gen_range(0..n.max(1)));
        if u != v && deg[u] < delta && deg[v] < delta && edges.insert(key(u, v)) {
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    Ok(build(n, &edges))
}

/// A valid fern with the given arity and height (in edges), on a coloured
/// graph where every bud owns a colour class, together with a bud parameter
/// it satisfies.
///
/// Each bud is a short path plus a pendant vertex in the same class; every
/// parent-bud vertex gets one edge into each child bud, and there are no
/// other edges between buds.
pub fn synthetic_fern(arity: usize, height: usize, seed: u64) -> (ColouredGraph, Fern, Rational) {
    struct Builder {
        rng: ChaCha8Rng,
        arity: usize,
        height: usize,
        next: usize,
        edges: EdgeSet,
        classes: Vec<VertexSet>,
    }
    impl Builder {
        fn bud(&mut self) -> Bud {
            let size = self.rng.gen_range(1..=3);
            let vertices: Vec<usize> = (self.next..self.next + size).collect();
            let pendant = self.next + size;
            self.next += size + 1;
            for w in vertices.windows(2) {
                self.edges.insert((w[0], w[1]));
            }
            self.edges.insert((vertices[0], pendant));
            let mut class: VertexSet = vertices.iter().copied().collect();
            class.insert(pendant);
            self.classes.push(class);
            Bud { vertices: vertices.into_iter().collect(), witness_colour: self.classes.len() - 1 }
        }

        fn node(&mut self, depth: usize, spine: bool) -> Fern {
            let bud = self.bud();
            let expand = depth < self.height && (spine || self.rng.gen_bool(0.5));
            if !expand {
                return Fern::leaf(self.arity, bud);
            }
            let heir = self.rng.gen_range(0..self.arity);
            let children: Vec<Fern> = (0..self.arity).map(|c| self.node(depth + 1, spine && c == heir)).collect();
            for child in &children {
                let target: Vec<usize> = child.root().vertices.iter().collect();
                for v in &bud.vertices {
                    let u = *target.choose(&mut self.rng).expect("buds are nonempty");
                    self.edges.insert(key(u, v));
                }
            }
            Fern::graft(self.arity, bud, children)
        }
    }

    let mut b =
        Builder { rng: rng(seed), arity, height, next: 0, edges: EdgeSet::new(), classes: Vec::new() };
    let fern = b.node(0, true);
    let n = b.next;
    let perm = permutation(n, &mut b.rng);
    let graph = relabel(&build(n, &b.edges), &perm);
    let classes = b.classes.iter().map(|c| map_set(c, &perm)).collect();
    let mut fern = fern;
    for node in &mut fern.nodes {
        node.bud.vertices = map_set(&node.bud.vertices, &perm);
    }
    let cg = ColouredGraph::new(Arc::new(graph), classes).expect("classes are disjoint");
    (cg, fern, rational::ratio(1, 4))
}

/// A leg-attachment instance for `shape`: a junior caterpillar whose bud
/// pools are paths in which every vertex carries private leaves, sized so
/// that maximum degree is exactly `delta`. Returns the graph, the junior
/// caterpillar and `ε = Δ/n`.
///
/// With `delta` above roughly `10·h·d·t·2^{hd}` every bud stays below `εn`
/// vertices and leg attachment runs to completion.
pub fn planted_legs(shape: CaterpillarShape, delta: usize, seed: u64) -> Result<(Graph, JuniorCaterpillar, Rational), String> {
    shape.validate().map_err(|e| e.to_string())?;
    let (h, d, t) = (shape.h, shape.d, shape.t);
    if delta < 4 {
        return Err("planted_legs needs Δ ≥ 4".into());
    }
    let leaves = delta - 2;
    let scale = (10 * h * d.max(1) * t.max(1)) << (h * d);
    let pool_len = (scale * delta).div_ceil(delta - 1) + 3;
    let mut edges = EdgeSet::new();
    for i in 1..h {
        edges.insert((i - 1, i));
    }
    let mut next = h;
    let mut pools = vec![Vec::with_capacity(d); h];
    for (i, row) in pools.iter_mut().enumerate() {
        for _ in 0..d {
            let pool: Vec<usize> = (next..next + pool_len).collect();
            next += pool_len;
            edges.insert((i, pool[0]));
            for w in pool.windows(2) {
                edges.insert((w[0], w[1]));
            }
            for &p in &pool {
                for leaf in next..next + leaves {
                    edges.insert((p, leaf));
                }
                next += leaves;
            }
            row.push(pool);
        }
    }
    let n = next;
    let mut rng = rng(seed);
    let perm = permutation(n, &mut rng);
    let graph = relabel(&build(n, &edges), &perm);
    let junior = JuniorCaterpillar {
        path: (0..h).map(|i| perm[i]).collect(),
        buds: pools
            .iter()
            .map(|row| {
                row.iter()
                    .map(|pool| Bud { vertices: pool.iter().map(|&v| perm[v]).collect(), witness_colour: 0 })
                    .collect()
            })
            .collect(),
    };
    Ok((graph, junior, rational::ratio(delta as i64, n as i64)))
}

fn permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

fn map_set(s: &VertexSet, perm: &[usize]) -> VertexSet {
    s.iter().map(|v| perm[v]).collect()
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.n(), &edges).expect("relabelling preserves simplicity")
}
