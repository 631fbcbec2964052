use super::{is_alpha_bud, is_colour_compatible, Bud, Clause, Violation};
use crate::graph::{ColouredGraph, VertexSet};
use crate::rational::Rational;
use serde::{Deserialize, Serialize};

/// Induced path `v_1 … v_h` with `d` buds hanging off each path vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JuniorCaterpillar {
    pub path: Vec<usize>,
    pub buds: Vec<Vec<Bud>>,
}

impl JuniorCaterpillar {
    pub fn h(&self) -> usize {
        self.path.len()
    }

    pub fn d(&self) -> usize {
        self.buds.first().map_or(0, Vec::len)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.buds
            .iter()
            .flatten()
            .fold(self.path.iter().copied().collect(), |acc: VertexSet, b| acc.union(&b.vertices))
    }
}

pub fn validate_junior(
    cg: &ColouredGraph,
    jc: &JuniorCaterpillar,
    alpha: &Rational,
    h: usize,
    d: usize,
) -> Result<(), Violation> {
    let g = cg.graph();
    if jc.path.len() != h || jc.buds.len() != h || jc.buds.iter().any(|row| row.len() != d) {
        return Err(Violation::new(Clause::Structure, format!("expected a {h}-vertex path with {d} buds per vertex")));
    }
    if let Some(&v) = jc.path.iter().find(|&&v| v >= g.n()) {
        return Err(Violation::new(Clause::Structure, format!("path vertex {v} outside the graph")));
    }
    let all_buds = || jc.buds.iter().enumerate().flat_map(|(i, row)| row.iter().enumerate().map(move |(j, b)| (i, j, b)));
    for (i, j, b) in all_buds() {
        let vs = &b.vertices;
        if vs.is_empty() || vs.last().is_some_and(|v| v >= g.n()) || !g.is_connected_on(vs) {
            return Err(Violation::new(Clause::Connectivity, format!("bud ({i},{j}) is not a connected vertex set")));
        }
    }
    for (i, j, b) in all_buds() {
        if is_alpha_bud(cg, &b.vertices, alpha).ok().flatten().is_none() {
            return Err(Violation::new(Clause::BudBound, format!("bud ({i},{j}) is not an α-bud")));
        }
    }
    let singletons: Vec<VertexSet> = jc.path.iter().map(|&v| VertexSet::singleton(v)).collect();
    if !is_colour_compatible(singletons.iter().chain(all_buds().map(|(_, _, b)| &b.vertices)), cg) {
        return Err(Violation::new(Clause::Compatibility, "path vertices and buds are not colour-compatible"));
    }
    for a in 0..h {
        for b in a + 1..h {
            let adjacent = g.has_edge(jc.path[a], jc.path[b]);
            if adjacent != (b == a + 1) {
                return Err(Violation::new(
                    Clause::PathInduced,
                    format!("path vertices {} and {} break the induced path", jc.path[a], jc.path[b]),
                ));
            }
        }
    }
    let buds: Vec<_> = all_buds().collect();
    for (x, &(i1, j1, b1)) in buds.iter().enumerate() {
        for &(i2, j2, b2) in &buds[x + 1..] {
            if let Some((u, v)) = g.edge_between(&b1.vertices, &b2.vertices) {
                return Err(Violation::new(
                    Clause::AntiAdjacency,
                    format!("buds ({i1},{j1}) and ({i2},{j2}) share edge ({u}, {v})"),
                ));
            }
        }
    }
    for &(i, j, b) in &buds {
        let nb = g.neighbourhood(&b.vertices);
        let touched: Vec<usize> = jc.path.iter().copied().filter(|&v| nb.contains(v)).collect();
        if touched != [jc.path[i]] {
            return Err(Violation::new(
                Clause::Neighbourhood,
                format!("bud ({i},{j}) meets path vertices {touched:?}, expected only {}", jc.path[i]),
            ));
        }
    }
    Ok(())
}
