//! Graphviz rendering of a graph with optional structure overlays.

use eh_certify::algorithms::SearchState;
use eh_certify::structures::{Fern, JuniorCaterpillar};
use eh_certify::{Certificate, Graph, VertexSet};
use serde_json::Value;
use std::fmt::Write as _;

/// A structure read from JSON, rendered as labelled clusters.
#[derive(Clone, Debug)]
pub enum Overlay {
    Fern(Fern),
    Junior(JuniorCaterpillar),
    State(SearchState),
    Certificate(Certificate),
}

impl Overlay {
    /// Recognises the structure by its keys. A trace (one JSON document per
    /// line) contributes its last line.
    pub fn parse(text: &str) -> Result<Overlay, String> {
        let doc = match serde_json::from_str::<Value>(text) {
            Ok(v) => v,
            Err(_) => {
                let last = text.lines().rev().find(|l| !l.trim().is_empty()).ok_or("empty structure file")?;
                serde_json::from_str(last).map_err(|e| format!("structure JSON: {e}"))?
            }
        };
        let has = |k: &str| doc.get(k).is_some();
        let err = |e: serde_json::Error| format!("structure JSON: {e}");
        if has("kind") {
            serde_json::from_value(doc).map(Overlay::Certificate).map_err(err)
        } else if has("working") {
            serde_json::from_value(doc).map(Overlay::State).map_err(err)
        } else if has("arity") && has("nodes") {
            serde_json::from_value(doc).map(Overlay::Fern).map_err(err)
        } else if has("path") && has("buds") {
            serde_json::from_value(doc).map(Overlay::Junior).map_err(err)
        } else {
            Err("structure JSON is not a fern, junior caterpillar, search state or certificate".into())
        }
    }

    fn clusters(&self) -> (Vec<(String, VertexSet)>, Vec<usize>) {
        let fern_buds = |tag: &str, f: &Fern| {
            f.nodes
                .iter()
                .enumerate()
                .map(|(x, node)| (format!("{tag}bud {x} (colour {})", node.bud.witness_colour), node.bud.vertices.clone()))
                .collect::<Vec<_>>()
        };
        match self {
            Overlay::Fern(f) => (fern_buds("", f), Vec::new()),
            Overlay::State(s) => {
                let mut out = Vec::new();
                for (i, family) in &s.ferns {
                    for (x, f) in family.iter().enumerate() {
                        out.extend(fern_buds(&format!("family {i} fern {x} "), f));
                    }
                }
                (out, Vec::new())
            }
            Overlay::Junior(jc) => {
                let mut out = Vec::new();
                for (i, row) in jc.buds.iter().enumerate() {
                    for (j, bud) in row.iter().enumerate() {
                        out.push((format!("bud ({i},{j})"), bud.vertices.clone()));
                    }
                }
                (out, jc.path.clone())
            }
            Overlay::Certificate(c) => match &c.embedding {
                Some(e) => (Vec::new(), e.as_slice().to_vec()),
                None => (vec![("A".into(), c.set_a.clone()), ("B".into(), c.set_b.clone())], Vec::new()),
            },
        }
    }
}

/// Undirected DOT text. Without a graph only the overlay's vertices appear.
pub fn to_dot(graph: Option<&Graph>, overlay: Option<&Overlay>) -> String {
    let (clusters, marked) = overlay.map(Overlay::clusters).unwrap_or_default();
    let mut out = String::from("graph G {\n");
    let mut placed = VertexSet::new();
    for (x, (label, set)) in clusters.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{x} {{\n    label=\"{label}\";");
        for v in set {
            if placed.insert(v) {
                let _ = writeln!(out, "    {v};");
            }
        }
        out.push_str("  }\n");
    }
    for &v in &marked {
        let _ = writeln!(out, "  {v} [style=bold, shape=doublecircle];");
        placed.insert(v);
    }
    if let Some(g) = graph {
        for v in (0..g.n()).filter(|&v| !placed.contains(v)) {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in g.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
    }
    out.push_str("}\n");
    out
}
