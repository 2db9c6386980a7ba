//! DOT, JSON and TSV renderings. JSON goes through `serde_json::Value`, whose
//! object maps are sorted, so output is byte-stable.

use std::fmt::Write as _;

use serde_json::{json, Value};

use super::{ActionGraph, GraphKind, MixedGraph, Provenance, Vertex, Window};
use crate::error::{Error, Result};

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot_vertices(out: &mut String, vertices: &[Vertex]) {
    for (i, v) in vertices.iter().enumerate() {
        let style = if v.interior { "" } else { ", style=dashed" };
        let _ = writeln!(out, "  n{i} [label=\"{}\"{style}];", dot_escape(&v.label));
    }
}

fn dot_edge(out: &mut String, s: usize, t: usize, m: u64, unoriented: bool) {
    let mut attrs = Vec::new();
    if m > 1 {
        attrs.push(format!("label=\"{m}\""));
    }
    if unoriented {
        attrs.push("dir=none".to_string());
    }
    if attrs.is_empty() {
        let _ = writeln!(out, "  n{s} -> n{t};");
    } else {
        let _ = writeln!(out, "  n{s} -> n{t} [{}];", attrs.join(", "));
    }
}

/// Directed arrows as `->`, multiplicity as label when above one.
/// Frontier vertices are dashed.
pub fn graph_to_dot(g: &ActionGraph) -> String {
    let mut out = String::from("digraph action {\n");
    dot_vertices(&mut out, &g.vertices);
    for (&(s, t), &m) in &g.arrows {
        dot_edge(&mut out, s, t, m, false);
    }
    out.push_str("}\n");
    out
}

pub fn mixed_to_dot(g: &MixedGraph) -> String {
    let mut out = String::from("digraph mixed {\n");
    dot_vertices(&mut out, &g.vertices);
    for (&(s, t), &m) in &g.unoriented {
        dot_edge(&mut out, s, t, m, true);
    }
    for (&(s, t), &m) in &g.directed {
        dot_edge(&mut out, s, t, m, false);
    }
    out.push_str("}\n");
    out
}

fn vertices_json(vertices: &[Vertex]) -> Value {
    Value::Array(
        vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                json!({
                    "id": i,
                    "label": v.label,
                    "weight": v.weight,
                    "interior": v.interior,
                })
            })
            .collect(),
    )
}

fn edge_list(map: &std::collections::BTreeMap<(usize, usize), u64>) -> Value {
    Value::Array(
        map.iter()
            .map(|(&(s, t), &m)| json!({"from": s, "to": t, "multiplicity": m}))
            .collect(),
    )
}

pub fn graph_to_json(g: &ActionGraph) -> Value {
    json!({
        "kind": g.kind,
        "window": g.window,
        "provenance": g.provenance,
        "notes": g.notes,
        "vertices": vertices_json(&g.vertices),
        "arrows": edge_list(&g.arrows),
    })
}

pub fn mixed_to_json(g: &MixedGraph) -> Value {
    json!({
        "vertices": vertices_json(&g.vertices),
        "unoriented": edge_list(&g.unoriented),
        "directed": edge_list(&g.directed),
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::InvalidArgument(format!("graph document lacks '{key}'")))
}

fn decode<T: serde::de::DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::InvalidArgument(format!("bad {what}: {e}")))
}

/// Inverse of [`graph_to_json`]. Vertex ids must be `0..n` in order.
pub fn graph_from_json(v: &Value) -> Result<ActionGraph> {
    let kind: GraphKind = decode(field(v, "kind")?, "kind")?;
    let window: Window = decode(field(v, "window")?, "window")?;
    let provenance: Option<Provenance> = match v.get("provenance") {
        None | Some(Value::Null) => None,
        Some(p) => Some(decode(p, "provenance")?),
    };
    let notes: Vec<String> = match v.get("notes") {
        None => Vec::new(),
        Some(n) => decode(n, "notes")?,
    };
    let raw_vertices = field(v, "vertices")?
        .as_array()
        .ok_or_else(|| Error::InvalidArgument("'vertices' must be an array".into()))?;
    let mut vertices = Vec::with_capacity(raw_vertices.len());
    for (i, rv) in raw_vertices.iter().enumerate() {
        let id: usize = decode(field(rv, "id")?, "vertex id")?;
        if id != i {
            return Err(Error::InvalidArgument(format!(
                "vertex ids must be 0..n in order; found {id} at {i}"
            )));
        }
        vertices.push(Vertex {
            label: decode(field(rv, "label")?, "vertex label")?,
            weight: match rv.get("weight") {
                None | Some(Value::Null) => None,
                Some(w) => Some(decode(w, "vertex weight")?),
            },
            interior: decode(field(rv, "interior")?, "interior flag")?,
        });
    }
    let raw_arrows = field(v, "arrows")?
        .as_array()
        .ok_or_else(|| Error::InvalidArgument("'arrows' must be an array".into()))?;
    let mut arrows = Vec::with_capacity(raw_arrows.len());
    for ra in raw_arrows {
        let s: usize = decode(field(ra, "from")?, "arrow source")?;
        let t: usize = decode(field(ra, "to")?, "arrow target")?;
        let m: u64 = decode(field(ra, "multiplicity")?, "arrow multiplicity")?;
        if m == 0 {
            return Err(Error::InvalidArgument(format!("arrow {s}->{t} has multiplicity 0")));
        }
        arrows.push(((s, t), m));
    }
    let mut g = ActionGraph::new(kind, vertices, arrows, window)?;
    g.provenance = provenance;
    g.notes = notes;
    Ok(g)
}

/// One line per arrow: `from_label  to_label  multiplicity`.
pub fn graph_to_tsv(g: &ActionGraph) -> String {
    let mut out = String::from("from\tto\tmultiplicity\n");
    for (&(s, t), &m) in &g.arrows {
        let _ = writeln!(out, "{}\t{}\t{m}", g.vertices[s].label, g.vertices[t].label);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actiongraph::{generic_graph, regular_graph, simplify_mixed};
    use crate::rootdata::{Family, RootSystem, Weight};

    #[test]
    fn json_round_trip_and_stable() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let g = generic_graph(&rs, &Weight(vec![1, 0]), 2).unwrap();
        let v = graph_to_json(&g);
        let text = serde_json::to_string(&v).unwrap();
        let back = graph_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, g);
        assert_eq!(serde_json::to_string(&graph_to_json(&back)).unwrap(), text);
        // keys sorted at top level
        assert!(text.starts_with("{\"arrows\":"));
    }

    #[test]
    fn dot_labels_only_multiple_arrows() {
        let rs = RootSystem::new(Family::A, 1).unwrap();
        let g = regular_graph(&rs, &Weight(vec![1]), 2).unwrap();
        let dot = graph_to_dot(&g);
        assert!(dot.contains("n0 -> n1;"));
        assert!(!dot.contains("label=\"1\""));
        assert!(dot.contains("n2 [label=\"L(2)\", style=dashed];"));
        let mixed = mixed_to_dot(&simplify_mixed(&g));
        assert!(mixed.contains("n0 -> n1 [dir=none];"));

        let rs = RootSystem::new(Family::B, 2).unwrap();
        let g = regular_graph(&rs, &Weight(vec![0, 2]), 3).unwrap();
        assert!(graph_to_dot(&g).contains("[label=\"2\"]"));
    }

    #[test]
    fn malformed_documents_rejected() {
        assert!(graph_from_json(&json!({})).is_err());
        let rs = RootSystem::new(Family::A, 1).unwrap();
        let mut v = graph_to_json(&regular_graph(&rs, &Weight(vec![1]), 2).unwrap());
        v["arrows"][0]["to"] = json!(17);
        assert!(graph_from_json(&v).is_err());
    }
}
