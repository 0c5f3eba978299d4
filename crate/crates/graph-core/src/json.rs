use crate::{GraphBuilder, GraphError, Label, LabeledGraph, NodeId, Scalar};
use serde_json::{json, Map, Value};

fn label_to_value(l: &Label) -> Value {
    let mut obj = Map::new();
    obj.insert("tag".into(), Value::String(l.tag.to_owned()));
    if !l.payload.is_empty() {
        let payload: Vec<Value> = l
            .payload
            .iter()
            .map(|s| match s {
                Scalar::I(v) => json!(v),
                Scalar::S(v) => json!(v),
                Scalar::B(v) => json!(v),
            })
            .collect();
        obj.insert("payload".into(), Value::Array(payload));
    }
    Value::Object(obj)
}

fn label_from_value(v: &Value) -> Result<Label, GraphError> {
    let bad = || GraphError::Json(format!("bad label {v}"));
    let obj = v.as_object().ok_or_else(bad)?;
    let tag = obj.get("tag").and_then(Value::as_str).ok_or_else(bad)?;
    let mut payload = Vec::new();
    if let Some(entries) = obj.get("payload") {
        for entry in entries.as_array().ok_or_else(bad)? {
            payload.push(match entry {
                Value::Bool(b) => Scalar::B(*b),
                Value::Number(n) => Scalar::I(n.as_i64().ok_or_else(bad)?),
                Value::String(s) => Scalar::S(crate::intern(s)),
                _ => return Err(bad()),
            });
        }
    }
    Ok(Label::new(tag, payload))
}

/// Key for the half-edge on `node`'s side of edge `node`-`other`.
fn half_edge_key(node: NodeId, other: NodeId) -> String {
    format!("{}-{}:{}", node.min(other), node.max(other), node)
}

/// Encodes a graph as a JSON object with deterministic key order.
pub fn graph_to_json(g: &LabeledGraph) -> Value {
    let mut node_input = Map::new();
    let mut node_output = Map::new();
    for v in 0..g.n() {
        if let Some(l) = g.node_input(v) {
            node_input.insert(v.to_string(), label_to_value(l));
        }
        if let Some(l) = g.node_output(v) {
            node_output.insert(v.to_string(), label_to_value(l));
        }
    }
    let mut he_input = Map::new();
    let mut he_output = Map::new();
    for &(u, v) in g.edges() {
        for (node, other) in [(u, v), (v, u)] {
            if let Some(l) = g.half_edge_input(node, other) {
                he_input.insert(half_edge_key(node, other), label_to_value(l));
            }
            if let Some(l) = g.half_edge_output(node, other) {
                he_output.insert(half_edge_key(node, other), label_to_value(l));
            }
        }
    }
    json!({
        "n": g.n(),
        "edges": g.edges().iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
        "nodeInput": node_input,
        "nodeOutput": node_output,
        "halfEdgeInput": he_input,
        "halfEdgeOutput": he_output,
    })
}

pub fn graph_to_json_string(g: &LabeledGraph) -> String {
    serde_json::to_string_pretty(&graph_to_json(g)).expect("graph json serializes")
}

/// Parses a graph from the encoding produced by [`graph_to_json`].
pub fn graph_from_json(v: &Value) -> Result<LabeledGraph, GraphError> {
    let bad = |what: &str| GraphError::Json(what.to_owned());
    let obj = v.as_object().ok_or_else(|| bad("top level must be an object"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing n"))? as u32;
    let mut b = GraphBuilder::new(n);
    for e in obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing edges"))?
    {
        let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("edge must be a pair"))?;
        let u = pair[0].as_u64().ok_or_else(|| bad("edge endpoint"))? as NodeId;
        let w = pair[1].as_u64().ok_or_else(|| bad("edge endpoint"))? as NodeId;
        b.add_edge(u, w)?;
    }
    for (key, slot) in [("nodeInput", true), ("nodeOutput", false)] {
        if let Some(map) = obj.get(key).and_then(Value::as_object) {
            for (k, lv) in map {
                let v: NodeId = k.parse().map_err(|_| bad("node key"))?;
                if v >= n {
                    return Err(GraphError::NodeOutOfRange(v, n));
                }
                let label = label_from_value(lv)?;
                if slot {
                    b.set_node_input(v, label);
                } else {
                    b.set_node_output(v, label);
                }
            }
        }
    }
    for (key, slot) in [("halfEdgeInput", true), ("halfEdgeOutput", false)] {
        if let Some(map) = obj.get(key).and_then(Value::as_object) {
            for (k, lv) in map {
                let (node, other) = parse_half_edge_key(k).ok_or_else(|| bad("half-edge key"))?;
                let label = label_from_value(lv)?;
                if slot {
                    b.set_half_edge_input(node, other, label)?;
                } else {
                    b.set_half_edge_output(node, other, label)?;
                }
            }
        }
    }
    b.finish()
}

fn parse_half_edge_key(k: &str) -> Option<(NodeId, NodeId)> {
    let (pair, side) = k.split_once(':')?;
    let (a, b) = pair.split_once('-')?;
    let a: NodeId = a.parse().ok()?;
    let b: NodeId = b.parse().ok()?;
    let side: NodeId = side.parse().ok()?;
    if side == a {
        Some((a, b))
    } else if side == b {
        Some((b, a))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_preserves_everything() {
        let mut b = GraphBuilder::new(3);
        b.add_edge(0, 1).unwrap();
        b.add_edge(1, 2).unwrap();
        b.set_node_input(0, Label::new("tm", vec![Scalar::S(crate::intern("#L")), Scalar::B(true), Scalar::I(0)]));
        b.set_node_output(2, Label::bare("err"));
        b.set_half_edge_input(1, 0, Label::new("grid", vec![Scalar::S(crate::intern("L"))])).unwrap();
        b.set_half_edge_output(1, 2, Label::new("point", vec![Scalar::S(crate::intern("P"))])).unwrap();
        let g = b.finish().unwrap();

        let text = graph_to_json_string(&g);
        let parsed = graph_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(parsed, g);
    }

    #[test]
    fn encoding_is_byte_stable() {
        let g = LabeledGraph::new(4, &[(2, 3), (0, 1), (1, 2)]).unwrap();
        assert_eq!(graph_to_json_string(&g), graph_to_json_string(&g.clone()));
    }

    #[test]
    fn rejects_malformed_documents() {
        for text in [
            r#"{"edges": []}"#,
            r#"{"n": 2, "edges": [[0]]}"#,
            r#"{"n": 2, "edges": [[0, 1]], "nodeInput": {"5": {"tag": "x"}}}"#,
            r#"{"n": 2, "edges": [[0, 1]], "halfEdgeInput": {"0-1:2": {"tag": "x"}}}"#,
        ] {
            let v: Value = serde_json::from_str(text).unwrap();
            assert!(graph_from_json(&v).is_err(), "{text}");
        }
    }
}
