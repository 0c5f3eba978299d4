//! Bounded-degree labeled graphs with half-edge labels, path tracing,
//! radius-limited views, and a stable JSON encoding.
//!
//! A graph carries four independent label layers: node inputs, node outputs,
//! half-edge inputs, and half-edge outputs. Every half-edge (one per
//! (node, incident edge) pair) is labeled independently of its twin.

mod graph;
mod json;
mod label;
mod trace;
mod view;
pub mod vocab;

pub use graph::{GraphBuilder, GraphError, LabelSite, LabeledGraph, MAX_DEGREE};
pub use json::{graph_from_json, graph_to_json, graph_to_json_string};
pub use label::{intern, Label, Scalar};
pub use trace::{path_trace, path_trace_by, Traced};
pub use view::{extract_view, View};

/// Dense node identifier in `0..n`.
pub type NodeId = u32;
