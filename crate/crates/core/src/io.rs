//! JSON and DOT serialization of finite multigraphs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId};

/// A vertex name in input files; integers and strings are both accepted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Text(String),
}

impl Label {
    pub fn as_string(&self) -> String {
        match self {
            Label::Int(i) => i.to_string(),
            Label::Text(s) => s.clone(),
        }
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Text(s.to_string())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<Label>,
    pub edges: Vec<(u32, Label, Label)>,
}

impl GraphFile {
    pub fn into_graph(self) -> Result<Multigraph> {
        let mut g = Multigraph::new();
        let mut ids: BTreeMap<String, VertexId> = BTreeMap::new();
        for (i, label) in self.vertices.iter().enumerate() {
            let name = label.as_string();
            if ids.contains_key(&name) {
                return Err(Error::Parse(format!("duplicate vertex {name:?}")));
            }
            let v = VertexId(i as u32);
            g.add_labeled_vertex(v, name.clone());
            ids.insert(name, v);
        }
        for (id, u, v) in self.edges {
            let lookup = |l: &Label| {
                ids.get(&l.as_string())
                    .copied()
                    .ok_or_else(|| Error::Parse(format!("edge {id} references unknown vertex {:?}", l.as_string())))
            };
            g.add_edge(EdgeId(id), lookup(&u)?, lookup(&v)?)?;
        }
        Ok(g)
    }

    pub fn from_graph(g: &Multigraph) -> Self {
        GraphFile {
            vertices: g.vertices().map(|v| Label::Text(g.label(v))).collect(),
            edges: g
                .edges()
                .map(|(e, u, v)| (e.0, Label::Text(g.label(u)), Label::Text(g.label(v))))
                .collect(),
        }
    }
}

pub fn graph_from_json(text: &str) -> Result<Multigraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_graph()
}

pub fn graph_to_json(g: &Multigraph) -> serde_json::Value {
    serde_json::to_value(GraphFile::from_graph(g)).expect("graph serializes")
}

/// Extra presentation hints for DOT output.
#[derive(Debug, Clone, Default)]
pub struct DotStyle {
    pub vertex_attrs: BTreeMap<VertexId, String>,
    pub edge_attrs: BTreeMap<EdgeId, String>,
}

pub fn graph_to_dot(g: &Multigraph, style: &DotStyle) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let extra = style.vertex_attrs.get(&v).map(|a| format!(", {a}")).unwrap_or_default();
        let _ = writeln!(out, "  {} [label=\"{}\"{}];", v.0, escape(&g.label(v)), extra);
    }
    for (e, u, v) in g.edges() {
        let extra = style.edge_attrs.get(&e).map(|a| format!(", {a}")).unwrap_or_default();
        let _ = writeln!(out, "  {} -- {} [id=\"e{}\"{}];", u.0, v.0, e.0, extra);
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
