//! Dual-graph views of a resolution: one node per exceptional surface, one
//! edge per compact curve, labelled by the curve's self-intersections.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::surface::FanGeometry;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramNode {
    pub id: String,
    #[serde(rename = "type")]
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEdge {
    pub k: String,
    pub l: String,
    pub c_in_k: i64,
    pub c_in_l: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDiagram {
    pub label: String,
    pub nodes: Vec<DiagramNode>,
    pub edges: Vec<DiagramEdge>,
}

impl FanDiagram {
    pub fn of(geom: &FanGeometry) -> Self {
        Self {
            label: geom.fan.label.clone(),
            nodes: geom.surfaces.iter().map(|s| DiagramNode { id: s.surface_ray.clone(), kind: s.kind.to_string() }).collect(),
            edges: geom
                .curves
                .iter()
                .map(|c| DiagramEdge { k: c.k.clone(), l: c.l.clone(), c_in_k: c.c_in_k, c_in_l: c.c_in_l })
                .collect(),
        }
    }

    /// Undirected multigraph; each edge carries `c_k/c_l`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        let _ = writeln!(out, "  label=\"{}\";", self.label);
        for n in &self.nodes {
            let _ = writeln!(out, "  \"{}\" [label=\"S{}\\n{}\"];", n.id, n.id, n.kind);
        }
        for e in &self.edges {
            let _ = writeln!(out, "  \"{}\" -- \"{}\" [label=\"{}/{}\"];", e.k, e.l, e.c_in_k, e.c_in_l);
        }
        out.push_str("}\n");
        out
    }
}
