//! File formats and DOT emission. One instance format carries both plain
//! and conditioned graphs: an absent conditions entry means (0, 0), and
//! emission is canonical (sorted identifiers, zero conditions omitted,
//! fixed field order), so parse followed by emit is the identity on
//! canonical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cardinal::ExtendedCardinal;
use crate::conditioned::{ConditionedGraph, VertexConditions};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::partition::{Partition, Side};
use crate::reduce::{GadgetGraph, GadgetRole};

pub const FORMAT_VERSION: u32 = 1;

fn format_version() -> u32 {
    FORMAT_VERSION
}

/// Per-vertex condition pair as it appears on disk; values are
/// non-negative integers or the token "inf".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionEntry {
    pub kappa: ExtendedCardinal,
    pub lambda: ExtendedCardinal,
}

/// The on-disk shape of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default = "format_version")]
    pub format: u32,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub conditions: BTreeMap<String, ConditionEntry>,
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<ConditionedGraph> {
        if self.format != FORMAT_VERSION {
            return Err(Error::parse(
                "instance",
                format!("unsupported format version {}", self.format),
            ));
        }
        let graph = Graph::new(self.vertices, self.edges)?;
        ConditionedGraph::new(
            graph,
            self.conditions
                .into_iter()
                .map(|(name, c)| (name, VertexConditions::new(c.kappa, c.lambda))),
        )
    }

    /// The canonical file for an instance: sorted vertices and edges,
    /// zero conditions left out.
    pub fn from_instance(cg: &ConditionedGraph) -> InstanceFile {
        let g = cg.graph();
        let conditions = g
            .vertices()
            .filter(|&v| !cg.conditions(v).is_zero())
            .map(|v| {
                let c = cg.conditions(v);
                (
                    g.name(v).to_owned(),
                    ConditionEntry {
                        kappa: c.kappa,
                        lambda: c.lambda,
                    },
                )
            })
            .collect();
        InstanceFile {
            format: FORMAT_VERSION,
            vertices: g.names().map(str::to_owned).collect(),
            edges: g
                .edges()
                .map(|(a, b)| (g.name(a).to_owned(), g.name(b).to_owned()))
                .collect(),
            conditions,
        }
    }
}

pub fn parse_instance(bytes: &[u8]) -> Result<ConditionedGraph> {
    let file: InstanceFile =
        serde_json::from_slice(bytes).map_err(|e| Error::parse("instance", e))?;
    file.into_instance()
}

pub fn emit_instance(cg: &ConditionedGraph) -> String {
    let mut out = serde_json::to_string_pretty(&InstanceFile::from_instance(cg))
        .expect("instance files serialize without fail");
    out.push('\n');
    out
}

/// The on-disk shape of a partition, plus the recovery provenance the
/// `recover` pipeline step attaches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionFile {
    #[serde(default = "format_version")]
    pub format: u32,
    pub assignment: BTreeMap<String, Side>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copy: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flipped: Option<bool>,
}

impl PartitionFile {
    pub fn new(g: &Graph, p: &Partition) -> Result<PartitionFile> {
        if p.len() != g.vertex_count() {
            return Err(Error::PartitionSize {
                got: p.len(),
                want: g.vertex_count(),
            });
        }
        Ok(PartitionFile {
            format: FORMAT_VERSION,
            assignment: p
                .iter()
                .map(|(v, side)| (g.name(v).to_owned(), side))
                .collect(),
            copy: None,
            flipped: None,
        })
    }

    pub fn to_partition(&self, g: &Graph) -> Result<Partition> {
        if self.format != FORMAT_VERSION {
            return Err(Error::parse(
                "partition",
                format!("unsupported format version {}", self.format),
            ));
        }
        Partition::from_assignment(g, self.assignment.iter().map(|(n, &s)| (n.clone(), s)))
    }
}

pub fn parse_partition(g: &Graph, bytes: &[u8]) -> Result<Partition> {
    let file: PartitionFile =
        serde_json::from_slice(bytes).map_err(|e| Error::parse("partition", e))?;
    file.to_partition(g)
}

pub fn emit_partition(g: &Graph, p: &Partition) -> Result<String> {
    let mut out = serde_json::to_string_pretty(&PartitionFile::new(g, p)?)
        .expect("partition files serialize without fail");
    out.push('\n');
    Ok(out)
}

fn dot_quoted(name: &str) -> String {
    let mut quoted = String::with_capacity(name.len() + 2);
    quoted.push('"');
    for ch in name.chars() {
        if ch == '"' || ch == '\\' {
            quoted.push('\\');
        }
        quoted.push(ch);
    }
    quoted.push('"');
    quoted
}

fn dot_fill(side: Side) -> &'static str {
    match side {
        Side::Zero => "white",
        Side::One => "gray75",
    }
}

fn dot_body(
    g: &Graph,
    p: Option<&Partition>,
    mut node_attrs: impl FnMut(VertexId) -> Vec<String>,
) -> Result<String> {
    if let Some(p) = p
        && p.len() != g.vertex_count()
    {
        return Err(Error::PartitionSize {
            got: p.len(),
            want: g.vertex_count(),
        });
    }
    let mut out = String::from("graph {\n");
    for v in g.vertices() {
        let mut attrs = node_attrs(v);
        if let Some(p) = p {
            attrs.push("style=filled".to_owned());
            attrs.push(format!("fillcolor={}", dot_fill(p.side(v))));
        }
        if attrs.is_empty() {
            writeln!(out, "  {};", dot_quoted(g.name(v))).expect("write to string");
        } else {
            writeln!(out, "  {} [{}];", dot_quoted(g.name(v)), attrs.join(", "))
                .expect("write to string");
        }
    }
    for (a, b) in g.edges() {
        writeln!(
            out,
            "  {} -- {};",
            dot_quoted(g.name(a)),
            dot_quoted(g.name(b))
        )
        .expect("write to string");
    }
    out.push_str("}\n");
    Ok(out)
}

pub fn emit_dot(g: &Graph, p: Option<&Partition>) -> Result<String> {
    dot_body(g, p, |_| Vec::new())
}

/// Like [`emit_dot`] but with each vertex's gadget role as its label and
/// one node shape per layer.
pub fn emit_gadget_dot(gg: &GadgetGraph, p: Option<&Partition>) -> Result<String> {
    let g = gg.graph();
    dot_body(g, p, |v| {
        let role = gg.role(v);
        let shape = match role {
            GadgetRole::U { .. } => "doublecircle",
            GadgetRole::V { .. } => "circle",
            GadgetRole::W { .. } => "square",
            GadgetRole::X { .. } => "diamond",
            GadgetRole::Copy { .. } => "box",
        };
        vec![
            format!("label={}", dot_quoted(&role.to_string())),
            format!("shape={shape}"),
        ]
    })
}
