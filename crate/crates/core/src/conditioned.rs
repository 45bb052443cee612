//! Graphs decorated with per-vertex conditions.
//!
//! A condition pair (kappa, lambda) acts as phantom neighbours: kappa joins
//! the 0-side count of the vertex, lambda the 1-side count, wherever a
//! checker compares neighbour totals. A plain graph is the special case
//! with every pair (0, 0).

use crate::cardinal::{ExtendedCardinal, Fin};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Phantom 0-side (`kappa`) and 1-side (`lambda`) neighbour counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexConditions {
    pub kappa: ExtendedCardinal,
    pub lambda: ExtendedCardinal,
}

impl VertexConditions {
    pub const ZERO: VertexConditions = VertexConditions {
        kappa: Fin(0),
        lambda: Fin(0),
    };

    pub fn new(kappa: ExtendedCardinal, lambda: ExtendedCardinal) -> Self {
        VertexConditions { kappa, lambda }
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn is_finite(self) -> bool {
        self.kappa.is_finite() && self.lambda.is_finite()
    }

    /// Swaps the two sides; pairs with partition complement.
    pub fn mirrored(self) -> Self {
        VertexConditions {
            kappa: self.lambda,
            lambda: self.kappa,
        }
    }
}

impl Default for VertexConditions {
    fn default() -> Self {
        Self::ZERO
    }
}

/// A [`Graph`] with a total condition map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionedGraph {
    graph: Graph,
    conditions: Vec<VertexConditions>,
}

impl ConditionedGraph {
    /// Embeds a plain graph: every vertex gets conditions (0, 0).
    pub fn plain(graph: Graph) -> Self {
        let conditions = vec![VertexConditions::ZERO; graph.vertex_count()];
        ConditionedGraph { graph, conditions }
    }

    /// Attaches conditions to the named vertices; everyone else keeps (0, 0).
    pub fn new<I, S>(graph: Graph, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, VertexConditions)>,
        S: Into<String>,
    {
        let mut conditions = vec![VertexConditions::ZERO; graph.vertex_count()];
        let mut seen = vec![false; graph.vertex_count()];
        for (name, c) in entries {
            let name = name.into();
            let v = graph.require(&name)?;
            if seen[v.index()] {
                return Err(Error::DuplicateCondition(name));
            }
            seen[v.index()] = true;
            conditions[v.index()] = c;
        }
        Ok(ConditionedGraph { graph, conditions })
    }

    pub(crate) fn from_parts(graph: Graph, conditions: Vec<VertexConditions>) -> Self {
        debug_assert_eq!(graph.vertex_count(), conditions.len());
        ConditionedGraph { graph, conditions }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn conditions(&self, v: VertexId) -> VertexConditions {
        self.conditions[v.index()]
    }

    pub fn condition_slice(&self) -> &[VertexConditions] {
        &self.conditions
    }

    pub fn is_plain(&self) -> bool {
        self.conditions.iter().all(|c| c.is_zero())
    }

    pub fn all_finite(&self) -> bool {
        self.conditions.iter().all(|c| c.is_finite())
    }

    /// First vertex carrying an infinite condition, if any.
    pub fn first_infinite(&self) -> Option<VertexId> {
        self.graph
            .vertices()
            .find(|&v| !self.conditions[v.index()].is_finite())
    }

    /// Sum of kappa + lambda over all vertices.
    pub fn condition_sum(&self) -> ExtendedCardinal {
        self.conditions.iter().map(|c| c.kappa + c.lambda).sum()
    }

    /// Induced conditioned subgraph; conditions restricted along with edges.
    pub fn induced(&self, w: &[VertexId]) -> Result<ConditionedGraph> {
        let sub = self.graph.induced_subgraph(w)?;
        let conditions = sub
            .vertices()
            .map(|v| {
                let original = self
                    .graph
                    .vertex(sub.name(v))
                    .expect("induced vertices come from the parent");
                self.conditions[original.index()]
            })
            .collect();
        Ok(ConditionedGraph {
            graph: sub,
            conditions,
        })
    }

    /// Swaps kappa and lambda at every vertex.
    pub fn mirrored(&self) -> ConditionedGraph {
        ConditionedGraph {
            graph: self.graph.clone(),
            conditions: self.conditions.iter().map(|c| c.mirrored()).collect(),
        }
    }
}

/// One relabeled copy of each part, no edges between copies, conditions
/// carried over. Part k's map sends old vertex indices to ids in the result.
///
/// `rename` receives (part index, original identifier) and must produce
/// identifiers that are unique across the whole union.
pub fn disjoint_union_with<F>(
    parts: &[&ConditionedGraph],
    rename: F,
) -> Result<(ConditionedGraph, Vec<Vec<VertexId>>)>
where
    F: Fn(usize, &str) -> String,
{
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut entries = Vec::new();
    for (k, part) in parts.iter().enumerate() {
        let g = part.graph();
        for v in g.vertices() {
            let new_name = rename(k, g.name(v));
            let c = part.conditions(v);
            if !c.is_zero() {
                entries.push((new_name.clone(), c));
            }
            vertices.push(new_name);
        }
        for (a, b) in g.edges() {
            edges.push((rename(k, g.name(a)), rename(k, g.name(b))));
        }
    }
    let graph = Graph::new(vertices, edges)?;
    let union = ConditionedGraph::new(graph, entries)?;

    let maps = parts
        .iter()
        .enumerate()
        .map(|(k, part)| {
            let g = part.graph();
            g.vertices()
                .map(|v| {
                    union
                        .graph()
                        .vertex(&rename(k, g.name(v)))
                        .expect("every renamed vertex is in the union")
                })
                .collect()
        })
        .collect();
    Ok((union, maps))
}

/// [`disjoint_union_with`] under the default naming scheme `p<k>.<id>`
/// (1-based part numbers).
pub fn disjoint_union(
    parts: &[&ConditionedGraph],
) -> Result<(ConditionedGraph, Vec<Vec<VertexId>>)> {
    disjoint_union_with(parts, |k, name| format!("p{}.{}", k + 1, name))
}
