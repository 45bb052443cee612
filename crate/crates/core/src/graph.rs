//! Immutable finite simple graphs over string identifiers.
//!
//! Identifiers are interned once at construction: vertex index k carries the
//! k-th smallest identifier, so "lowest identifier" and "lowest index" agree.
//! Every tie-break in this crate leans on that ordering, and it is stable
//! across runs by construction.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

/// Dense index of a vertex inside one [`Graph`]'s identifier table.
///
/// Ids from different graphs must not be mixed; functions taking a
/// `VertexId` validate the range and report an input error on misuse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn new(index: usize) -> VertexId {
        VertexId(index as u32)
    }
}

/// A finite simple undirected graph. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    adj: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from explicit vertex and edge lists.
    ///
    /// Rejects duplicate identifiers, self-loops, repeated edges (in either
    /// orientation), and edges naming undeclared vertices.
    pub fn new<V, E, S, A, B>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        names.sort();
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateVertex(pair[0].clone()));
            }
        }
        let index: HashMap<String, VertexId> = names
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), VertexId::new(i)))
            .collect();

        let mut adj = vec![Vec::new(); names.len()];
        let mut seen = HashSet::new();
        let mut edge_count = 0usize;
        for (a, b) in edges {
            let (a, b) = (a.into(), b.into());
            let ia = *index
                .get(&a)
                .ok_or_else(|| Error::UnknownVertex(a.clone()))?;
            let ib = *index
                .get(&b)
                .ok_or_else(|| Error::UnknownVertex(b.clone()))?;
            if ia == ib {
                return Err(Error::SelfLoop(a));
            }
            let key = (ia.min(ib), ia.max(ib));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(
                    names[key.0.index()].clone(),
                    names[key.1.index()].clone(),
                ));
            }
            adj[ia.index()].push(ib);
            adj[ib.index()].push(ia);
            edge_count += 1;
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        Ok(Graph {
            names,
            index,
            adj,
            edge_count,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// All vertices in identifier order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + use<> {
        (0..self.names.len()).map(VertexId::new)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    /// Like [`Graph::vertex`] but failing with an input error.
    pub fn require(&self, name: &str) -> Result<VertexId> {
        self.vertex(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<VertexId> {
        if v.index() < self.names.len() {
            Ok(v)
        } else {
            Err(Error::VertexOutOfRange {
                index: v.index(),
                count: self.names.len(),
            })
        }
    }

    /// Neighbours of `v` in ascending identifier order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.index()].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj[a.index()].binary_search(&b).is_ok()
    }

    /// All edges as ordered pairs (lower id first), in identifier order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |v| {
            self.adj[v.index()]
                .iter()
                .copied()
                .filter(move |&w| v < w)
                .map(move |w| (v, w))
        })
    }

    /// Membership mask over the vertex range for a set given as a slice.
    pub(crate) fn mask(&self, s: &[VertexId]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.names.len()];
        for &v in s {
            self.check_vertex(v)?;
            mask[v.index()] = true;
        }
        Ok(mask)
    }

    pub(crate) fn degree_in_mask(&self, x: VertexId, mask: &[bool]) -> usize {
        self.adj[x.index()]
            .iter()
            .filter(|w| mask[w.index()])
            .count()
    }

    /// Number of neighbours of `x` inside the set `s`.
    pub fn degree_in(&self, x: VertexId, s: &[VertexId]) -> Result<usize> {
        self.check_vertex(x)?;
        let mask = self.mask(s)?;
        Ok(self.degree_in_mask(x, &mask))
    }

    /// The subgraph on `w` with exactly the edges internal to `w`.
    /// Identifiers are preserved; duplicates in `w` are tolerated.
    pub fn induced_subgraph(&self, w: &[VertexId]) -> Result<Graph> {
        let mask = self.mask(w)?;
        let vertices: Vec<&str> = self
            .vertices()
            .filter(|v| mask[v.index()])
            .map(|v| self.name(v))
            .collect();
        let edges: Vec<(&str, &str)> = self
            .edges()
            .filter(|&(a, b)| mask[a.index()] && mask[b.index()])
            .map(|(a, b)| (self.name(a), self.name(b)))
            .collect();
        Graph::new(vertices, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{graph, named};
    use proptest::prelude::*;

    #[test]
    fn vertices_follow_identifier_order() {
        let g = graph(&["b", "a", "c"], &[("c", "a")]);
        let names: Vec<&str> = g.vertices().map(|v| g.name(v)).collect();
        assert_eq!(names, ["a", "b", "c"]);
        assert!(g.has_edge(g.vertex("a").unwrap(), g.vertex("c").unwrap()));
    }

    #[test]
    fn construction_rejects_malformed_input() {
        assert!(matches!(
            Graph::new(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(Error::DuplicateVertex(_))
        ));
        assert!(matches!(
            Graph::new(["a"], [("a", "a")]),
            Err(Error::SelfLoop(_))
        ));
        assert!(matches!(
            Graph::new(["a", "b"], [("a", "b"), ("b", "a")]),
            Err(Error::DuplicateEdge(_, _))
        ));
        assert!(matches!(
            Graph::new(["a"], [("a", "z")]),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn degree_in_counts_neighbours_inside_the_set() {
        // C4: a-b-c-d-a
        let g = graph(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        );
        let a = named(&g, "a");
        assert_eq!(
            g.degree_in(a, &[named(&g, "b"), named(&g, "d")]).unwrap(),
            2
        );
        assert_eq!(g.degree_in(a, &[named(&g, "c")]).unwrap(), 0);
        assert_eq!(g.degree_in(a, &[]).unwrap(), 0);
    }

    #[test]
    fn degree_in_on_star_center_sees_all_leaves() {
        let g = graph(
            &["hub", "l1", "l2", "l3", "l4", "l5"],
            &[
                ("hub", "l1"),
                ("hub", "l2"),
                ("hub", "l3"),
                ("hub", "l4"),
                ("hub", "l5"),
            ],
        );
        let hub = named(&g, "hub");
        let all: Vec<_> = g.vertices().collect();
        assert_eq!(g.degree_in(hub, &all).unwrap(), 5);
        assert_eq!(g.degree(hub), 5);
    }

    #[test]
    fn induced_subgraph_keeps_internal_edges_only() {
        let tri = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        let sub = tri
            .induced_subgraph(&[named(&tri, "a"), named(&tri, "b")])
            .unwrap();
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.edge_count(), 1);

        let path = graph(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]);
        let sub = path
            .induced_subgraph(&[named(&path, "a"), named(&path, "c"), named(&path, "d")])
            .unwrap();
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 1);
        assert!(sub.has_edge(named(&sub, "c"), named(&sub, "d")));
        assert_eq!(sub.degree(named(&sub, "a")), 0);

        let empty = path.induced_subgraph(&[]).unwrap();
        assert_eq!(empty.vertex_count(), 0);
        assert_eq!(empty.edge_count(), 0);
    }

    #[test]
    fn out_of_range_ids_are_input_errors() {
        let g = graph(&["a"], &[]);
        assert!(g.degree_in(VertexId::new(7), &[]).is_err());
        assert!(g.induced_subgraph(&[VertexId::new(7)]).is_err());
    }

    proptest! {
        #[test]
        fn handshake_sum_of_degrees(g in crate::testutil::arb_graph(10)) {
            let total: usize = g.vertices().map(|v| g.degree(v)).sum();
            prop_assert_eq!(total, 2 * g.edge_count());
        }

        #[test]
        fn induced_subgraph_is_idempotent(
            (g, w) in crate::testutil::arb_graph_with_subset(9),
        ) {
            let once = g.induced_subgraph(&w).unwrap();
            let all: Vec<_> = once.vertices().collect();
            let twice = once.induced_subgraph(&all).unwrap();
            prop_assert_eq!(once, twice);
        }
    }
}
