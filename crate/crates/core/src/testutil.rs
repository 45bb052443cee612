//! Helpers shared by the unit tests.

use proptest::prelude::*;

use crate::cardinal::{ExtendedCardinal, Fin, Infinite};
use crate::conditioned::{ConditionedGraph, VertexConditions};
use crate::graph::{Graph, VertexId};
use crate::partition::{Partition, Side};

pub fn graph(vertices: &[&str], edges: &[(&str, &str)]) -> Graph {
    Graph::new(vertices.iter().copied(), edges.iter().copied()).unwrap()
}

pub fn named(g: &Graph, name: &str) -> VertexId {
    g.vertex(name).unwrap()
}

/// Identifiers v00, v01, ... whose lexicographic order matches numeric order.
pub fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i:02}")).collect()
}

/// Graph on `n` vertices from a mask over the pairs (i, j), i < j, in
/// lexicographic pair order.
pub fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let names = ids(n);
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask[k] {
                edges.push((names[i].clone(), names[j].clone()));
            }
            k += 1;
        }
    }
    Graph::new(names, edges).unwrap()
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs)
            .prop_map(move |mask| graph_from_mask(n, &mask))
    })
}

pub fn arb_graph_with_subset(max_n: usize) -> impl Strategy<Value = (Graph, Vec<VertexId>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        proptest::collection::vec(any::<bool>(), n).prop_map(move |keep| {
            let w = g.vertices().filter(|v| keep[v.index()]).collect();
            (g.clone(), w)
        })
    })
}

pub fn arb_graph_and_partition(max_n: usize) -> impl Strategy<Value = (Graph, Partition)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        proptest::collection::vec(any::<bool>(), n).prop_map(move |bits| {
            let sides = bits
                .iter()
                .map(|&b| if b { Side::One } else { Side::Zero })
                .collect();
            (g.clone(), Partition::from_sides(sides))
        })
    })
}

fn arb_condition_value(max: u64, allow_infinite: bool) -> BoxedStrategy<ExtendedCardinal> {
    if allow_infinite {
        prop_oneof![4 => (0..=max).prop_map(Fin), 1 => Just(Infinite)].boxed()
    } else {
        (0..=max).prop_map(Fin).boxed()
    }
}

pub fn arb_conditioned(
    max_n: usize,
    max_condition: u64,
    allow_infinite: bool,
) -> impl Strategy<Value = ConditionedGraph> {
    arb_graph(max_n).prop_flat_map(move |g| {
        let n = g.vertex_count();
        proptest::collection::vec(
            (
                arb_condition_value(max_condition, allow_infinite),
                arb_condition_value(max_condition, allow_infinite),
            ),
            n,
        )
        .prop_map(move |pairs| {
            let entries = g
                .vertices()
                .map(|v| {
                    let (k, l) = pairs[v.index()];
                    (g.name(v).to_owned(), VertexConditions::new(k, l))
                })
                .collect::<Vec<_>>();
            ConditionedGraph::new(g.clone(), entries).unwrap()
        })
    })
}

pub fn arb_conditioned_and_partition(
    max_n: usize,
    max_condition: u64,
    allow_infinite: bool,
) -> impl Strategy<Value = (ConditionedGraph, Partition)> {
    arb_conditioned(max_n, max_condition, allow_infinite).prop_flat_map(|cg| {
        let n = cg.graph().vertex_count();
        proptest::collection::vec(any::<bool>(), n).prop_map(move |bits| {
            let sides = bits
                .iter()
                .map(|&b| if b { Side::One } else { Side::Zero })
                .collect();
            (cg.clone(), Partition::from_sides(sides))
        })
    })
}
