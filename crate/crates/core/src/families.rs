//! Seeded instance generators. Every family is deterministic per
//! (parameters, seed) and across platforms: all randomness flows through
//! a ChaCha stream keyed by the seed alone.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cardinal::{ExtendedCardinal, Fin, Infinite};
use crate::conditioned::{ConditionedGraph, VertexConditions};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Zero-padded decimal names so identifier order equals numeric order.
fn numbered(prefix: &str, count: usize) -> Vec<String> {
    let width = count.saturating_sub(1).to_string().len();
    (0..count).map(|i| format!("{prefix}{i:0width$}")).collect()
}

fn probability(context: &str, p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(Error::Unsatisfiable(format!(
            "{context} {p} lies outside [0, 1]"
        )))
    }
}

/// Each of the n·(n−1)/2 possible edges independently with probability p.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let p = probability("edge probability", p)?;
    let names = numbered("v", n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Graph::new(names, edges)
}

/// A gnp graph augmented deterministically until every degree reaches t:
/// the lowest-degree vertex (lowest identifier on ties) is repeatedly
/// joined to its lowest-degree non-neighbour.
pub fn min_degree(n: usize, t: u64, seed: u64) -> Result<Graph> {
    if t == 0 {
        return Err(Error::ZeroThreshold);
    }
    if (n as u64) <= t {
        return Err(Error::Unsatisfiable(format!(
            "minimum degree {t} needs more than {n} vertices"
        )));
    }
    let p = (2.0 * t as f64 / (n - 1) as f64).min(1.0);
    let base = gnp(n, p, seed)?;
    let names: Vec<String> = base.names().map(str::to_owned).collect();
    let mut adjacent: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (a, b) in base.edges() {
        adjacent[a.index()].insert(b.index());
        adjacent[b.index()].insert(a.index());
    }
    while let Some(x) = (0..n)
        .filter(|&v| (adjacent[v].len() as u64) < t)
        .min_by_key(|&v| (adjacent[v].len(), v))
    {
        let y = (0..n)
            .filter(|&v| v != x && !adjacent[x].contains(&v))
            .min_by_key(|&v| (adjacent[v].len(), v))
            .expect("a vertex below the degree bound has a non-neighbour");
        adjacent[x].insert(y);
        adjacent[y].insert(x);
    }
    let mut edges = Vec::new();
    for (a, nbrs) in adjacent.iter().enumerate() {
        for &b in nbrs.iter().filter(|&&b| a < b) {
            edges.push((names[a].clone(), names[b].clone()));
        }
    }
    Graph::new(names, edges)
}

/// Hubs each adjacent to at least t leaves, no hub-to-hub edges, every
/// leaf of degree below t. Each hub draws exactly t leaves, preferring
/// the leaves with the most spare capacity; capacity per leaf is t−1, so
/// the capacity precheck guarantees the draw never strands.
pub fn star_bipartite(n_hubs: usize, n_leaves: usize, t: u64, seed: u64) -> Result<Graph> {
    if t == 0 {
        return Err(Error::ZeroThreshold);
    }
    let hub_names = numbered("h", n_hubs);
    let leaf_names = numbered("l", n_leaves);
    let mut names = hub_names.clone();
    names.extend(leaf_names.iter().cloned());
    if n_hubs == 0 {
        return Graph::new(names, Vec::<(String, String)>::new());
    }
    if t as usize > n_leaves {
        return Err(Error::Unsatisfiable(format!(
            "every hub needs {t} distinct leaves but only {n_leaves} exist"
        )));
    }
    if t == 1 {
        return Err(Error::Unsatisfiable(
            "leaf degrees below 1 leave hubs with no neighbours".to_owned(),
        ));
    }
    let demand = (n_hubs as u64) * t;
    let supply = (n_leaves as u64) * (t - 1);
    if demand > supply {
        return Err(Error::Unsatisfiable(format!(
            "{demand} hub edges exceed the leaf capacity {supply}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut capacity = vec![t - 1; n_leaves];
    let mut edges = Vec::new();
    for hub in &hub_names {
        let mut open: Vec<usize> = (0..n_leaves).filter(|&l| capacity[l] > 0).collect();
        open.sort_by_key(|&l| (std::cmp::Reverse(capacity[l]), l));
        let need = t as usize;
        let boundary = capacity[open[need - 1]];
        let mut chosen: Vec<usize> = open
            .iter()
            .copied()
            .filter(|&l| capacity[l] > boundary)
            .collect();
        let at_boundary: Vec<usize> = open
            .into_iter()
            .filter(|&l| capacity[l] == boundary)
            .collect();
        let mut drawn: Vec<usize> =
            rand::seq::index::sample(&mut rng, at_boundary.len(), need - chosen.len())
                .iter()
                .map(|i| at_boundary[i])
                .collect();
        drawn.sort_unstable();
        chosen.extend(drawn);
        for l in chosen {
            capacity[l] -= 1;
            edges.push((hub.clone(), leaf_names[l].clone()));
        }
    }
    Graph::new(names, edges)
}

/// Decorates any graph with random conditions: each value independently
/// becomes Infinite with probability p_inf, otherwise a uniform draw from
/// 0..=max.
pub fn decorate_conditions(
    graph: Graph,
    max_kappa: u64,
    max_lambda: u64,
    p_inf: f64,
    seed: u64,
) -> Result<ConditionedGraph> {
    let p_inf = probability("infinity probability", p_inf)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |max: u64| -> ExtendedCardinal {
        if rng.random::<f64>() < p_inf {
            Infinite
        } else {
            Fin(rng.random_range(0..=max))
        }
    };
    let entries: Vec<(String, VertexConditions)> = graph
        .names()
        .map(|name| {
            (
                name.to_owned(),
                VertexConditions::new(draw(max_kappa), draw(max_lambda)),
            )
        })
        .collect();
    ConditionedGraph::new(graph, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gnp_extremes() {
        let empty = gnp(6, 0.0, 7).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let complete = gnp(6, 1.0, 7).unwrap();
        assert_eq!(complete.edge_count(), 15);
        assert!(gnp(6, 1.5, 7).is_err());
    }

    #[test]
    fn min_degree_reaches_the_bound() {
        let g = min_degree(8, 3, 11).unwrap();
        assert!(g.min_degree() >= 3);
        assert!(min_degree(3, 3, 0).is_err());
    }

    #[test]
    fn star_bipartite_fits_the_predicate() {
        let g = star_bipartite(2, 10, 3, 5).unwrap();
        for v in g.vertices() {
            let name = g.name(v);
            if name.starts_with('h') {
                assert!(g.degree(v) >= 3);
                for &u in g.neighbors(v) {
                    assert!(g.name(u).starts_with('l'), "no hub-to-hub edges");
                }
            } else {
                assert!(g.degree(v) < 3, "leaf {name} too dense");
            }
        }
    }

    #[test]
    fn star_bipartite_rejects_impossible_parameters() {
        assert!(star_bipartite(2, 2, 3, 0).is_err());
        assert!(star_bipartite(2, 10, 1, 0).is_err());
        // 5 hubs demand 15 edges, 6 leaves supply 12
        assert!(star_bipartite(5, 6, 3, 0).is_err());
    }

    #[test]
    fn decoration_covers_the_range() {
        let finite = decorate_conditions(gnp(20, 0.1, 3).unwrap(), 2, 3, 0.0, 9).unwrap();
        assert!(finite.all_finite());
        let infinite = decorate_conditions(gnp(20, 0.1, 3).unwrap(), 2, 3, 1.0, 9).unwrap();
        assert!(
            infinite
                .condition_slice()
                .iter()
                .all(|c| c.kappa == Infinite && c.lambda == Infinite)
        );
    }

    proptest! {
        #[test]
        fn generators_are_deterministic(seed in 0u64..1000) {
            prop_assert_eq!(gnp(25, 0.3, seed).unwrap(), gnp(25, 0.3, seed).unwrap());
            prop_assert_eq!(
                min_degree(12, 3, seed).unwrap(),
                min_degree(12, 3, seed).unwrap()
            );
            prop_assert_eq!(
                star_bipartite(3, 9, 3, seed).unwrap(),
                star_bipartite(3, 9, 3, seed).unwrap()
            );
            let a = decorate_conditions(gnp(10, 0.2, seed).unwrap(), 3, 3, 0.2, seed).unwrap();
            let b = decorate_conditions(gnp(10, 0.2, seed).unwrap(), 3, 3, 0.2, seed).unwrap();
            prop_assert_eq!(a.condition_slice(), b.condition_slice());
        }

        #[test]
        fn star_bipartite_always_fits_the_predicate(
            hubs in 1usize..5,
            spare in 0usize..6,
            t in 2u64..5,
            seed in 0u64..50,
        ) {
            // smallest feasible leaf count, plus slack
            let leaves = ((hubs as u64 * t).div_ceil(t - 1).max(t) as usize) + spare;
            let g = star_bipartite(hubs, leaves, t, seed).unwrap();
            for v in g.vertices() {
                if g.name(v).starts_with('h') {
                    prop_assert!(g.degree(v) as u64 >= t);
                    prop_assert!(g.neighbors(v).iter().all(|&u| g.name(u).starts_with('l')));
                } else {
                    prop_assert!((g.degree(v) as u64) < t);
                }
            }
        }

        #[test]
        fn min_degree_always_reaches_the_bound(
            n in 4usize..20,
            t in 1u64..4,
            seed in 0u64..50,
        ) {
            prop_assume!(n as u64 > t);
            let g = min_degree(n, t, seed).unwrap();
            prop_assert!(g.min_degree() as u64 >= t);
        }
    }
}
