//! Structure discovery relative to the threshold t: the dense core obtained
//! by peeling, the staged sparse/anchored split of the rest, and the edge
//! sparsifier built on top of both.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

fn ensure_threshold(t: u64) -> Result<()> {
    if t == 0 {
        return Err(Error::ZeroThreshold);
    }
    Ok(())
}

/// The unique maximum vertex set in which every member keeps at least `t`
/// neighbours inside the set. Peeling order cannot change the result: a
/// vertex outside the maximum set dies under every order, and no member
/// ever drops below `t` internal neighbours.
pub fn t_core(g: &Graph, t: u64) -> Result<Vec<VertexId>> {
    ensure_threshold(t)?;
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<u64> = (0..n).map(|i| g.degree(VertexId::new(i)) as u64).collect();
    let mut doomed: Vec<usize> = (0..n).filter(|&i| degree[i] < t).collect();
    let mut head = 0;
    while head < doomed.len() {
        let i = doomed[head];
        head += 1;
        alive[i] = false;
        for &y in g.neighbors(VertexId::new(i)) {
            let j = y.index();
            if alive[j] {
                degree[j] -= 1;
                // enqueue exactly at the crossing, never twice
                if degree[j] + 1 == t {
                    doomed.push(j);
                }
            }
        }
    }
    Ok((0..n).filter(|&i| alive[i]).map(VertexId::new).collect())
}

/// One round of the staged split: the vertices that joined `v1` and `v2`
/// during this round, in identifier order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub index: usize,
    pub v1: Vec<VertexId>,
    pub v2: Vec<VertexId>,
}

/// Output of [`v1_v2_decompose`]: `v1`, `v2` and `core` partition the
/// vertex set; `stages` concatenate to `v1` and `v2` exactly; `core`
/// equals [`t_core`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub threshold: u64,
    pub v1: Vec<VertexId>,
    pub v2: Vec<VertexId>,
    pub core: Vec<VertexId>,
    pub stages: Vec<Stage>,
}

/// Splits the vertices into a sparse part `v1`, an anchored part `v2` and
/// the untouched core by alternating two batch rules until neither fires:
/// an unassigned vertex joins `v1` when it has fewer than `t` neighbours
/// outside the accumulated `v2`, and joins `v2` when it has fewer than `t`
/// neighbours outside the accumulated `v1` and the earlier `v2`. Every
/// batch is computed against a snapshot, so members of one batch cannot
/// admit each other.
///
/// Output properties, guaranteed: every `v1` vertex has fewer than `t`
/// neighbours in `v1 ∪ core`; every `v2` vertex has at least one neighbour
/// in `v1`; `core` equals [`t_core`].
pub fn v1_v2_decompose(g: &Graph, t: u64) -> Result<Decomposition> {
    ensure_threshold(t)?;
    let n = g.vertex_count();
    let mut assigned = vec![false; n];
    let mut in_v1 = vec![false; n];
    let mut in_v2 = vec![false; n];
    let mut v1 = Vec::new();
    let mut v2 = Vec::new();
    let mut stages = Vec::new();
    loop {
        let batch1: Vec<VertexId> = (0..n)
            .filter(|&i| !assigned[i])
            .map(VertexId::new)
            .filter(|&x| neighbours_where(g, x, |j| !in_v2[j]) < t)
            .collect();
        for &x in &batch1 {
            assigned[x.index()] = true;
            in_v1[x.index()] = true;
        }
        let batch2: Vec<VertexId> = (0..n)
            .filter(|&i| !assigned[i])
            .map(VertexId::new)
            .filter(|&x| neighbours_where(g, x, |j| !in_v1[j] && !in_v2[j]) < t)
            .collect();
        for &x in &batch2 {
            assigned[x.index()] = true;
            in_v2[x.index()] = true;
        }
        if batch1.is_empty() && batch2.is_empty() {
            break;
        }
        v1.extend_from_slice(&batch1);
        v2.extend_from_slice(&batch2);
        stages.push(Stage {
            index: stages.len(),
            v1: batch1,
            v2: batch2,
        });
    }
    let core = (0..n)
        .filter(|&i| !assigned[i])
        .map(VertexId::new)
        .collect();
    Ok(Decomposition {
        threshold: t,
        v1,
        v2,
        core,
        stages,
    })
}

fn neighbours_where(g: &Graph, x: VertexId, keep: impl Fn(usize) -> bool) -> u64 {
    g.neighbors(x).iter().filter(|y| keep(y.index())).count() as u64
}

/// The vertices of degree below `t`.
pub fn finite_degree_set(g: &Graph, t: u64) -> Result<Vec<VertexId>> {
    ensure_threshold(t)?;
    Ok(g.vertices().filter(|&x| (g.degree(x) as u64) < t).collect())
}

/// Result of [`sparsify`]: the thinned graph over the unchanged vertex set,
/// the removed edges, and the decomposition they were judged against.
#[derive(Debug, Clone)]
pub struct Sparsified {
    pub graph: Graph,
    pub deleted: Vec<(VertexId, VertexId)>,
    pub decomposition: Decomposition,
    /// Set when the input had a nonempty core; the deletion rules are
    /// intended for core-free graphs and this flag marks the stretch.
    pub core_warning: bool,
}

/// Deletes every edge joining two `v2` vertices and every edge joining two
/// `v1` vertices that both have degree ≥ `t`. Edges touching the core or a
/// low-degree `v1` vertex are never deleted.
pub fn sparsify(g: &Graph, t: u64) -> Result<Sparsified> {
    let decomposition = v1_v2_decompose(g, t)?;
    let n = g.vertex_count();
    let mut dense_v1 = vec![false; n];
    for &x in &decomposition.v1 {
        dense_v1[x.index()] = (g.degree(x) as u64) >= t;
    }
    let mut in_v2 = vec![false; n];
    for &x in &decomposition.v2 {
        in_v2[x.index()] = true;
    }
    let (deleted, kept): (Vec<_>, Vec<_>) = g.edges().partition(|&(a, b)| {
        let (a, b) = (a.index(), b.index());
        (dense_v1[a] && dense_v1[b]) || (in_v2[a] && in_v2[b])
    });
    let names: Vec<String> = g.names().map(str::to_owned).collect();
    let edges: Vec<(String, String)> = kept
        .into_iter()
        .map(|(a, b)| (g.name(a).to_owned(), g.name(b).to_owned()))
        .collect();
    let thinned = Graph::new(names, edges).expect("edge subset of a valid graph stays valid");
    let core_warning = !decomposition.core.is_empty();
    Ok(Sparsified {
        graph: thinned,
        deleted,
        decomposition,
        core_warning,
    })
}

/// Counts the three-way vertex assignments (`v1`/`v2`/`core`) satisfying
/// the decomposition's output properties, by enumerating all 3^|V|
/// colourings. The operational output always qualifies, so the count is at
/// least one; whether it is exactly one is an experiment, not a promise.
pub fn count_valid_splits(g: &Graph, t: u64) -> Result<u64> {
    ensure_threshold(t)?;
    let n = g.vertex_count();
    const CAP: usize = 12;
    if n > CAP {
        return Err(Error::BruteForceSize { got: n, cap: CAP });
    }
    let core = t_core(g, t)?;
    let mut in_core = vec![false; n];
    for &x in &core {
        in_core[x.index()] = true;
    }
    let mut colours = vec![0u8; n]; // 0 = v1, 1 = v2, 2 = core
    let mut count = 0;
    loop {
        if split_is_valid(g, t, &colours, &in_core) {
            count += 1;
        }
        // odometer step over base-3 strings
        let mut i = 0;
        while i < n && colours[i] == 2 {
            colours[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        colours[i] += 1;
    }
    Ok(count)
}

fn split_is_valid(g: &Graph, t: u64, colours: &[u8], in_core: &[bool]) -> bool {
    for (i, &c) in colours.iter().enumerate() {
        if (c == 2) != in_core[i] {
            return false;
        }
        let x = VertexId::new(i);
        match c {
            0 => {
                let inside = neighbours_where(g, x, |j| colours[j] != 1);
                if inside >= t {
                    return false;
                }
            }
            1 if neighbours_where(g, x, |j| colours[j] == 0) == 0 => {
                return false;
            }
            _ => {}
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{self, graph};
    use proptest::prelude::*;

    fn name_set(g: &Graph, vs: &[VertexId]) -> Vec<String> {
        vs.iter().map(|&v| g.name(v).to_owned()).collect()
    }

    fn cycle(names: &[&str]) -> Graph {
        let edges: Vec<(&str, &str)> = (0..names.len())
            .map(|i| (names[i], names[(i + 1) % names.len()]))
            .collect();
        graph(names, &edges)
    }

    fn star(leaves: usize) -> Graph {
        let names: Vec<String> = std::iter::once("c".to_owned())
            .chain((1..=leaves).map(|i| format!("l{i}")))
            .collect();
        let edges: Vec<(String, String)> = (1..=leaves)
            .map(|i| ("c".to_owned(), format!("l{i}")))
            .collect();
        Graph::new(names, edges).unwrap()
    }

    #[test]
    fn core_of_a_cycle_is_everything() {
        let g = cycle(&["a", "b", "c", "d"]);
        let core = t_core(&g, 2).unwrap();
        assert_eq!(core.len(), 4);
    }

    #[test]
    fn core_of_a_path_cascades_to_nothing() {
        let g = graph(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]);
        assert!(t_core(&g, 2).unwrap().is_empty());
    }

    #[test]
    fn threshold_one_keeps_the_non_isolated() {
        let g = graph(&["a", "b", "z"], &[("a", "b")]);
        let core = t_core(&g, 1).unwrap();
        assert_eq!(name_set(&g, &core), ["a", "b"]);
    }

    #[test]
    fn zero_threshold_is_rejected() {
        let g = graph(&["a"], &[]);
        assert!(matches!(t_core(&g, 0), Err(Error::ZeroThreshold)));
        assert!(matches!(v1_v2_decompose(&g, 0), Err(Error::ZeroThreshold)));
        assert!(matches!(
            finite_degree_set(&g, 0),
            Err(Error::ZeroThreshold)
        ));
    }

    /// Union of every subset with the ≥ t internal-degree property. The
    /// family is closed under union, so this is the maximum.
    fn core_by_subsets(g: &Graph, t: u64) -> Vec<VertexId> {
        let n = g.vertex_count();
        let mut member = vec![false; n];
        for mask in 0u32..(1 << n) {
            let ok = (0..n).all(|i| {
                mask >> i & 1 == 0
                    || g.neighbors(VertexId::new(i))
                        .iter()
                        .filter(|y| mask >> y.index() & 1 == 1)
                        .count() as u64
                        >= t
            });
            if ok {
                for (i, m) in member.iter_mut().enumerate() {
                    *m |= mask >> i & 1 == 1;
                }
            }
        }
        (0..n).filter(|&i| member[i]).map(VertexId::new).collect()
    }

    #[test]
    fn peeling_matches_exhaustive_subset_search() {
        for n in 0..=5usize {
            let pairs = n * n.saturating_sub(1) / 2;
            for edge_mask in 0..(1u32 << pairs) {
                let mask: Vec<bool> = (0..pairs).map(|k| edge_mask >> k & 1 == 1).collect();
                let g = testutil::graph_from_mask(n, &mask);
                for t in 1..=3 {
                    assert_eq!(t_core(&g, t).unwrap(), core_by_subsets(&g, t));
                }
            }
        }
    }

    #[test]
    fn star_splits_into_leaves_then_center() {
        let g = star(5);
        let d = v1_v2_decompose(&g, 2).unwrap();
        assert_eq!(name_set(&g, &d.v1), ["l1", "l2", "l3", "l4", "l5"]);
        assert_eq!(name_set(&g, &d.v2), ["c"]);
        assert!(d.core.is_empty());
        assert_eq!(d.stages.len(), 1);
        assert_eq!(d.stages[0].v1.len(), 5);
        assert_eq!(d.stages[0].v2.len(), 1);
    }

    #[test]
    fn cycle_decomposes_to_pure_core() {
        let g = cycle(&["a", "b", "c", "d"]);
        let d = v1_v2_decompose(&g, 2).unwrap();
        assert!(d.v1.is_empty());
        assert!(d.v2.is_empty());
        assert_eq!(d.core.len(), 4);
        assert!(d.stages.is_empty());
    }

    #[test]
    fn single_edge_lands_entirely_in_v1() {
        let g = graph(&["a", "b"], &[("a", "b")]);
        let d = v1_v2_decompose(&g, 2).unwrap();
        assert_eq!(name_set(&g, &d.v1), ["a", "b"]);
        assert!(d.v2.is_empty());
        assert!(d.core.is_empty());
        assert_eq!(d.stages.len(), 1);
    }

    #[test]
    fn finite_degree_examples() {
        let g = star(5);
        assert_eq!(
            name_set(&g, &finite_degree_set(&g, 3).unwrap()),
            ["l1", "l2", "l3", "l4", "l5"]
        );
        let c4 = cycle(&["a", "b", "c", "d"]);
        assert_eq!(finite_degree_set(&c4, 5).unwrap().len(), 4);
        let iso = graph(&["a", "b", "z"], &[("a", "b")]);
        assert_eq!(name_set(&iso, &finite_degree_set(&iso, 1).unwrap()), ["z"]);
    }

    #[test]
    fn sparsify_cuts_the_hub_edge_and_keeps_leaf_edges() {
        // two adjacent hubs, each with 3 private leaves, t = 3
        let mut names = vec!["h1".to_owned(), "h2".to_owned()];
        let mut edges = vec![("h1".to_owned(), "h2".to_owned())];
        for h in ["h1", "h2"] {
            for i in 1..=3 {
                let leaf = format!("{h}.{i}");
                edges.push((h.to_owned(), leaf.clone()));
                names.push(leaf);
            }
        }
        let g = Graph::new(names, edges).unwrap();
        let s = sparsify(&g, 3).unwrap();
        assert_eq!(s.deleted.len(), 1);
        let (a, b) = s.deleted[0];
        assert_eq!((g.name(a), g.name(b)), ("h1", "h2"));
        assert_eq!(s.graph.edge_count(), g.edge_count() - 1);
        assert!(!s.core_warning);
    }

    #[test]
    fn sparsify_leaves_low_degree_v1_alone() {
        let g = graph(&["a", "b"], &[("a", "b")]);
        let s = sparsify(&g, 2).unwrap();
        assert!(s.deleted.is_empty());
        assert_eq!(s.graph, g);
    }

    #[test]
    fn sparsify_warns_on_a_nonempty_core() {
        let g = cycle(&["a", "b", "c", "d"]);
        let s = sparsify(&g, 2).unwrap();
        assert!(s.deleted.is_empty());
        assert!(s.core_warning);
    }

    #[test]
    fn split_count_covers_the_operational_output() {
        for (g, t) in [
            (cycle(&["a", "b", "c", "d"]), 2),
            (star(5), 2),
            (graph(&["a", "b"], &[("a", "b")]), 2),
        ] {
            assert!(count_valid_splits(&g, t).unwrap() >= 1);
        }
    }

    #[test]
    fn split_count_respects_the_size_cap() {
        let names: Vec<String> = (0..13).map(|i| format!("v{i:02}")).collect();
        let g = Graph::new(names, Vec::<(String, String)>::new()).unwrap();
        assert!(matches!(
            count_valid_splits(&g, 2),
            Err(Error::BruteForceSize { got: 13, cap: 12 })
        ));
    }

    proptest! {
        #[test]
        fn core_is_idempotent(g in testutil::arb_graph(12), t in 1u64..4) {
            let core = t_core(&g, t).unwrap();
            let sub = g.induced_subgraph(&core).unwrap();
            let again = t_core(&sub, t).unwrap();
            prop_assert_eq!(again.len(), core.len());
        }

        #[test]
        fn core_is_antitone_in_t(g in testutil::arb_graph(12), a in 1u64..4, b in 1u64..4) {
            let (lo, hi) = (a.min(b), a.max(b));
            let big = t_core(&g, lo).unwrap();
            let small = t_core(&g, hi).unwrap();
            let big_mask = g.mask(&big).unwrap();
            prop_assert!(small.iter().all(|&x| big_mask[x.index()]));
        }

        #[test]
        fn decomposition_properties_hold(g in testutil::arb_graph(12), t in 1u64..4) {
            let d = v1_v2_decompose(&g, t).unwrap();
            // the three parts partition V
            let mut seen = vec![0u8; g.vertex_count()];
            for &x in d.v1.iter().chain(&d.v2).chain(&d.core) {
                seen[x.index()] += 1;
            }
            prop_assert!(seen.iter().all(|&s| s == 1));
            // stages concatenate to v1 and v2
            let staged1: Vec<VertexId> =
                d.stages.iter().flat_map(|s| s.v1.iter().copied()).collect();
            let staged2: Vec<VertexId> =
                d.stages.iter().flat_map(|s| s.v2.iter().copied()).collect();
            prop_assert_eq!(&staged1, &d.v1);
            prop_assert_eq!(&staged2, &d.v2);
            // (a) v1 vertices are sparse towards v1 ∪ core
            let keep: Vec<bool> = (0..g.vertex_count())
                .map(|i| {
                    let x = VertexId::new(i);
                    !d.v2.contains(&x)
                })
                .collect();
            for &x in &d.v1 {
                prop_assert!(neighbours_where(&g, x, |j| keep[j]) < t);
            }
            // (b) v2 vertices are anchored into v1
            let v1_mask = g.mask(&d.v1).unwrap();
            for &x in &d.v2 {
                prop_assert!(neighbours_where(&g, x, |j| v1_mask[j]) >= 1);
            }
            // (c) the leftover is the peeled core
            prop_assert_eq!(&d.core, &t_core(&g, t).unwrap());
        }

        #[test]
        fn deleted_edges_avoid_core_and_low_degree_v1(
            g in testutil::arb_graph(12),
            t in 1u64..4,
        ) {
            let s = sparsify(&g, t).unwrap();
            let core_mask = g.mask(&s.decomposition.core).unwrap();
            let v1_mask = g.mask(&s.decomposition.v1).unwrap();
            for &(a, b) in &s.deleted {
                prop_assert!(!core_mask[a.index()] && !core_mask[b.index()]);
                for e in [a, b] {
                    if v1_mask[e.index()] {
                        prop_assert!((g.degree(e) as u64) >= t);
                    }
                }
            }
            prop_assert_eq!(
                s.graph.edge_count() + s.deleted.len(),
                g.edge_count()
            );
        }

        #[test]
        fn decomposition_is_reproducible(g in testutil::arb_graph(10), t in 1u64..4) {
            prop_assert_eq!(
                v1_v2_decompose(&g, t).unwrap(),
                v1_v2_decompose(&g, t).unwrap()
            );
        }
    }
}
