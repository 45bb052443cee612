//! Layered settling. The dense core is solved first; the rest is consumed
//! one remainder component at a time, with every settled neighbour folded
//! into the layer's conditions. A layer vertex never has neighbours beyond
//! the settled set and its own layer, so its exactness is final; core
//! vertices can gain same-side neighbours from later layers, which is why
//! the global verdict is reported rather than promised.

use crate::cardinal::Fin;
use crate::check::check_unfriendly;
use crate::conditioned::{ConditionedGraph, VertexConditions};
use crate::decompose::t_core;
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::partition::{PartialPartition, Partition, Side};
use crate::solve::{
    SolveTrace, SolverConfig, StageKind, StageRecord, Strategy, finish_trace, solve_local_search,
};

/// Folds every settled neighbour into the layer's conditions: a settled
/// 0-neighbour becomes one unit of kappa, a settled 1-neighbour one unit of
/// lambda. The result is the induced conditioned graph on the layer, and a
/// partition of the layer satisfies it at a vertex exactly when the
/// combined partition satisfies the original instance there.
pub fn absorb_boundary_conditions(
    cg: &ConditionedGraph,
    done: &PartialPartition,
    layer: &[VertexId],
) -> Result<ConditionedGraph> {
    let g = cg.graph();
    if done.len() != g.vertex_count() {
        return Err(Error::PartitionSize {
            got: done.len(),
            want: g.vertex_count(),
        });
    }
    g.mask(layer)?;
    for &x in layer {
        if done.is_assigned(x) {
            return Err(Error::LayerOverlap(g.name(x).to_owned()));
        }
    }
    let sub = g.induced_subgraph(layer)?;
    let mut entries = Vec::new();
    for v in sub.vertices() {
        let x = g.require(sub.name(v))?;
        let mut c = cg.conditions(x);
        for &y in g.neighbors(x) {
            match done.get(y) {
                Some(Side::Zero) => c.kappa = c.kappa + 1u64,
                Some(Side::One) => c.lambda = c.lambda + 1u64,
                None => {}
            }
        }
        if !c.is_zero() {
            entries.push((sub.name(v).to_owned(), c));
        }
    }
    ConditionedGraph::new(sub, entries)
}

/// Replaces each infinite condition by a finite pair that pins the vertex
/// to the side its infinite weight already forces, leaving finite pairs
/// untouched. An exact solution of the result is therefore an exact
/// solution of the input: pinned vertices land on a side the input always
/// accepts, and everything else is checked against unchanged conditions.
fn pin_infinite(cg: &ConditionedGraph) -> ConditionedGraph {
    let g = cg.graph();
    let entries: Vec<(String, VertexConditions)> = g
        .vertices()
        .filter_map(|x| {
            let c = cg.conditions(x);
            let d = g.degree(x) as u64;
            let pinned = if c.is_finite() {
                c
            } else if !c.kappa.is_finite() {
                // infinitely many phantom 0-neighbours: only side 1 works
                VertexConditions::new(Fin(d + 1), Fin(0))
            } else {
                VertexConditions::new(Fin(0), Fin(d + 1))
            };
            (!pinned.is_zero()).then(|| (g.name(x).to_owned(), pinned))
        })
        .collect();
    ConditionedGraph::new(g.clone(), entries).expect("vertex names are unchanged")
}

fn remainder_component(
    cg: &ConditionedGraph,
    done: &PartialPartition,
    x: VertexId,
) -> Vec<VertexId> {
    let g = cg.graph();
    let mut member = vec![false; g.vertex_count()];
    member[x.index()] = true;
    let mut queue = vec![x];
    let mut head = 0;
    while head < queue.len() {
        let y = queue[head];
        head += 1;
        for &z in g.neighbors(y) {
            if !done.is_assigned(z) && !member[z.index()] {
                member[z.index()] = true;
                queue.push(z);
            }
        }
    }
    (0..g.vertex_count())
        .filter(|&i| member[i])
        .map(VertexId::new)
        .collect()
}

fn settle_layer(
    cg: &ConditionedGraph,
    cfg: SolverConfig,
    done: &mut PartialPartition,
    layer: &[VertexId],
    kind: StageKind,
    stages: &mut Vec<StageRecord>,
    flips: &mut u64,
) -> Result<()> {
    let absorbed = absorb_boundary_conditions(cg, done, layer)?;
    let solvable = pin_infinite(&absorbed);
    let (solved, inner) = solve_local_search(&solvable, cfg)?;
    let exact = check_unfriendly(&absorbed, &solved)?.passes();
    debug_assert!(exact, "layer solutions satisfy their absorbed instance");
    for v in absorbed.graph().vertices() {
        done.assign(
            cg.graph().require(absorbed.graph().name(v))?,
            solved.side(v),
        )?;
    }
    *flips += inner.flips;
    stages.push(StageRecord {
        index: stages.len(),
        kind,
        vertices: absorbed.graph().names().map(str::to_owned).collect(),
        flips: inner.flips,
        exact: Some(exact),
    });
    Ok(())
}

/// Settles the dense core first, then one remainder component per stage,
/// lowest unsettled identifier first, absorbing settled neighbours into
/// conditions as it goes. Accepts infinite conditions. Every stage's
/// restriction exactly satisfies its absorbed instance; the global
/// threshold report can still name core vertices.
pub fn solve_layered(cg: &ConditionedGraph, cfg: SolverConfig) -> Result<(Partition, SolveTrace)> {
    cfg.ensure()?;
    let g = cg.graph();
    let mut done = PartialPartition::empty(g.vertex_count());
    let mut stages = Vec::new();
    let mut flips = 0u64;
    let core = t_core(g, cfg.threshold)?;
    if !core.is_empty() {
        settle_layer(
            cg,
            cfg,
            &mut done,
            &core,
            StageKind::Core,
            &mut stages,
            &mut flips,
        )?;
    }
    while !done.is_total() {
        let x = g
            .vertices()
            .find(|&v| !done.is_assigned(v))
            .expect("loop continues only while vertices remain");
        let layer = remainder_component(cg, &done, x);
        settle_layer(
            cg,
            cfg,
            &mut done,
            &layer,
            StageKind::Layer,
            &mut stages,
            &mut flips,
        )?;
    }
    let p = done.into_total(g)?;
    let trace = finish_trace(
        Strategy::Layered,
        cg,
        &p,
        cfg,
        flips,
        None,
        stages,
        Vec::new(),
    );
    Ok((p, trace))
}
