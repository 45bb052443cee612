//! Unfriendliness checkers, the potential function, and flip deltas.
//!
//! Every comparison is between two condition-inclusive totals. A vertex on
//! side 0 weighs kappa plus its 0-neighbours (same side) against lambda
//! plus its 1-neighbours (opposite side); on side 1 the roles swap. The
//! vertex violates when the same-side total strictly exceeds the opposite
//! one. The threshold checker additionally forgives a violation when both
//! totals reach mu, the finite stand-in for "both sides infinite".

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::cardinal::{ExtendedCardinal, Fin};
use crate::conditioned::ConditionedGraph;
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::partition::{Partition, Side};

/// Below this vertex count the scan stays sequential even when the
/// `parallel` feature is enabled; forking costs more than it saves.
#[cfg(feature = "parallel")]
const PARALLEL_SCAN_MIN: usize = 1024;

/// One failed vertex: which side it sits on and the two compared totals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: String,
    pub side: Side,
    pub same: ExtendedCardinal,
    pub opposite: ExtendedCardinal,
    /// True when the mu-exemption forgave this vertex; such entries live in
    /// [`ViolationReport::exempted`], never in `violations`.
    pub exempted: bool,
}

/// Checker outcome. The checked property holds iff `violations` is empty;
/// `exempted` lists the would-be violations the mu-exemption forgave.
/// Both lists are in identifier order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
    pub exempted: Vec<Violation>,
}

impl ViolationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violating_vertices(&self) -> impl Iterator<Item = &str> {
        self.violations.iter().map(|v| v.vertex.as_str())
    }
}

fn ensure_total(cg: &ConditionedGraph, p: &Partition) -> Result<()> {
    if p.len() != cg.graph().vertex_count() {
        return Err(Error::PartitionSize {
            got: p.len(),
            want: cg.graph().vertex_count(),
        });
    }
    Ok(())
}

/// (same, opposite) totals at `x`; no validation.
pub(crate) fn totals(
    cg: &ConditionedGraph,
    sides: &[Side],
    x: VertexId,
) -> (ExtendedCardinal, ExtendedCardinal) {
    let mut zeros = 0u64;
    let mut ones = 0u64;
    for &y in cg.graph().neighbors(x) {
        match sides[y.index()] {
            Side::Zero => zeros += 1,
            Side::One => ones += 1,
        }
    }
    let c = cg.conditions(x);
    let zero_total = c.kappa + zeros;
    let one_total = c.lambda + ones;
    match sides[x.index()] {
        Side::Zero => (zero_total, one_total),
        Side::One => (one_total, zero_total),
    }
}

fn examine(
    cg: &ConditionedGraph,
    sides: &[Side],
    mu: Option<ExtendedCardinal>,
    x: VertexId,
) -> Option<Violation> {
    let (same, opposite) = totals(cg, sides, x);
    if same <= opposite {
        return None;
    }
    let exempted = mu.is_some_and(|m| same >= m && opposite >= m);
    Some(Violation {
        vertex: cg.graph().name(x).to_owned(),
        side: sides[x.index()],
        same,
        opposite,
        exempted,
    })
}

fn scan(cg: &ConditionedGraph, sides: &[Side], mu: Option<ExtendedCardinal>) -> ViolationReport {
    let n = cg.graph().vertex_count();
    let flagged: Vec<Violation>;
    #[cfg(feature = "parallel")]
    {
        flagged = if n >= PARALLEL_SCAN_MIN {
            // index order is preserved by the ordered collect
            (0..n)
                .into_par_iter()
                .filter_map(|i| examine(cg, sides, mu, VertexId::new(i)))
                .collect()
        } else {
            (0..n)
                .filter_map(|i| examine(cg, sides, mu, VertexId::new(i)))
                .collect()
        };
    }
    #[cfg(not(feature = "parallel"))]
    {
        flagged = (0..n)
            .filter_map(|i| examine(cg, sides, mu, VertexId::new(i)))
            .collect();
    }
    let (exempted, violations) = flagged.into_iter().partition(|v| v.exempted);
    ViolationReport {
        violations,
        exempted,
    }
}

/// The two compared totals at `x`: (same-side, opposite-side), conditions
/// included.
pub fn sides_at(
    cg: &ConditionedGraph,
    p: &Partition,
    x: VertexId,
) -> Result<(ExtendedCardinal, ExtendedCardinal)> {
    ensure_total(cg, p)?;
    cg.graph().check_vertex(x)?;
    Ok(totals(cg, p.sides(), x))
}

/// Exact unfriendliness: every vertex must have same ≤ opposite.
pub fn check_unfriendly(cg: &ConditionedGraph, p: &Partition) -> Result<ViolationReport> {
    ensure_total(cg, p)?;
    Ok(scan(cg, p.sides(), None))
}

/// Threshold-relaxed unfriendliness: a violating vertex is exempted when
/// both compared totals are ≥ `mu`. `mu = Infinite` never exempts and
/// reproduces [`check_unfriendly`] exactly.
pub fn check_threshold_unfriendly(
    cg: &ConditionedGraph,
    p: &Partition,
    mu: ExtendedCardinal,
) -> Result<ViolationReport> {
    ensure_total(cg, p)?;
    if mu == Fin(0) {
        return Err(Error::ZeroThreshold);
    }
    Ok(scan(cg, p.sides(), Some(mu)))
}

/// Cut size plus condition payments: |cut edges| + Σ (lambda on side 0,
/// kappa on side 1). Flipping any violating vertex strictly increases this,
/// and it is bounded by |E| + Σ(kappa+lambda), which certifies local-search
/// termination. Requires all conditions finite.
pub fn potential(cg: &ConditionedGraph, p: &Partition) -> Result<u64> {
    ensure_total(cg, p)?;
    if let Some(v) = cg.first_infinite() {
        return Err(Error::InfiniteCondition(cg.graph().name(v).to_owned()));
    }
    let cut = cg
        .graph()
        .edges()
        .filter(|&(a, b)| p.side(a) != p.side(b))
        .count() as u64;
    let payments: u64 = cg
        .graph()
        .vertices()
        .map(|x| {
            let c = cg.conditions(x);
            let paid = match p.side(x) {
                Side::Zero => c.lambda,
                Side::One => c.kappa,
            };
            paid.finite().expect("checked all-finite above")
        })
        .fold(0u64, u64::saturating_add);
    Ok(cut.saturating_add(payments))
}

/// Change in [`potential`] from flipping `x`, computed from x's own
/// neighbourhood in O(deg x). Positive iff `x` violates, zero iff exactly
/// balanced. Requires finite conditions at `x`.
pub fn flip_delta(cg: &ConditionedGraph, p: &Partition, x: VertexId) -> Result<i64> {
    ensure_total(cg, p)?;
    cg.graph().check_vertex(x)?;
    if !cg.conditions(x).is_finite() {
        return Err(Error::InfiniteCondition(cg.graph().name(x).to_owned()));
    }
    let (same, opposite) = totals(cg, p.sides(), x);
    let same = same.finite().expect("finite conditions at x") as i128;
    let opposite = opposite.finite().expect("finite counts") as i128;
    Ok((same - opposite).clamp(i64::MIN as i128, i64::MAX as i128) as i64)
}
