//! Exhaustive enumeration over all 2^|V| partitions. Serves as the ground
//! truth the other solvers are measured against, so its acceptance test is
//! written directly on the mask instead of reusing the checker, and a
//! property test keeps the two in agreement.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::cardinal::{ExtendedCardinal, Fin};
use crate::conditioned::ConditionedGraph;
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::partition::Partition;

/// Enumeration hard cap; 2^25 masks is where exhaustion stops being a
/// sensible oracle.
pub const BRUTE_FORCE_CAP: usize = 25;

/// Masks below this count are enumerated sequentially even with the
/// `parallel` feature on.
#[cfg(feature = "parallel")]
const PARALLEL_MASK_MIN: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceResult {
    /// First accepted partition in ascending bit order (bit i is vertex
    /// i's side), absent when none exists.
    pub partition: Option<Partition>,
    /// How many of the 2^|V| partitions are accepted.
    pub solutions: u64,
}

fn accepts(cg: &ConditionedGraph, bits: u64, mu: ExtendedCardinal) -> bool {
    let g = cg.graph();
    for i in 0..g.vertex_count() {
        let x = VertexId::new(i);
        let mut zeros = 0u64;
        let mut ones = 0u64;
        for &y in g.neighbors(x) {
            if bits >> y.index() & 1 == 1 {
                ones += 1;
            } else {
                zeros += 1;
            }
        }
        let c = cg.conditions(x);
        let zero_total = c.kappa + zeros;
        let one_total = c.lambda + ones;
        let (same, opposite) = if bits >> i & 1 == 1 {
            (one_total, zero_total)
        } else {
            (zero_total, one_total)
        };
        if same > opposite && !(same >= mu && opposite >= mu) {
            return false;
        }
    }
    true
}

fn merge(a: (Option<u64>, u64), b: (Option<u64>, u64)) -> (Option<u64>, u64) {
    let first = match (a.0, b.0) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    (first, a.1 + b.1)
}

/// Tries every partition and returns the first accepted one together with
/// the count of all accepted ones. `mu = Infinite` demands exact
/// unfriendliness.
pub fn solve_brute_force(cg: &ConditionedGraph, mu: ExtendedCardinal) -> Result<BruteForceResult> {
    let n = cg.graph().vertex_count();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceSize {
            got: n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    if mu == Fin(0) {
        return Err(Error::ZeroThreshold);
    }
    let total = 1u64 << n;
    let score = |bits: u64| {
        if accepts(cg, bits, mu) {
            (Some(bits), 1)
        } else {
            (None, 0)
        }
    };
    let (first, solutions): (Option<u64>, u64);
    #[cfg(feature = "parallel")]
    {
        (first, solutions) = if total >= PARALLEL_MASK_MIN {
            (0..total)
                .into_par_iter()
                .map(score)
                .reduce(|| (None, 0), merge)
        } else {
            (0..total).map(score).fold((None, 0), merge)
        };
    }
    #[cfg(not(feature = "parallel"))]
    {
        (first, solutions) = (0..total).map(score).fold((None, 0), merge);
    }
    Ok(BruteForceResult {
        partition: first.map(|bits| Partition::from_bits(n, bits)),
        solutions,
    })
}
