//! Reductions between conditioned and plain instances: replacing infinite
//! conditions by finite ones, and compiling finite conditions away entirely
//! through a three-copy gadget whose unfriendly partitions force fixed
//! values on the auxiliary layers.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::cardinal::Fin;
use crate::check::check_threshold_unfriendly;
use crate::conditioned::{ConditionedGraph, VertexConditions};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::partition::{Partition, Side};

/// Rewrites every condition to a finite one relative to the threshold:
/// vertices of degree ≥ t get (0, 0); finite pairs on low-degree vertices
/// pass through; an infinite kappa on a degree-d vertex becomes
/// (d+1, 0), which no d neighbours can outvote, and an infinite lambda
/// symmetrically becomes (0, d+1).
pub fn finitize_conditions(cg: &ConditionedGraph, t: u64) -> Result<ConditionedGraph> {
    if t == 0 {
        return Err(Error::ZeroThreshold);
    }
    let g = cg.graph();
    let conditions = g
        .vertices()
        .map(|x| {
            let c = cg.conditions(x);
            let d = g.degree(x) as u64;
            if d >= t {
                VertexConditions::ZERO
            } else if c.is_finite() {
                c
            } else if !c.kappa.is_finite() {
                VertexConditions::new(Fin(d + 1), Fin(0))
            } else {
                VertexConditions::new(Fin(0), Fin(d + 1))
            }
        })
        .collect();
    Ok(ConditionedGraph::from_parts(g.clone(), conditions))
}

/// Searches every partition of a small instance for one that the finitized
/// instance accepts at mu = Fin(t) while the original rejects. Such a gap
/// can only come from a nonzero condition discarded on a degree-≥t vertex;
/// when infinite conditions sit on low-degree vertices only and degree-≥t
/// vertices carry (0, 0), no gap exists.
pub fn find_transfer_gap(cg: &ConditionedGraph, t: u64) -> Result<Option<Partition>> {
    const CAP: usize = 16;
    let n = cg.graph().vertex_count();
    if n > CAP {
        return Err(Error::BruteForceSize { got: n, cap: CAP });
    }
    let finitized = finitize_conditions(cg, t)?;
    for bits in 0..(1u64 << n) {
        let p = Partition::from_bits(n, bits);
        if check_threshold_unfriendly(&finitized, &p, Fin(t))?.passes()
            && !check_threshold_unfriendly(cg, &p, Fin(t))?.passes()
        {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Auxiliary layer sizes of a gadget. Per copy there are `n_v` fan
/// vertices, `n_w = 2·n_x` middle vertices and `n_x` bottom vertices, with
/// `n_v = 3·n_w`, so the fan-to-middle and middle-to-bottom pairings are
/// total and the ledger always finds free partners.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetSizing {
    pub n_x: u64,
    pub n_w: u64,
    pub n_v: u64,
}

/// Smallest sizing with room for the condition ledger: `M = Σ kappa` needs
/// `M` middle vertices at one ledger edge each, `X = Σ lambda` needs `X`
/// bottom vertices.
pub fn gadget_sizing(cg: &ConditionedGraph) -> Result<GadgetSizing> {
    if let Some(v) = cg.first_infinite() {
        return Err(Error::InfiniteCondition(cg.graph().name(v).to_owned()));
    }
    let mut m = 0u64;
    let mut x = 0u64;
    for c in cg.condition_slice() {
        m += c.kappa.finite().expect("checked finite above");
        x += c.lambda.finite().expect("checked finite above");
    }
    let n_x = x.max(m.div_ceil(2)).max(1);
    Ok(GadgetSizing {
        n_x,
        n_w: 2 * n_x,
        n_v: 6 * n_x,
    })
}

/// What a gadget vertex is. The display form is the serialized vertex
/// name: `u.<i>`, `v.<i>.<n>`, `w.<i>.<n>`, `x.<i>.<n>` and
/// `c.<i>.<original-id>`, with the copy index i in 1..=3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GadgetRole {
    U { copy: u8 },
    V { copy: u8, index: u64 },
    W { copy: u8, index: u64 },
    X { copy: u8, index: u64 },
    Copy { copy: u8, original: String },
}

impl GadgetRole {
    pub fn copy(&self) -> u8 {
        match *self {
            GadgetRole::U { copy }
            | GadgetRole::V { copy, .. }
            | GadgetRole::W { copy, .. }
            | GadgetRole::X { copy, .. }
            | GadgetRole::Copy { copy, .. } => copy,
        }
    }
}

impl fmt::Display for GadgetRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetRole::U { copy } => write!(f, "u.{copy}"),
            GadgetRole::V { copy, index } => write!(f, "v.{copy}.{index}"),
            GadgetRole::W { copy, index } => write!(f, "w.{copy}.{index}"),
            GadgetRole::X { copy, index } => write!(f, "x.{copy}.{index}"),
            GadgetRole::Copy { copy, original } => write!(f, "c.{copy}.{original}"),
        }
    }
}

impl FromStr for GadgetRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<GadgetRole> {
        let malformed = || Error::MalformedGadget(format!("vertex name `{s}` fits no role"));
        let (kind, rest) = s.split_once('.').ok_or_else(malformed)?;
        let parse_copy = |c: &str| match c {
            "1" => Ok(1u8),
            "2" => Ok(2),
            "3" => Ok(3),
            _ => Err(malformed()),
        };
        // auxiliary indices must be canonical decimal
        let parse_index = |n: &str| {
            n.parse::<u64>()
                .ok()
                .filter(|v| v.to_string() == n)
                .ok_or_else(malformed)
        };
        match kind {
            "u" => Ok(GadgetRole::U {
                copy: parse_copy(rest)?,
            }),
            "c" => {
                let (copy, original) = rest.split_once('.').ok_or_else(malformed)?;
                if original.is_empty() {
                    return Err(malformed());
                }
                Ok(GadgetRole::Copy {
                    copy: parse_copy(copy)?,
                    original: original.to_owned(),
                })
            }
            "v" | "w" | "x" => {
                let (copy, index) = rest.split_once('.').ok_or_else(malformed)?;
                let copy = parse_copy(copy)?;
                let index = parse_index(index)?;
                Ok(match kind {
                    "v" => GadgetRole::V { copy, index },
                    "w" => GadgetRole::W { copy, index },
                    _ => GadgetRole::X { copy, index },
                })
            }
            _ => Err(malformed()),
        }
    }
}

/// Ledger edges realizing one original vertex's conditions inside one
/// copy: each middle partner contributes a forced 0-neighbour (one unit of
/// kappa), each bottom partner a forced 1-neighbour (one unit of lambda).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub copy: u8,
    pub original: String,
    pub w_partners: Vec<String>,
    pub x_partners: Vec<String>,
}

/// A plain graph compiled from a finite-condition instance, together with
/// the bookkeeping needed to map partitions back: per-vertex roles, the
/// layer sizing, the condition ledger, and the instance it encodes.
#[derive(Debug, Clone)]
pub struct GadgetGraph {
    graph: Graph,
    original: ConditionedGraph,
    sizing: GadgetSizing,
    roles: Vec<GadgetRole>,
    ledger: Vec<LedgerEntry>,
}

impl GadgetGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The conditioned instance this gadget encodes.
    pub fn original(&self) -> &ConditionedGraph {
        &self.original
    }

    pub fn sizing(&self) -> GadgetSizing {
        self.sizing
    }

    pub fn role(&self, v: VertexId) -> &GadgetRole {
        &self.roles[v.index()]
    }

    pub fn ledger(&self) -> &[LedgerEntry] {
        &self.ledger
    }
}

fn u_name(i: u8) -> String {
    format!("u.{i}")
}

fn v_name(i: u8, n: u64) -> String {
    format!("v.{i}.{n}")
}

fn w_name(i: u8, n: u64) -> String {
    format!("w.{i}.{n}")
}

fn x_name(i: u8, n: u64) -> String {
    format!("x.{i}.{n}")
}

fn copy_name(i: u8, original: &str) -> String {
    format!("c.{i}.{original}")
}

/// Compiles a finite-condition instance into a plain graph of three
/// original copies plus auxiliary layers. Each fan vertex has exactly
/// three neighbours (two foreign hubs and one middle vertex); middle and
/// bottom vertices have at most five and three. Ledger partners are
/// assigned deterministically: originals in identifier order, free
/// partners by ascending index.
pub fn build_gadget(cg: &ConditionedGraph) -> Result<GadgetGraph> {
    let sizing = gadget_sizing(cg)?;
    let g = cg.graph();
    let mut names = Vec::new();
    let mut roles = HashMap::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    for i in 1..=3u8 {
        names.push(u_name(i));
        roles.insert(u_name(i), GadgetRole::U { copy: i });
        for n in 0..sizing.n_v {
            names.push(v_name(i, n));
            roles.insert(v_name(i, n), GadgetRole::V { copy: i, index: n });
        }
        for n in 0..sizing.n_w {
            names.push(w_name(i, n));
            roles.insert(w_name(i, n), GadgetRole::W { copy: i, index: n });
        }
        for n in 0..sizing.n_x {
            names.push(x_name(i, n));
            roles.insert(x_name(i, n), GadgetRole::X { copy: i, index: n });
        }
        for y in g.names() {
            names.push(copy_name(i, y));
            roles.insert(
                copy_name(i, y),
                GadgetRole::Copy {
                    copy: i,
                    original: y.to_owned(),
                },
            );
        }
    }
    for i in 1..=3u8 {
        // hubs fan into the other copies' v layers
        for j in 1..=3u8 {
            if i == j {
                continue;
            }
            for n in 0..sizing.n_v {
                edges.push((u_name(i), v_name(j, n)));
            }
        }
        // each v has exactly one middle partner, each middle one bottom
        for n in 0..sizing.n_w {
            for r in 0..3 {
                edges.push((v_name(i, 3 * n + r), w_name(i, n)));
            }
        }
        for n in 0..sizing.n_x {
            for r in 0..2 {
                edges.push((w_name(i, 2 * n + r), x_name(i, n)));
            }
        }
        for (a, b) in g.edges() {
            edges.push((copy_name(i, g.name(a)), copy_name(i, g.name(b))));
        }
    }
    let mut ledger = Vec::new();
    for i in 1..=3u8 {
        let mut next_w = 0u64;
        let mut next_x = 0u64;
        for y in g.vertices() {
            let c = cg.conditions(y);
            let m = c.kappa.finite().expect("sizing checked finiteness");
            let n = c.lambda.finite().expect("sizing checked finiteness");
            let w_partners: Vec<String> = (0..m)
                .map(|_| {
                    let w = w_name(i, next_w);
                    next_w += 1;
                    w
                })
                .collect();
            let x_partners: Vec<String> = (0..n)
                .map(|_| {
                    let x = x_name(i, next_x);
                    next_x += 1;
                    x
                })
                .collect();
            let me = copy_name(i, g.name(y));
            for p in w_partners.iter().chain(&x_partners) {
                edges.push((p.clone(), me.clone()));
            }
            ledger.push(LedgerEntry {
                copy: i,
                original: g.name(y).to_owned(),
                w_partners,
                x_partners,
            });
        }
        debug_assert!(next_w <= sizing.n_w && next_x <= sizing.n_x);
    }
    let graph = Graph::new(names, edges)?;
    let roles = graph
        .vertices()
        .map(|v| roles[graph.name(v)].clone())
        .collect();
    Ok(GadgetGraph {
        graph,
        original: cg.clone(),
        sizing,
        roles,
        ledger,
    })
}

impl GadgetGraph {
    /// Reconstructs the bookkeeping from a bare graph, validating the
    /// entire structure; accepts exactly the graphs [`build_gadget`]
    /// emits.
    pub fn from_graph(graph: Graph) -> Result<GadgetGraph> {
        let bad = |msg: String| Error::MalformedGadget(msg);
        let roles: Vec<GadgetRole> = graph
            .vertices()
            .map(|v| graph.name(v).parse())
            .collect::<Result<_>>()?;
        // layer sizes per copy, from the parsed indices
        let mut counts = [[0u64; 3]; 3]; // [v, w, x][copy-1]
        let mut originals: Vec<Vec<String>> = vec![Vec::new(); 3];
        let mut hubs = [false; 3];
        for role in &roles {
            match role {
                GadgetRole::U { copy } => hubs[(copy - 1) as usize] = true,
                GadgetRole::V { copy, .. } => counts[0][(copy - 1) as usize] += 1,
                GadgetRole::W { copy, .. } => counts[1][(copy - 1) as usize] += 1,
                GadgetRole::X { copy, .. } => counts[2][(copy - 1) as usize] += 1,
                GadgetRole::Copy { copy, original } => {
                    originals[(copy - 1) as usize].push(original.clone())
                }
            }
        }
        if hubs != [true; 3] {
            return Err(bad("expected exactly the hubs u.1, u.2, u.3".into()));
        }
        for layer in &counts {
            if layer[0] != layer[1] || layer[1] != layer[2] {
                return Err(bad("auxiliary layer sizes differ between copies".into()));
            }
        }
        let sizing = GadgetSizing {
            n_v: counts[0][0],
            n_w: counts[1][0],
            n_x: counts[2][0],
        };
        if sizing.n_x == 0 || sizing.n_w != 2 * sizing.n_x || sizing.n_v != 3 * sizing.n_w {
            return Err(bad(format!(
                "layer sizes ({}, {}, {}) violate the 3-2-1 shape",
                sizing.n_v, sizing.n_w, sizing.n_x
            )));
        }
        // the name parse guarantees indices are canonical; equal counts
        // plus name uniqueness pin them to exactly 0..count
        for copies in &mut originals {
            copies.sort();
        }
        if originals[0] != originals[1] || originals[1] != originals[2] {
            return Err(bad("copies carry different original vertex sets".into()));
        }

        // classify every edge and tally the structural families
        let mut uv_seen = 0u64;
        let mut v_spine = vec![[false; 3]; sizing.n_v as usize];
        let mut w_spine = vec![[false; 3]; sizing.n_w as usize];
        let mut ledger_load: HashMap<&str, u32> = HashMap::new();
        let mut internal: Vec<Vec<(String, String)>> = vec![Vec::new(); 3];
        // ledger partner indices per (copy, original), w layer then x layer
        type Partners<'a> = HashMap<(u8, &'a str), (Vec<u64>, Vec<u64>)>;
        let mut partners: Partners<'_> = HashMap::new();
        for (a, b) in graph.edges() {
            let (ra, rb) = (&roles[a.index()], &roles[b.index()]);
            match (ra, rb) {
                (GadgetRole::U { copy: i }, GadgetRole::V { copy: j, .. })
                | (GadgetRole::V { copy: j, .. }, GadgetRole::U { copy: i }) => {
                    if i == j {
                        return Err(bad("a hub touches its own copy's fan layer".into()));
                    }
                    uv_seen += 1;
                }
                (GadgetRole::V { copy: i, index: m }, GadgetRole::W { copy: j, index: n })
                | (GadgetRole::W { copy: j, index: n }, GadgetRole::V { copy: i, index: m }) => {
                    if i != j || m / 3 != *n {
                        return Err(bad("fan-to-middle edge off the spine".into()));
                    }
                    v_spine[*m as usize][(i - 1) as usize] = true;
                }
                (GadgetRole::W { copy: i, index: m }, GadgetRole::X { copy: j, index: n })
                | (GadgetRole::X { copy: j, index: n }, GadgetRole::W { copy: i, index: m }) => {
                    if i != j || m / 2 != *n {
                        return Err(bad("middle-to-bottom edge off the spine".into()));
                    }
                    w_spine[*m as usize][(i - 1) as usize] = true;
                }
                (GadgetRole::W { copy: i, index }, GadgetRole::Copy { copy: j, original })
                | (GadgetRole::Copy { copy: j, original }, GadgetRole::W { copy: i, index }) => {
                    if i != j {
                        return Err(bad("ledger edge crosses copies".into()));
                    }
                    let w = ledger_load
                        .entry(graph.name(if matches!(ra, GadgetRole::W { .. }) {
                            a
                        } else {
                            b
                        }))
                        .or_insert(0);
                    *w += 1;
                    partners
                        .entry((*i, original.as_str()))
                        .or_default()
                        .0
                        .push(*index);
                }
                (GadgetRole::X { copy: i, index }, GadgetRole::Copy { copy: j, original })
                | (GadgetRole::Copy { copy: j, original }, GadgetRole::X { copy: i, index }) => {
                    if i != j {
                        return Err(bad("ledger edge crosses copies".into()));
                    }
                    let x = ledger_load
                        .entry(graph.name(if matches!(ra, GadgetRole::X { .. }) {
                            a
                        } else {
                            b
                        }))
                        .or_insert(0);
                    *x += 1;
                    partners
                        .entry((*i, original.as_str()))
                        .or_default()
                        .1
                        .push(*index);
                }
                (
                    GadgetRole::Copy {
                        copy: i,
                        original: a,
                    },
                    GadgetRole::Copy {
                        copy: j,
                        original: b,
                    },
                ) => {
                    if i != j {
                        return Err(bad("an edge joins two different copies".into()));
                    }
                    let (a, b) = if a <= b { (a, b) } else { (b, a) };
                    internal[(i - 1) as usize].push((a.clone(), b.clone()));
                }
                _ => {
                    return Err(bad(format!(
                        "edge {{{}, {}}} fits no structural family",
                        graph.name(a),
                        graph.name(b)
                    )));
                }
            }
        }
        if uv_seen != 6 * sizing.n_v {
            return Err(bad("hub-to-fan edges are not the complete family".into()));
        }
        if !v_spine.iter().all(|c| c.iter().all(|&p| p))
            || !w_spine.iter().all(|c| c.iter().all(|&p| p))
        {
            return Err(bad("a spine edge is missing".into()));
        }
        if ledger_load.values().any(|&l| l > 1) {
            return Err(bad("an auxiliary vertex carries two ledger edges".into()));
        }
        for copy in &mut internal {
            copy.sort();
        }
        if internal[0] != internal[1] || internal[1] != internal[2] {
            return Err(bad("copies carry different internal edges".into()));
        }

        // rebuild the original instance from copy 1
        let mut entries = Vec::new();
        let mut ledger = Vec::new();
        for i in 1..=3u8 {
            for y in &originals[0] {
                let (mut ws, mut xs) = partners.remove(&(i, y.as_str())).unwrap_or_default();
                ws.sort_unstable();
                xs.sort_unstable();
                if i == 1 && (!ws.is_empty() || !xs.is_empty()) {
                    entries.push((
                        y.clone(),
                        VertexConditions::new(Fin(ws.len() as u64), Fin(xs.len() as u64)),
                    ));
                }
                ledger.push(LedgerEntry {
                    copy: i,
                    original: y.clone(),
                    w_partners: ws.into_iter().map(|n| w_name(i, n)).collect(),
                    x_partners: xs.into_iter().map(|n| x_name(i, n)).collect(),
                });
            }
        }
        let mut seen = HashMap::new();
        for (k, v) in ledger.iter().map(|e| {
            (
                (e.original.clone()),
                (e.w_partners.len(), e.x_partners.len()),
            )
        }) {
            if *seen.entry(k.clone()).or_insert(v) != v {
                return Err(bad(format!("copies disagree on the conditions of `{k}`")));
            }
        }
        let original_graph = Graph::new(originals[0].clone(), internal[0].clone())?;
        let original = ConditionedGraph::new(original_graph, entries)?;
        if gadget_sizing(&original)? != sizing {
            return Err(bad("layer sizes do not match the encoded conditions".into()));
        }
        let roles_ordered = graph.vertices().map(|v| roles[v.index()].clone()).collect();
        Ok(GadgetGraph {
            graph,
            original,
            sizing,
            roles: roles_ordered,
            ledger,
        })
    }
}

/// A partition of the encoded instance read back out of a gadget
/// partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovered {
    pub partition: Partition,
    /// Which copy was read (the one whose hubs disagree).
    pub copy: u8,
    /// Whether the gadget partition was complemented first.
    pub flipped: bool,
}

/// Reads the encoded instance's partition out of a gadget partition: two
/// of the three hubs share a value by pigeonhole; after complementing if
/// that value is 1, the remaining copy is restricted and relabeled. Total
/// for every input; when the input partition is unfriendly on the gadget,
/// the result is exactly condition-unfriendly on the encoded instance.
pub fn recover_partition(gg: &GadgetGraph, ph: &Partition) -> Result<Recovered> {
    let g = gg.graph();
    if ph.len() != g.vertex_count() {
        return Err(Error::PartitionSize {
            got: ph.len(),
            want: g.vertex_count(),
        });
    }
    let hub = |i: u8| -> Result<Side> { Ok(ph.side(g.require(&u_name(i))?)) };
    let (i, j, copy) = [(1u8, 2u8, 3u8), (1, 3, 2), (2, 3, 1)]
        .into_iter()
        .find(|&(i, j, _)| {
            hub(i).expect("hubs validated at construction")
                == hub(j).expect("hubs validated at construction")
        })
        .expect("three binary values contain an equal pair");
    let flipped = hub(i)? == Side::One;
    debug_assert_eq!(hub(i)?, hub(j)?);
    let normalized = if flipped {
        ph.complemented()
    } else {
        ph.clone()
    };
    let original = gg.original().graph();
    let assignment: Result<Vec<(String, Side)>> = original
        .names()
        .map(|y| {
            let v = g.require(&copy_name(copy, y))?;
            Ok((y.to_owned(), normalized.side(v)))
        })
        .collect();
    let partition = Partition::from_assignment(original, assignment?)?;
    Ok(Recovered {
        partition,
        copy,
        flipped,
    })
}
