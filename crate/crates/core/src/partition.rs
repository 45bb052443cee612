//! Two-sided partitions and the partial assignments solvers grow.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// One of the two sides of a partition. Serialized as 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Zero,
    One,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Zero => Side::One,
            Side::One => Side::Zero,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Side::Zero => 0,
            Side::One => 1,
        }
    }

    pub fn from_bit(bit: u64) -> Option<Side> {
        match bit {
            0 => Some(Side::Zero),
            1 => Some(Side::One),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.bit())
    }
}

impl<'de> Deserialize<'de> for Side {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let bit = u64::deserialize(deserializer)?;
        Side::from_bit(bit).ok_or_else(|| serde::de::Error::custom("sides must be 0 or 1"))
    }
}

/// A total assignment of sides, indexed by [`VertexId`].
///
/// Ordering is lexicographic over the side vector (Zero < One), which gives
/// multi-restart selection its deterministic "first" result.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Partition {
    sides: Vec<Side>,
}

impl Partition {
    pub fn uniform(count: usize, side: Side) -> Partition {
        Partition {
            sides: vec![side; count],
        }
    }

    pub fn from_sides(sides: Vec<Side>) -> Partition {
        Partition { sides }
    }

    /// Vertex i takes bit i of `bits`; vertices past the 64th take Zero.
    /// Canonical enumeration order for the brute-force oracle: ascending
    /// `bits`.
    pub fn from_bits(count: usize, bits: u64) -> Partition {
        let sides = (0..count)
            .map(|i| {
                if i < u64::BITS as usize && bits >> i & 1 == 1 {
                    Side::One
                } else {
                    Side::Zero
                }
            })
            .collect();
        Partition { sides }
    }

    /// Builds a total partition from (identifier, side) pairs.
    pub fn from_assignment<I, S>(graph: &Graph, pairs: I) -> Result<Partition>
    where
        I: IntoIterator<Item = (S, Side)>,
        S: Into<String>,
    {
        let mut partial = PartialPartition::empty(graph.vertex_count());
        for (name, side) in pairs {
            let v = graph.require(&name.into())?;
            partial.assign(v, side)?;
        }
        partial.into_total(graph)
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn side(&self, v: VertexId) -> Side {
        self.sides[v.index()]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    /// The complement 1−π. An involution.
    pub fn complemented(&self) -> Partition {
        Partition {
            sides: self.sides.iter().map(|s| s.opposite()).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, Side)> + '_ {
        self.sides
            .iter()
            .enumerate()
            .map(|(i, &s)| (VertexId::new(i), s))
    }
}

/// An in-progress assignment over a subset of the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialPartition {
    sides: Vec<Option<Side>>,
    assigned: usize,
}

impl PartialPartition {
    pub fn empty(count: usize) -> PartialPartition {
        PartialPartition {
            sides: vec![None; count],
            assigned: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn assigned_count(&self) -> usize {
        self.assigned
    }

    pub fn is_total(&self) -> bool {
        self.assigned == self.sides.len()
    }

    pub fn get(&self, v: VertexId) -> Option<Side> {
        self.sides[v.index()]
    }

    pub fn is_assigned(&self, v: VertexId) -> bool {
        self.sides[v.index()].is_some()
    }

    /// Assigns a side to a previously unassigned vertex.
    pub fn assign(&mut self, v: VertexId, side: Side) -> Result<()> {
        if self.sides[v.index()].is_some() {
            return Err(Error::OverlappingDomain(v.index()));
        }
        self.sides[v.index()] = Some(side);
        self.assigned += 1;
        Ok(())
    }

    /// Assigned vertices in identifier order.
    pub fn domain(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.sides
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_some())
            .map(|(i, _)| VertexId::new(i))
    }

    /// Union with a disjoint partial partition (the solver's π′ = τ ∪ π).
    pub fn union(&self, other: &PartialPartition) -> Result<PartialPartition> {
        if self.sides.len() != other.sides.len() {
            return Err(Error::PartitionSize {
                got: other.sides.len(),
                want: self.sides.len(),
            });
        }
        let mut merged = self.clone();
        for v in other.domain() {
            merged.assign(v, other.get(v).expect("v is in other's domain"))?;
        }
        Ok(merged)
    }

    /// Completes into a [`Partition`], failing on the first uncovered vertex.
    pub fn into_total(self, graph: &Graph) -> Result<Partition> {
        if self.sides.len() != graph.vertex_count() {
            return Err(Error::PartitionSize {
                got: self.sides.len(),
                want: graph.vertex_count(),
            });
        }
        let mut sides = Vec::with_capacity(self.sides.len());
        for (i, s) in self.sides.iter().enumerate() {
            match s {
                Some(side) => sides.push(*side),
                None => {
                    return Err(Error::PartitionIncomplete(
                        graph.name(VertexId::new(i)).to_owned(),
                    ));
                }
            }
        }
        Ok(Partition { sides })
    }
}
