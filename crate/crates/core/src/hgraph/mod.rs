//! Hypergraph data model, incidence indices, partitionings and the
//! connectivity objective.
//!
//! A [`Hypergraph`] stores hyperedges as `(source, destinations, weight)`
//! triples over dense node ids. The same type holds both the neuron-level
//! graph and the partition-level graph obtained with [`push_forward`]; the
//! former additionally satisfies the one-axon-per-neuron rule checked by
//! [`Hypergraph::new_snn`].

mod hgx;
mod index;
mod partition;

pub use hgx::{parse_hgx, parse_partition_file, write_hgx, write_partition_file, ParseMode};
pub use index::IndexedHypergraph;
pub use partition::{
    check_constraints, connectivity, partition_stats, push_forward, ConstraintKind,
    ConstraintReport, PartitionStats, Partitioning, Violation,
};

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type HedgeId = usize;
pub type PartId = usize;

/// One axon: a source node multicasting to a set of destinations.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    pub source: NodeId,
    pub destinations: Vec<NodeId>,
    /// Spike frequency, in spikes per timestep.
    pub weight: f64,
}

impl Hyperedge {
    pub fn new(source: NodeId, destinations: Vec<NodeId>, weight: f64) -> Self {
        Self {
            source,
            destinations,
            weight,
        }
    }

    /// Source followed by destinations.
    pub fn pins(&self) -> impl Iterator<Item = NodeId> + '_ {
        std::iter::once(self.source).chain(self.destinations.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    num_nodes: usize,
    hedges: Vec<Hyperedge>,
}

impl Hypergraph {
    /// Builds a general directed hypergraph. Nodes may source any number of
    /// hyperedges.
    pub fn new(num_nodes: usize, hedges: Vec<Hyperedge>) -> Result<Self> {
        let mut seen = vec![usize::MAX; num_nodes];
        for (id, e) in hedges.iter().enumerate() {
            validate_hedge(num_nodes, id, e, &mut seen).map_err(Error::InvalidGraph)?;
        }
        Ok(Self { num_nodes, hedges })
    }

    /// Builds a network-form hypergraph: every node sources at most one
    /// hyperedge and no hyperedge targets its own source.
    pub fn new_snn(num_nodes: usize, hedges: Vec<Hyperedge>) -> Result<Self> {
        let g = Self::new(num_nodes, hedges)?;
        if let Some(msg) = g.snn_violation() {
            return Err(Error::InvalidGraph(msg));
        }
        Ok(g)
    }

    pub(crate) fn from_parts_unchecked(num_nodes: usize, hedges: Vec<Hyperedge>) -> Self {
        debug_assert!(Self::new(num_nodes, hedges.clone()).is_ok());
        Self { num_nodes, hedges }
    }

    /// A graph with `num_nodes` nodes and no hyperedges.
    pub fn empty(num_nodes: usize) -> Self {
        Self {
            num_nodes,
            hedges: Vec::new(),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_hedges(&self) -> usize {
        self.hedges.len()
    }

    pub fn hedges(&self) -> &[Hyperedge] {
        &self.hedges
    }

    pub fn hedge(&self, id: HedgeId) -> &Hyperedge {
        &self.hedges[id]
    }

    /// Total number of source-destination connections, Σ|D|.
    pub fn num_connections(&self) -> usize {
        self.hedges.iter().map(|e| e.destinations.len()).sum()
    }

    pub fn is_snn_form(&self) -> bool {
        self.snn_violation().is_none()
    }

    fn snn_violation(&self) -> Option<String> {
        let mut sourced = vec![false; self.num_nodes];
        for (id, e) in self.hedges.iter().enumerate() {
            if std::mem::replace(&mut sourced[e.source], true) {
                return Some(format!(
                    "node {} sources more than one hyperedge (second at hyperedge {id})",
                    e.source
                ));
            }
            if e.destinations.contains(&e.source) {
                return Some(format!(
                    "hyperedge {id} targets its own source {}",
                    e.source
                ));
            }
        }
        None
    }
}

/// `seen` is a scratch buffer stamped with the hyperedge id.
fn validate_hedge(
    num_nodes: usize,
    id: HedgeId,
    e: &Hyperedge,
    seen: &mut [usize],
) -> std::result::Result<(), String> {
    if e.source >= num_nodes {
        return Err(format!(
            "hyperedge {id}: source {} out of range (num_nodes = {num_nodes})",
            e.source
        ));
    }
    if !(e.weight.is_finite() && e.weight > 0.0) {
        return Err(format!("hyperedge {id}: weight {} is not positive", e.weight));
    }
    for &d in &e.destinations {
        if d >= num_nodes {
            return Err(format!(
                "hyperedge {id}: destination {d} out of range (num_nodes = {num_nodes})"
            ));
        }
        if seen[d] == id {
            return Err(format!("hyperedge {id}: duplicate destination {d}"));
        }
        seen[d] = id;
    }
    Ok(())
}
