//! Node orderings and the partitioners that respect per-core limits.

mod hierarchical;
mod order;
mod overlap;
mod queue;
mod sequential;

use std::str::FromStr;

pub use hierarchical::{hierarchical_partition, hierarchical_partition_traced, HierarchyTrace};
pub use order::{
    greedy_order, layer_map, make_order, topo_order, NodeOrder, OrderKind, OrderStrategy,
};
pub use overlap::{overlap_partition, overlap_partition_traced, OverlapTrace};
pub use queue::AddressablePriorityQueue;
pub use sequential::sequential_partition;

use crate::costmodel::HardwareConfig;
use crate::error::{Error, Result};
use crate::hgraph::{IndexedHypergraph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionerKind {
    Sequential,
    Overlap,
    Hierarchical,
}

impl FromStr for PartitionerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sequential" | "seq" => Ok(Self::Sequential),
            "overlap" => Ok(Self::Overlap),
            "hierarchical" | "hier" => Ok(Self::Hierarchical),
            other => Err(Error::Unknown {
                kind: "partitioner",
                name: other.to_owned(),
            }),
        }
    }
}

impl PartitionerKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Sequential => "sequential",
            Self::Overlap => "overlap",
            Self::Hierarchical => "hierarchical",
        }
    }
}

/// A node alone in a partition must respect every core limit.
pub(crate) fn check_node_fits(g: &IndexedHypergraph, node: NodeId, hw: &HardwareConfig) -> Result<()> {
    let inbound = g.inbound(node).len();
    let reason = if hw.npc == 0 {
        "no neuron slots per core".to_owned()
    } else if inbound > hw.apc {
        format!("{inbound} inbound hyperedges exceed {} axons per core", hw.apc)
    } else if inbound > hw.spc {
        format!("{inbound} inbound connections exceed {} synapses per core", hw.spc)
    } else {
        return Ok(());
    };
    Err(Error::UnsatisfiableNode { node, reason })
}
