use super::{check_node_fits, NodeOrder};
use crate::costmodel::HardwareConfig;
use crate::error::{Error, Result};
use crate::hgraph::{IndexedHypergraph, Partitioning};

/// Fills partitions with consecutive nodes of `order`, opening a new one
/// whenever the next node would break a core limit.
pub fn sequential_partition(
    g: &IndexedHypergraph,
    order: &NodeOrder,
    hw: &HardwareConfig,
) -> Result<Partitioning> {
    let n = g.num_nodes();
    if order.len() != n {
        return Err(Error::InvalidOrder(format!(
            "order covers {} nodes, graph has {n}",
            order.len()
        )));
    }
    let mut assignment = vec![0; n];
    // hyperedge id → last partition that counted it as inbound
    let mut stamp = vec![usize::MAX; g.num_hedges()];
    let mut current = 0;
    let (mut npc, mut apc, mut spc) = (0, 0, 0);
    for &node in order.sequence() {
        check_node_fits(g, node, hw)?;
        let inbound = g.inbound(node);
        let new_axons = inbound.iter().filter(|&&e| stamp[e] != current).count();
        if npc > 0 && (npc + 1 > hw.npc || apc + new_axons > hw.apc || spc + inbound.len() > hw.spc) {
            current += 1;
            npc = 0;
            apc = 0;
            spc = 0;
        }
        for &e in inbound {
            if stamp[e] != current {
                stamp[e] = current;
                apc += 1;
            }
        }
        npc += 1;
        spc += inbound.len();
        assignment[node] = current;
    }
    Partitioning::new(assignment)
}
