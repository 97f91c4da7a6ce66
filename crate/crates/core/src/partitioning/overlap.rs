use super::{check_node_fits, AddressablePriorityQueue};
use crate::costmodel::HardwareConfig;
use crate::error::{Error, Result};
use crate::hgraph::{HedgeId, IndexedHypergraph, NodeId, Partitioning};

/// Per-run counters of the overlap partitioner.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OverlapTrace {
    /// Times each hyperedge was taken as the next one to lay out.
    pub hedge_visits: Vec<u32>,
    /// Times each node was assigned to a partition.
    pub node_assignments: Vec<u32>,
}

const UNASSIGNED: usize = usize::MAX;

/// Builds partitions one at a time by walking hyperedges, always moving on to
/// the unvisited hyperedge that overlaps most with the partition being
/// filled.
pub fn overlap_partition(g: &IndexedHypergraph, hw: &HardwareConfig) -> Result<Partitioning> {
    overlap_partition_traced(g, hw).map(|(rho, _)| rho)
}

pub fn overlap_partition_traced(
    g: &IndexedHypergraph,
    hw: &HardwareConfig,
) -> Result<(Partitioning, OverlapTrace)> {
    let n = g.num_nodes();
    let m = g.num_hedges();
    for node in 0..n {
        check_node_fits(g, node, hw)?;
    }
    let mut trace = OverlapTrace {
        hedge_visits: vec![0; m],
        node_assignments: vec![0; n],
    };

    // remaining unassigned pins per hyperedge, source included
    let mut size: Vec<usize> = g.hedges().iter().map(|e| e.destinations.len() + 1).collect();
    let mut pq = vec![0.0f64; m];
    let mut queue = AddressablePriorityQueue::new(m);
    let mut sorted: Vec<HedgeId> = (0..m).collect();
    sorted.sort_by_key(|&e| std::cmp::Reverse(size[e]));
    let mut cursor = 0;
    let mut seen = vec![false; m];
    let mut visited = 0;

    let mut part = vec![UNASSIGNED; n];
    let mut current = 0;
    let (mut npc, mut spc) = (0usize, 0usize);
    let mut apc = 0usize;
    // hyperedge id → last partition counting it as inbound
    let mut apc_stamp = vec![usize::MAX; m];
    let mut nodes: Vec<NodeId> = Vec::new();

    while visited < m {
        let e = match queue.pop() {
            Some((e, _)) => e,
            None => {
                while seen[sorted[cursor]] {
                    cursor += 1;
                }
                sorted[cursor]
            }
        };
        seen[e] = true;
        visited += 1;
        trace.hedge_visits[e] += 1;

        let hedge = g.hedge(e);
        nodes.clear();
        nodes.extend(hedge.destinations.iter().copied().filter(|&d| part[d] == UNASSIGNED));
        if g.inbound(hedge.source).is_empty() && part[hedge.source] == UNASSIGNED {
            nodes.push(hedge.source);
        }

        while !nodes.is_empty() {
            let new_axons = |v: NodeId| {
                g.inbound(v)
                    .iter()
                    .filter(|&&a| apc_stamp[a] != current)
                    .count()
            };
            let (pick, added) = nodes
                .iter()
                .enumerate()
                .map(|(i, &v)| (i, new_axons(v)))
                .min_by_key(|&(i, added)| {
                    let v = nodes[i];
                    (added, std::cmp::Reverse(g.inbound(v).len()), v)
                })
                .unwrap();
            let v = nodes[pick];
            let inbound = g.inbound(v);
            if npc == hw.npc || spc + inbound.len() > hw.spc || apc + added > hw.apc {
                if npc == 0 {
                    return Err(Error::UnsatisfiableNode {
                        node: v,
                        reason: "does not fit an empty partition".into(),
                    });
                }
                for &a in queue.ids() {
                    pq[a] = 0.0;
                }
                queue.clear();
                current += 1;
                npc = 0;
                spc = 0;
                apc = 0;
                continue;
            }
            npc += 1;
            spc += inbound.len();
            for &a in inbound {
                if apc_stamp[a] != current {
                    apc_stamp[a] = current;
                    apc += 1;
                }
            }
            part[v] = current;
            trace.node_assignments[v] += 1;
            nodes.swap_remove(pick);

            for &c in inbound.iter().chain(g.outbound(v)) {
                if seen[c] {
                    continue;
                }
                if size[c] <= 1 {
                    // every pin is now assigned
                    size[c] = 0;
                    pq[c] = 0.0;
                    queue.remove(c);
                    continue;
                }
                pq[c] = (pq[c] * size[c] as f64 + 1.0) / (size[c] - 1) as f64;
                size[c] -= 1;
                queue.set(c, g.hedge(c).weight * pq[c]);
            }
        }
    }

    // nodes touched by no hyperedge
    for v in 0..n {
        if part[v] == UNASSIGNED {
            if npc == hw.npc {
                current += 1;
                npc = 0;
            }
            npc += 1;
            part[v] = current;
            trace.node_assignments[v] += 1;
        }
    }

    let rho = Partitioning::from_labels(&part);
    if rho.num_partitions() > hw.num_cores() {
        return Err(Error::CapacityExceeded {
            partitions: rho.num_partitions(),
            cores: hw.num_cores(),
        });
    }
    Ok((rho, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hgraph::{check_constraints, connectivity, push_forward, Hyperedge, Hypergraph};

    #[test]
    fn single_hyperedge_fits_one_partition() {
        let g = IndexedHypergraph::new(
            Hypergraph::new_snn(4, vec![Hyperedge::new(0, vec![1, 2, 3], 1.0)]).unwrap(),
        );
        let (rho, trace) = overlap_partition_traced(&g, &HardwareConfig::desk()).unwrap();
        assert_eq!(rho.num_partitions(), 1);
        assert_eq!(connectivity(&push_forward(&g, &rho).unwrap()), 0.0);
        assert_eq!(trace.hedge_visits, vec![1]);
        assert_eq!(trace.node_assignments, vec![1; 4]);
    }

    #[test]
    fn disjoint_hyperedges_stay_apart() {
        let g = IndexedHypergraph::new(
            Hypergraph::new_snn(
                4,
                vec![Hyperedge::new(0, vec![1], 1.0), Hyperedge::new(2, vec![3], 1.0)],
            )
            .unwrap(),
        );
        let hw = HardwareConfig { npc: 2, ..HardwareConfig::desk() };
        let rho = overlap_partition(&g, &hw).unwrap();
        assert_eq!(rho.num_partitions(), 2);
        assert_eq!(rho.part_of(0), rho.part_of(1));
        assert_eq!(rho.part_of(2), rho.part_of(3));
        assert_eq!(connectivity(&push_forward(&g, &rho).unwrap()), 0.0);
        assert!(check_constraints(&g, &rho, &hw).unwrap().valid);
    }

    #[test]
    fn isolated_nodes_are_assigned() {
        let g = IndexedHypergraph::new(
            Hypergraph::new_snn(5, vec![Hyperedge::new(0, vec![1], 1.0)]).unwrap(),
        );
        let hw = HardwareConfig { npc: 2, ..HardwareConfig::desk() };
        let (rho, trace) = overlap_partition_traced(&g, &hw).unwrap();
        assert_eq!(rho.num_partitions(), 3);
        assert_eq!(trace.node_assignments, vec![1; 5]);
    }

    #[test]
    fn partition_budget_is_enforced() {
        let g = IndexedHypergraph::new(Hypergraph::empty(5));
        let hw = HardwareConfig { npc: 1, width: 2, height: 2, ..HardwareConfig::desk() };
        assert!(matches!(
            overlap_partition(&g, &hw),
            Err(Error::CapacityExceeded { partitions: 5, cores: 4 })
        ));
    }
}
