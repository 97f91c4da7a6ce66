use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{Hyperedge, Hypergraph, IndexedHypergraph, NodeId, PartId};
use crate::costmodel::HardwareConfig;
use crate::error::{Error, Result};
use crate::sum::compensated_sum;

/// Total surjective map from nodes to dense partition ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partitioning {
    assignment: Vec<PartId>,
    num_partitions: usize,
}

impl Partitioning {
    /// Validates that ids are dense: every id below the maximum is used.
    pub fn new(assignment: Vec<PartId>) -> Result<Self> {
        let num_partitions = assignment.iter().max().map_or(0, |&m| m + 1);
        let mut used = vec![false; num_partitions];
        for &p in &assignment {
            used[p] = true;
        }
        if let Some(gap) = used.iter().position(|u| !u) {
            return Err(Error::InvalidPartitioning(format!(
                "partition id {gap} has no node"
            )));
        }
        Ok(Self {
            assignment,
            num_partitions,
        })
    }

    /// Relabels arbitrary labels to dense ids in order of first appearance.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap: HashMap<usize, PartId> = HashMap::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = remap.len();
                *remap.entry(*l).or_insert(next)
            })
            .collect();
        Self {
            assignment,
            num_partitions: remap.len(),
        }
    }

    pub fn singletons(num_nodes: usize) -> Self {
        Self {
            assignment: (0..num_nodes).collect(),
            num_partitions: num_nodes,
        }
    }

    pub fn single_block(num_nodes: usize) -> Self {
        Self {
            assignment: vec![0; num_nodes],
            num_partitions: usize::from(num_nodes > 0),
        }
    }

    pub fn assignment(&self) -> &[PartId] {
        &self.assignment
    }

    pub fn part_of(&self, n: NodeId) -> PartId {
        self.assignment[n]
    }

    pub fn num_partitions(&self) -> usize {
        self.num_partitions
    }

    pub fn num_nodes(&self) -> usize {
        self.assignment.len()
    }

    pub fn members(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.num_partitions];
        for (n, &p) in self.assignment.iter().enumerate() {
            out[p].push(n);
        }
        out
    }

    fn check_total(&self, g: &Hypergraph) -> Result<()> {
        if self.assignment.len() != g.num_nodes() {
            return Err(Error::InvalidPartitioning(format!(
                "assignment covers {} nodes, graph has {}",
                self.assignment.len(),
                g.num_nodes()
            )));
        }
        Ok(())
    }
}

/// Builds the partition-level hypergraph.
///
/// Each hyperedge `(s, D)` becomes `(ρ(s), {ρ(d)} \ {ρ(s)})`. Hyperedges left
/// without destinations are dropped, and hyperedges with the same source and
/// destination set are merged by summing weights. Destination sets are
/// sorted; output hyperedges keep the order of their first contributor.
pub fn push_forward(g: &Hypergraph, rho: &Partitioning) -> Result<Hypergraph> {
    rho.check_total(g)?;
    let mut index: HashMap<(PartId, Vec<PartId>), usize> = HashMap::new();
    let mut hedges: Vec<Hyperedge> = Vec::new();
    let mut weights: Vec<Vec<f64>> = Vec::new();
    for e in g.hedges() {
        let src = rho.part_of(e.source);
        let mut dst: Vec<PartId> = e
            .destinations
            .iter()
            .map(|&d| rho.part_of(d))
            .filter(|&p| p != src)
            .collect();
        if dst.is_empty() {
            continue;
        }
        dst.sort_unstable();
        dst.dedup();
        match index.entry((src, dst)) {
            std::collections::hash_map::Entry::Occupied(slot) => {
                weights[*slot.get()].push(e.weight);
            }
            std::collections::hash_map::Entry::Vacant(slot) => {
                let (src, dst) = slot.key().clone();
                slot.insert(hedges.len());
                hedges.push(Hyperedge::new(src, dst, 0.0));
                weights.push(vec![e.weight]);
            }
        }
    }
    for (e, w) in hedges.iter_mut().zip(weights) {
        e.weight = compensated_sum(w);
    }
    Ok(Hypergraph::from_parts_unchecked(rho.num_partitions(), hedges))
}

/// λ−1 connectivity of a partition hypergraph: Σ w·|D|.
pub fn connectivity(gp: &Hypergraph) -> f64 {
    compensated_sum(
        gp.hedges()
            .iter()
            .map(|e| e.weight * e.destinations.len() as f64),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    /// Nodes per partition (`C_npc`).
    Neurons,
    /// Distinct inbound hyperedges per partition (`C_apc`).
    Axons,
    /// Inbound connections per partition (`C_spc`).
    Synapses,
    /// Partitions versus available cores.
    PartitionCount,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    /// `None` for the global partition count.
    pub partition: Option<PartId>,
    pub kind: ConstraintKind,
    pub observed: usize,
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub nodes: Vec<usize>,
    pub axons: Vec<usize>,
    pub synapses: Vec<usize>,
    pub violations: Vec<Violation>,
    pub valid: bool,
}

/// Counts per-partition resources.
///
/// A hyperedge counts as inbound to a partition whenever one of its
/// destinations lives there, including when its source does too.
pub fn check_constraints(
    g: &IndexedHypergraph,
    rho: &Partitioning,
    hw: &HardwareConfig,
) -> Result<ConstraintReport> {
    rho.check_total(g)?;
    let k = rho.num_partitions();
    let mut nodes = vec![0usize; k];
    for &p in rho.assignment() {
        nodes[p] += 1;
    }
    let mut axons = vec![0usize; k];
    let mut synapses = vec![0usize; k];
    // last hyperedge seen per partition, so each hyperedge counts once
    let mut stamp = vec![usize::MAX; k];
    for (id, e) in g.hedges().iter().enumerate() {
        for &d in &e.destinations {
            let p = rho.part_of(d);
            synapses[p] += 1;
            if stamp[p] != id {
                stamp[p] = id;
                axons[p] += 1;
            }
        }
    }

    let mut violations = Vec::new();
    for p in 0..k {
        for (kind, observed, limit) in [
            (ConstraintKind::Neurons, nodes[p], hw.npc),
            (ConstraintKind::Axons, axons[p], hw.apc),
            (ConstraintKind::Synapses, synapses[p], hw.spc),
        ] {
            if observed > limit {
                violations.push(Violation {
                    partition: Some(p),
                    kind,
                    observed,
                    limit,
                });
            }
        }
    }
    if k > hw.num_cores() {
        violations.push(Violation {
            partition: None,
            kind: ConstraintKind::PartitionCount,
            observed: k,
            limit: hw.num_cores(),
        });
    }
    let valid = violations.is_empty();
    Ok(ConstraintReport {
        nodes,
        axons,
        synapses,
        violations,
        valid,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionStats {
    pub num_partitions: usize,
    pub sizes: Vec<usize>,
    /// Partition size → number of partitions with that size.
    pub size_histogram: BTreeMap<usize, usize>,
    /// Distinct inbound hyperedges per partition.
    pub axons: Vec<usize>,
    /// Inbound connections per partition.
    pub synapses: Vec<usize>,
}

/// Per-partition usage, gathered node by node from the inbound index.
pub fn partition_stats(g: &IndexedHypergraph, rho: &Partitioning) -> Result<PartitionStats> {
    rho.check_total(g)?;
    let members = rho.members();
    let sizes: Vec<usize> = members.iter().map(Vec::len).collect();
    let mut size_histogram = BTreeMap::new();
    for &s in &sizes {
        *size_histogram.entry(s).or_insert(0) += 1;
    }
    let mut axons = Vec::with_capacity(members.len());
    let mut synapses = Vec::with_capacity(members.len());
    let mut inbound = std::collections::HashSet::new();
    for nodes in &members {
        inbound.clear();
        let mut syn = 0;
        for &n in nodes {
            syn += g.inbound(n).len();
            inbound.extend(g.inbound(n).iter().copied());
        }
        axons.push(inbound.len());
        synapses.push(syn);
    }
    Ok(PartitionStats {
        num_partitions: rho.num_partitions(),
        sizes,
        size_histogram,
        axons,
        synapses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hw(npc: usize, apc: usize, spc: usize) -> HardwareConfig {
        HardwareConfig {
            npc,
            apc,
            spc,
            ..HardwareConfig::desk()
        }
    }

    #[test]
    fn partitioning_ids_must_be_dense() {
        assert!(Partitioning::new(vec![0, 2]).is_err());
        let rho = Partitioning::from_labels(&[7, 3, 7, 9]);
        assert_eq!(rho.assignment(), &[0, 1, 0, 2]);
        assert_eq!(rho.num_partitions(), 3);
    }

    #[test]
    fn one_block_push_forward_is_empty() {
        let g = Hypergraph::new(
            3,
            vec![
                Hyperedge::new(0, vec![1, 2], 1.0),
                Hyperedge::new(1, vec![2], 1.0),
            ],
        )
        .unwrap();
        let gp = push_forward(&g, &Partitioning::single_block(3)).unwrap();
        assert_eq!(gp.num_nodes(), 1);
        assert_eq!(gp.num_hedges(), 0);
        assert_eq!(connectivity(&gp), 0.0);
    }

    #[test]
    fn source_partition_removed() {
        let g = Hypergraph::new(3, vec![Hyperedge::new(0, vec![1, 2], 0.5)]).unwrap();
        let rho = Partitioning::new(vec![0, 0, 1]).unwrap();
        let gp = push_forward(&g, &rho).unwrap();
        assert_eq!(gp.hedges(), &[Hyperedge::new(0, vec![1], 0.5)]);
    }

    #[test]
    fn identical_hyperedges_merge() {
        let g = Hypergraph::new(
            3,
            vec![
                Hyperedge::new(0, vec![2], 1.0),
                Hyperedge::new(1, vec![2], 2.0),
            ],
        )
        .unwrap();
        let rho = Partitioning::new(vec![0, 0, 1]).unwrap();
        let gp = push_forward(&g, &rho).unwrap();
        assert_eq!(gp.hedges(), &[Hyperedge::new(0, vec![1], 3.0)]);
    }

    #[test]
    fn push_forward_requires_total_assignment() {
        let g = Hypergraph::empty(3);
        assert!(push_forward(&g, &Partitioning::singletons(2)).is_err());
    }

    #[test]
    fn connectivity_of_single_hyperedge() {
        let gp = Hypergraph::new(2, vec![Hyperedge::new(0, vec![1], 2.0)]).unwrap();
        assert_eq!(connectivity(&gp), 2.0);
        assert_eq!(connectivity(&Hypergraph::empty(4)), 0.0);
    }

    #[test]
    fn single_node_is_valid() {
        let g = IndexedHypergraph::new(Hypergraph::empty(1));
        let r = check_constraints(&g, &Partitioning::singletons(1), &hw(1, 1, 1)).unwrap();
        assert!(r.valid);
        assert_eq!((r.nodes[0], r.axons[0], r.synapses[0]), (1, 0, 0));
    }

    #[test]
    fn reuse_counts_once_for_axons() {
        let g = IndexedHypergraph::new(
            Hypergraph::new(3, vec![Hyperedge::new(0, vec![1, 2], 1.0)]).unwrap(),
        );
        let rho = Partitioning::new(vec![0, 1, 1]).unwrap();
        let r = check_constraints(&g, &rho, &hw(2, 1, 2)).unwrap();
        assert_eq!(r.axons[1], 1);
        assert_eq!(r.synapses[1], 2);
        assert!(r.valid);
        let r = check_constraints(&g, &rho, &hw(1, 1, 1)).unwrap();
        assert!(!r.valid);
        let kinds: Vec<_> = r.violations.iter().map(|v| v.kind).collect();
        assert_eq!(kinds, vec![ConstraintKind::Neurons, ConstraintKind::Synapses]);
    }

    #[test]
    fn partition_count_limit() {
        let g = IndexedHypergraph::new(Hypergraph::empty(5));
        let tiny = HardwareConfig {
            width: 2,
            height: 2,
            ..HardwareConfig::desk()
        };
        let r = check_constraints(&g, &Partitioning::singletons(5), &tiny).unwrap();
        assert!(!r.valid);
        assert_eq!(r.violations[0].kind, ConstraintKind::PartitionCount);
        assert_eq!(r.violations[0].partition, None);
    }

    #[test]
    fn stats_of_trivial_partitionings() {
        let g = IndexedHypergraph::new(Hypergraph::empty(4));
        let s = partition_stats(&g, &Partitioning::singletons(4)).unwrap();
        assert_eq!(s.num_partitions, 4);
        assert_eq!(s.sizes, vec![1; 4]);
        let s = partition_stats(&g, &Partitioning::single_block(4)).unwrap();
        assert_eq!(s.sizes, vec![4]);
        assert_eq!(s.size_histogram.get(&4), Some(&1));
    }
}
