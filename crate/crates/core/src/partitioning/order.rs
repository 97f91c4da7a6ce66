use std::collections::VecDeque;
use std::str::FromStr;

use super::AddressablePriorityQueue;
use crate::error::{Error, Result};
use crate::hgraph::{Hypergraph, IndexedHypergraph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Natural,
    Layered,
    Greedy,
    Topological,
}

/// A permutation of node ids and how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeOrder {
    sequence: Vec<NodeId>,
    kind: OrderKind,
}

impl NodeOrder {
    pub fn new(sequence: Vec<NodeId>, kind: OrderKind) -> Result<Self> {
        let mut seen = vec![false; sequence.len()];
        for &n in &sequence {
            if n >= sequence.len() || std::mem::replace(&mut seen[n], true) {
                return Err(Error::InvalidOrder(format!(
                    "node {n} is out of range or repeated"
                )));
            }
        }
        Ok(Self { sequence, kind })
    }

    pub fn natural(num_nodes: usize) -> Self {
        Self {
            sequence: (0..num_nodes).collect(),
            kind: OrderKind::Natural,
        }
    }

    pub fn sequence(&self) -> &[NodeId] {
        &self.sequence
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }
}

/// Greedy spike-flow ordering.
///
/// Every node with the fewest inbound hyperedges starts at priority +∞.
/// The highest-priority unordered node is appended next, and each of its
/// outbound hyperedges raises its destinations' priorities by the hyperedge
/// weight. With nothing queued, the unordered node with the fewest inbound
/// hyperedges is taken.
pub fn greedy_order(g: &IndexedHypergraph) -> NodeOrder {
    let n = g.num_nodes();
    let mut by_inbound: Vec<NodeId> = (0..n).collect();
    by_inbound.sort_by_key(|&m| (g.inbound(m).len(), m));
    let mut queue = AddressablePriorityQueue::new(n);
    if let Some(&first) = by_inbound.first() {
        let min = g.inbound(first).len();
        for &m in by_inbound.iter().take_while(|&&m| g.inbound(m).len() == min) {
            queue.set(m, f64::INFINITY);
        }
    }
    let mut ordered = vec![false; n];
    let mut sequence = Vec::with_capacity(n);
    let mut fallback = 0;
    while sequence.len() < n {
        let next = match queue.pop() {
            Some((m, _)) => m,
            None => {
                while ordered[by_inbound[fallback]] {
                    fallback += 1;
                }
                by_inbound[fallback]
            }
        };
        ordered[next] = true;
        sequence.push(next);
        for &e in g.outbound(next) {
            let e = g.hedge(e);
            for &m in &e.destinations {
                if !ordered[m] {
                    queue.add(m, e.weight);
                }
            }
        }
    }
    NodeOrder {
        sequence,
        kind: OrderKind::Greedy,
    }
}

/// Kahn's algorithm with a FIFO queue: roots in id order, each node's
/// outbound hyperedges in decreasing weight. `None` when the graph has a
/// cycle.
pub fn topo_order(g: &Hypergraph) -> Option<NodeOrder> {
    let n = g.num_nodes();
    let mut indegree = vec![0usize; n];
    let mut outbound: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, e) in g.hedges().iter().enumerate() {
        outbound[e.source].push(id);
        for &d in &e.destinations {
            indegree[d] += 1;
        }
    }
    for list in &mut outbound {
        list.sort_by(|&a, &b| g.hedge(b).weight.total_cmp(&g.hedge(a).weight).then(a.cmp(&b)));
    }
    let mut queue: VecDeque<NodeId> = (0..n).filter(|&m| indegree[m] == 0).collect();
    let mut sequence = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        sequence.push(u);
        for &e in &outbound[u] {
            for &d in &g.hedge(e).destinations {
                indegree[d] -= 1;
                if indegree[d] == 0 {
                    queue.push_back(d);
                }
            }
        }
    }
    (sequence.len() == n).then_some(NodeOrder {
        sequence,
        kind: OrderKind::Topological,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderStrategy {
    Natural,
    /// Stable sort by layer index, one entry per node.
    Layered(Vec<usize>),
    Greedy,
    /// Topological when acyclic, greedy otherwise.
    Topological,
}

impl FromStr for OrderStrategy {
    type Err = Error;

    /// Parses the strategy names accepted on the command line. `layered`
    /// parses to an empty layer map, to be filled in by the caller.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural" => Ok(Self::Natural),
            "layered" => Ok(Self::Layered(Vec::new())),
            "greedy" => Ok(Self::Greedy),
            "topo" | "topological" => Ok(Self::Topological),
            other => Err(Error::Unknown {
                kind: "order strategy",
                name: other.to_owned(),
            }),
        }
    }
}

pub fn make_order(g: &IndexedHypergraph, strategy: &OrderStrategy) -> Result<NodeOrder> {
    let n = g.num_nodes();
    Ok(match strategy {
        OrderStrategy::Natural => NodeOrder::natural(n),
        OrderStrategy::Layered(layer_of) => {
            if layer_of.len() != n {
                return Err(Error::InvalidOrder(format!(
                    "layer map covers {} nodes, graph has {n}",
                    layer_of.len()
                )));
            }
            let mut sequence: Vec<NodeId> = (0..n).collect();
            sequence.sort_by_key(|&m| layer_of[m]);
            NodeOrder {
                sequence,
                kind: OrderKind::Layered,
            }
        }
        OrderStrategy::Greedy => greedy_order(g),
        OrderStrategy::Topological => topo_order(g).unwrap_or_else(|| greedy_order(g)),
    })
}

/// Layer index of every node for consecutive layers of the given sizes.
pub fn layer_map(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .enumerate()
        .flat_map(|(l, &s)| std::iter::repeat_n(l, s))
        .collect()
}
