use super::{HedgeId, Hypergraph, NodeId};

/// Compressed adjacency lists: `ids[offsets[n]..offsets[n + 1]]`.
#[derive(Debug, Clone, PartialEq)]
struct Csr {
    offsets: Vec<usize>,
    ids: Vec<HedgeId>,
}

impl Csr {
    fn build(num_nodes: usize, pairs: impl Iterator<Item = (NodeId, HedgeId)> + Clone) -> Self {
        let mut offsets = vec![0usize; num_nodes + 1];
        for (n, _) in pairs.clone() {
            offsets[n + 1] += 1;
        }
        for i in 0..num_nodes {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut ids = vec![0; offsets[num_nodes]];
        for (n, e) in pairs {
            ids[fill[n]] = e;
            fill[n] += 1;
        }
        Self { offsets, ids }
    }

    fn get(&self, n: NodeId) -> &[HedgeId] {
        &self.ids[self.offsets[n]..self.offsets[n + 1]]
    }
}

/// A hypergraph with constant-time access to each node's inbound and
/// outbound hyperedges. Both lists are in increasing hyperedge id order.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexedHypergraph {
    base: Hypergraph,
    inbound: Csr,
    outbound: Csr,
}

impl IndexedHypergraph {
    pub fn new(base: Hypergraph) -> Self {
        let n = base.num_nodes();
        let inbound = Csr::build(
            n,
            base.hedges()
                .iter()
                .enumerate()
                .flat_map(|(id, e)| e.destinations.iter().map(move |&d| (d, id))),
        );
        let outbound = Csr::build(
            n,
            base.hedges().iter().enumerate().map(|(id, e)| (e.source, id)),
        );
        Self {
            base,
            inbound,
            outbound,
        }
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.base
    }

    pub fn into_graph(self) -> Hypergraph {
        self.base
    }

    /// Hyperedges whose destinations include `n`.
    pub fn inbound(&self, n: NodeId) -> &[HedgeId] {
        self.inbound.get(n)
    }

    /// Hyperedges sourced at `n`.
    pub fn outbound(&self, n: NodeId) -> &[HedgeId] {
        self.outbound.get(n)
    }
}

impl std::ops::Deref for IndexedHypergraph {
    type Target = Hypergraph;

    fn deref(&self) -> &Hypergraph {
        &self.base
    }
}

impl From<Hypergraph> for IndexedHypergraph {
    fn from(g: Hypergraph) -> Self {
        Self::new(g)
    }
}
