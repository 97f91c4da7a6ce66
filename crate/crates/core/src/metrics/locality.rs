use super::{lattice_hull_count, MeanKind};
use crate::costmodel::Placement;
use crate::error::{Error, Result};
use crate::hgraph::{Hypergraph, IndexedHypergraph, Partitioning};

/// Mean over partitions of inbound connections per distinct inbound
/// hyperedge. Partitions without inbound hyperedges count as 1.
pub fn synaptic_reuse(gs: &IndexedHypergraph, rho: &Partitioning, mean: MeanKind) -> Result<f64> {
    if rho.num_nodes() != gs.num_nodes() {
        return Err(Error::InvalidPartitioning(format!(
            "assignment covers {} nodes, graph has {}",
            rho.num_nodes(),
            gs.num_nodes()
        )));
    }
    let k = rho.num_partitions();
    let mut axons = vec![0usize; k];
    let mut synapses = vec![0usize; k];
    let mut stamp = vec![usize::MAX; k];
    for (id, e) in gs.hedges().iter().enumerate() {
        for &d in &e.destinations {
            let p = rho.part_of(d);
            synapses[p] += 1;
            if stamp[p] != id {
                stamp[p] = id;
                axons[p] += 1;
            }
        }
    }
    let ratios: Vec<f64> = axons
        .iter()
        .zip(&synapses)
        .map(|(&a, &s)| if a == 0 { 1.0 } else { s as f64 / a as f64 })
        .collect();
    Ok(mean.mean(&ratios))
}

/// Mean over partition hyperedges of the lattice points enclosed by the
/// hull of their source and destination cores. 1 when there are none.
pub fn connections_locality(gp: &Hypergraph, gamma: &Placement, mean: MeanKind) -> Result<f64> {
    if gamma.len() < gp.num_nodes() {
        return Err(Error::Unplaced(gamma.len()));
    }
    let mut cells = Vec::new();
    let counts: Vec<f64> = gp
        .hedges()
        .iter()
        .map(|e| {
            cells.clear();
            cells.extend(e.pins().map(|p| gamma.coord(p)));
            lattice_hull_count(&cells) as f64
        })
        .collect();
    Ok(mean.mean(&counts))
}
