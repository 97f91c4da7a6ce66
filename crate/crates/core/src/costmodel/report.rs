use serde::Serialize;

use super::{avg_congestion, avg_latency, energy, HardwareConfig, Placement};
use crate::error::Result;
use crate::hgraph::{connectivity, push_forward, IndexedHypergraph, Partitioning};
use crate::metrics::{connections_locality, synaptic_reuse, MeanKind};

/// Wall-clock seconds spent in each pipeline phase.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct PhaseTimes {
    pub order_s: f64,
    pub partition_s: f64,
    pub place_s: f64,
    pub refine_s: f64,
    pub evaluate_s: f64,
}

/// Quality measures of one mapping.
///
/// Runtimes are not serialized with the metrics so that reports of
/// identical runs are byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MappingReport {
    pub connectivity: f64,
    pub energy_pj: f64,
    pub avg_latency_ns: f64,
    pub avg_congestion: f64,
    pub elp: f64,
    pub sr_arith: f64,
    pub sr_geo: f64,
    pub cl_arith: f64,
    pub cl_geo: f64,
    pub partitions: usize,
    #[serde(skip)]
    pub runtimes: PhaseTimes,
}

pub fn evaluate(
    gs: &IndexedHypergraph,
    rho: &Partitioning,
    gamma: &Placement,
    hw: &HardwareConfig,
) -> Result<MappingReport> {
    let gp = push_forward(gs, rho)?;
    let energy_pj = energy(&gp, gamma, hw)?;
    let avg_latency_ns = avg_latency(&gp, gamma, hw)?;
    Ok(MappingReport {
        connectivity: connectivity(&gp),
        energy_pj,
        avg_latency_ns,
        avg_congestion: avg_congestion(&gp, gamma)?,
        elp: energy_pj * avg_latency_ns,
        sr_arith: synaptic_reuse(gs, rho, MeanKind::Arithmetic)?,
        sr_geo: synaptic_reuse(gs, rho, MeanKind::Geometric)?,
        cl_arith: connections_locality(&gp, gamma, MeanKind::Arithmetic)?,
        cl_geo: connections_locality(&gp, gamma, MeanKind::Geometric)?,
        partitions: rho.num_partitions(),
        runtimes: PhaseTimes::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costmodel::Point;
    use crate::hgraph::{Hyperedge, Hypergraph};

    #[test]
    fn one_partition_mapping_costs_nothing() {
        let g = Hypergraph::new_snn(
            3,
            vec![
                Hyperedge::new(0, vec![1, 2], 0.5),
                Hyperedge::new(1, vec![2], 1.0),
            ],
        )
        .unwrap();
        let gs = IndexedHypergraph::new(g);
        let rho = Partitioning::single_block(3);
        let gamma = Placement::new(vec![Point::new(4, 4)], 8, 8).unwrap();
        let r = evaluate(&gs, &rho, &gamma, &HardwareConfig::desk()).unwrap();
        assert_eq!(r.connectivity, 0.0);
        assert_eq!(r.energy_pj, 0.0);
        assert_eq!(r.avg_latency_ns, 0.0);
        assert_eq!(r.avg_congestion, 0.0);
        assert_eq!(r.elp, 0.0);
        assert_eq!(r.partitions, 1);
    }

    #[test]
    fn runtimes_stay_out_of_json() {
        let gs = IndexedHypergraph::new(Hypergraph::empty(1));
        let gamma = Placement::new(vec![Point::new(0, 0)], 8, 8).unwrap();
        let mut r = evaluate(&gs, &Partitioning::single_block(1), &gamma, &HardwareConfig::desk())
            .unwrap();
        r.runtimes.partition_s = 3.0;
        let json = serde_json::to_string(&r).unwrap();
        assert!(!json.contains("partition_s"));
        assert!(json.contains("\"elp\""));
    }
}
