//! Sequential, overlap and hierarchical partitioning of one random network.

use snnmap::generators::{gen_random_cyclic, RandomSnnSpec};
use snnmap::hgraph::{check_constraints, connectivity, push_forward};
use snnmap::partitioning::{
    greedy_order, hierarchical_partition, overlap_partition, sequential_partition, NodeOrder,
};
use snnmap::{HardwareConfig, IndexedHypergraph};

fn main() -> snnmap::Result<()> {
    let hw = HardwareConfig::desk();
    let g = IndexedHypergraph::new(gen_random_cyclic(&RandomSnnSpec::new(512, 8.0, 7))?);
    let runs = [
        ("sequential", sequential_partition(&g, &NodeOrder::natural(g.num_nodes()), &hw)?),
        ("sequential+greedy", sequential_partition(&g, &greedy_order(&g), &hw)?),
        ("overlap", overlap_partition(&g, &hw)?),
        ("hierarchical", hierarchical_partition(&g, &hw, 7)?),
    ];
    for (name, rho) in &runs {
        let gp = push_forward(&g, rho)?;
        let report = check_constraints(&g, rho, &hw)?;
        let kinds: Vec<String> = report.violations.iter().map(|v| format!("{:?}", v.kind)).collect();
        println!(
            "{name:18} partitions {:3}  connectivity {:8.3}  valid {} {}",
            rho.num_partitions(),
            connectivity(&gp),
            report.valid,
            kinds.join(" ")
        );
    }
    Ok(())
}
