//! End-to-end mapping runs and a comparison table.

use snnmap::generators::RandomSnnSpec;
use snnmap::partitioning::PartitionerKind;
use snnmap::pipeline::{compare_csv, map_graph, run_compare, Input, PipelineConfig};
use snnmap::placement::PlacerKind;
use snnmap::{HardwareConfig, IndexedHypergraph};

fn main() -> snnmap::Result<()> {
    let mut cfg = PipelineConfig::new(
        Input::Random(RandomSnnSpec::new(300, 6.0, 4)),
        HardwareConfig::desk(),
    );
    cfg.refine = true;
    let g = IndexedHypergraph::new(cfg.input.load()?);
    let mapping = map_graph(&g, &cfg)?;
    println!("{}", serde_json::to_string_pretty(&mapping.report).unwrap());

    let mut runs = Vec::new();
    for partitioner in [PartitionerKind::Sequential, PartitionerKind::Overlap, PartitionerKind::Hierarchical] {
        for placer in [PlacerKind::Hilbert, PlacerKind::Spectral, PlacerKind::MinDistance] {
            let mut c = cfg.clone();
            c.partitioner = partitioner;
            c.placer = placer;
            runs.push((format!("{}+{}", partitioner.name(), placer.name()), c));
        }
    }
    print!("{}", compare_csv(&run_compare(&g, &runs)));
    Ok(())
}
