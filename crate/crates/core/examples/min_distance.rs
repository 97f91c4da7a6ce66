//! Minimum-distance placement of a layered network's partitions.

use snnmap::generators::{gen_layered, LayeredSnnSpec};
use snnmap::hgraph::push_forward;
use snnmap::partitioning::{make_order, overlap_partition, OrderStrategy};
use snnmap::placement::min_distance_place_traced;
use snnmap::{HardwareConfig, IndexedHypergraph};

fn main() -> snnmap::Result<()> {
    let hw = HardwareConfig::desk();
    let g = IndexedHypergraph::new(gen_layered(&LayeredSnnSpec::dense(vec![32, 24, 16, 8], 3))?);
    let rho = overlap_partition(&g, &hw)?;
    let gp = IndexedHypergraph::new(push_forward(&g, &rho)?);
    let order = make_order(&gp, &OrderStrategy::Topological)?;
    let (gamma, trace) = min_distance_place_traced(&gp, &hw, &order, true)?;
    let mut grid = vec![vec![String::from(" ."); hw.width]; hw.height];
    for (p, c) in gamma.coords().iter().enumerate() {
        grid[c.y][c.x] = format!("{p:2}");
    }
    for row in grid.iter().rev() {
        println!("{}", row.join(" "));
    }
    let agree = trace.frontier_cost == trace.full_cost;
    println!("frontier choices match the full search: {agree}");
    Ok(())
}
