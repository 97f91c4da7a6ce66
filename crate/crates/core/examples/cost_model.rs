//! Energy, latency and congestion of a two-core mapping under the mesh
//! routing model.

use snnmap::costmodel::{avg_congestion, avg_latency, congestion_map, energy, tau};
use snnmap::{HardwareConfig, Hyperedge, Hypergraph, Placement, Point};

fn main() -> snnmap::Result<()> {
    let hw = HardwareConfig::small();
    let gp = Hypergraph::new(3, vec![Hyperedge::new(0, vec![1, 2], 1.0)])?;
    let gamma = Placement::new(
        vec![Point::new(0, 0), Point::new(1, 0), Point::new(2, 2)],
        hw.width,
        hw.height,
    )?;
    println!("energy      {} pJ", energy(&gp, &gamma, &hw)?);
    println!("latency     {} ns", avg_latency(&gp, &gamma, &hw)?);
    println!("congestion  {}", avg_congestion(&gp, &gamma)?);
    println!("tau at (1,1) on the way to (2,2): {}", tau(Point::new(1, 1), Point::new(0, 0), Point::new(2, 2)));

    let map = congestion_map(&gp, &gamma)?;
    for y in 0..3 {
        let row: Vec<String> = (0..3).map(|x| format!("{:.2}", map[y * hw.width + x])).collect();
        println!("{}", row.join(" "));
    }
    Ok(())
}
