//! Walks an 8×8 Hilbert curve and places partitions along it.

use snnmap::partitioning::NodeOrder;
use snnmap::placement::{hilbert_place, HilbertCurve};
use snnmap::HardwareConfig;

fn main() -> snnmap::Result<()> {
    let curve = HilbertCurve::new(3);
    let mut grid = vec![vec![0usize; curve.side()]; curve.side()];
    for i in 0..curve.len() {
        let p = curve.point(i);
        grid[p.y][p.x] = i;
    }
    for row in grid.iter().rev() {
        let cells: Vec<String> = row.iter().map(|i| format!("{i:2}")).collect();
        println!("{}", cells.join(" "));
    }
    let gamma = hilbert_place(&NodeOrder::natural(5), &HardwareConfig::desk())?;
    println!("first five partitions: {:?}", gamma.coords());
    Ok(())
}
