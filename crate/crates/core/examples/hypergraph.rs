//! Builds a small network, writes it as HGX, and pushes a partitioning
//! forward to the partition hypergraph.

use snnmap::hgraph::{connectivity, parse_hgx, push_forward, write_hgx, ParseMode};
use snnmap::{Hyperedge, Hypergraph, Partitioning};

fn main() -> snnmap::Result<()> {
    let g = Hypergraph::new_snn(
        6,
        vec![
            Hyperedge::new(0, vec![1, 2, 3], 0.5),
            Hyperedge::new(1, vec![4, 5], 0.25),
            Hyperedge::new(3, vec![0, 5], 1.0),
        ],
    )?;
    let text = write_hgx(&g);
    print!("{text}");
    assert_eq!(parse_hgx(&text, ParseMode::Snn)?, g);

    let rho = Partitioning::new(vec![0, 0, 0, 1, 1, 1])?;
    let gp = push_forward(&g, &rho)?;
    println!("partition hypergraph:");
    for e in gp.hedges() {
        println!("  {} -> {:?} weight {}", e.source, e.destinations, e.weight);
    }
    println!("connectivity {}", connectivity(&gp));
    Ok(())
}
