//! Synaptic reuse, connections locality, lattice hulls and a rank
//! correlation.

use snnmap::hgraph::push_forward;
use snnmap::metrics::{
    connections_locality, convex_hull, lattice_hull_count, spearman, synaptic_reuse, MeanKind,
};
use snnmap::{Hyperedge, Hypergraph, IndexedHypergraph, Partitioning, Placement, Point};

fn main() -> snnmap::Result<()> {
    let points = [Point::new(0, 0), Point::new(4, 0), Point::new(0, 3), Point::new(1, 1)];
    println!("hull {:?}", convex_hull(&points));
    println!("lattice points inside {}", lattice_hull_count(&points));

    let g = IndexedHypergraph::new(Hypergraph::new_snn(
        6,
        vec![
            Hyperedge::new(0, vec![1, 2, 3, 4], 1.0),
            Hyperedge::new(5, vec![0, 1], 0.5),
        ],
    )?);
    let rho = Partitioning::new(vec![0, 0, 1, 1, 2, 2])?;
    let gp = push_forward(&g, &rho)?;
    let gamma = Placement::new(vec![Point::new(0, 0), Point::new(3, 0), Point::new(0, 3)], 8, 8)?;
    for mean in [MeanKind::Arithmetic, MeanKind::Geometric] {
        println!(
            "{mean:?}: reuse {:.3} locality {:.3}",
            synaptic_reuse(&g, &rho, mean)?,
            connections_locality(&gp, &gamma, mean)?
        );
    }
    println!("spearman {}", spearman(&[1.0, 2.0, 3.0, 4.0], &[10.0, 30.0, 20.0, 40.0])?);
    Ok(())
}
