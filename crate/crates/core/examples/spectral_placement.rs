//! Spectral embedding of a ring of partitions and its snapped placement.

use snnmap::placement::{build_laplacian, smallest_nonzero_eigenpairs, spectral_place};
use snnmap::{HardwareConfig, Hyperedge, Hypergraph};

fn main() -> snnmap::Result<()> {
    let k = 12;
    let hedges = (0..k).map(|p| Hyperedge::new(p, vec![(p + 1) % k], 1.0)).collect();
    let gp = Hypergraph::new(k, hedges)?;
    let embedding = smallest_nonzero_eigenpairs(&build_laplacian(&gp))?;
    println!("eigenvalues {:?}", embedding.eigenvalues);
    println!("residuals   {:?}", embedding.residuals);
    let gamma = spectral_place(&gp, &HardwareConfig::desk())?;
    for (p, c) in gamma.coords().iter().enumerate() {
        println!("partition {p:2} -> ({}, {})", c.x, c.y);
    }
    Ok(())
}
