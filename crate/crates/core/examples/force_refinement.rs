//! Force-directed refinement of a deliberately scattered placement.

use snnmap::costmodel::energy;
use snnmap::partitioning::NodeOrder;
use snnmap::placement::{force_directed_refine, hilbert_place, RefineOptions};
use snnmap::{HardwareConfig, Hyperedge, Hypergraph, IndexedHypergraph};

fn main() -> snnmap::Result<()> {
    let hw = HardwareConfig::desk();
    let k = 16;
    // partition p talks to p + 7 and p + 9, far apart along the curve
    let hedges = (0..k)
        .map(|p| Hyperedge::new(p, vec![(p + 7) % k, (p + 9) % k], 1.0))
        .collect();
    let gp = IndexedHypergraph::new(Hypergraph::new(k, hedges)?);
    let gamma0 = hilbert_place(&NodeOrder::natural(k), &hw)?;
    let options = RefineOptions {
        audit: true,
        ..RefineOptions::default()
    };
    let (gamma, trace) = force_directed_refine(&gamma0, &gp, &options);
    println!(
        "sweeps {} moves {} swaps {} potential {:.1} -> {:.1} audit violations {}",
        trace.sweeps,
        trace.moves,
        trace.swaps,
        trace.initial_potential,
        trace.final_potential,
        trace.audit_violations
    );
    println!(
        "energy {:.1} -> {:.1} pJ",
        energy(&gp, &gamma0, &hw)?,
        energy(&gp, &gamma, &hw)?
    );
    Ok(())
}
