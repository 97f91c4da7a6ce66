//! Random cyclic and layered benchmark networks with their structural
//! diagnostics.

use snnmap::generators::{gen_layered, gen_random_cyclic, FanIn, LayeredSnnSpec, RandomSnnSpec};
use snnmap::metrics::{avg_hedge_overlap, avg_path_length, DEFAULT_SAMPLES};
use snnmap::IndexedHypergraph;

fn main() -> snnmap::Result<()> {
    for decay in [0.05, 0.1, 0.5] {
        let spec = RandomSnnSpec {
            decay_scale: decay,
            ..RandomSnnSpec::new(1000, 16.0, 2)
        };
        let g = IndexedHypergraph::new(gen_random_cyclic(&spec)?);
        println!(
            "random decay {decay:4}: connections {} path length {:.2} overlap {:.4}",
            g.num_connections(),
            avg_path_length(&g, DEFAULT_SAMPLES, 1)?,
            avg_hedge_overlap(&g, DEFAULT_SAMPLES, 1)?
        );
    }
    let spec = LayeredSnnSpec {
        fan_in: vec![FanIn::Window { size: 9, stride: 2 }; 2],
        ..LayeredSnnSpec::dense(vec![256, 124, 58], 2)
    };
    let g = IndexedHypergraph::new(gen_layered(&spec)?);
    println!(
        "layered windowed: connections {} overlap {:.4}",
        g.num_connections(),
        avg_hedge_overlap(&g, DEFAULT_SAMPLES, 1)?
    );
    Ok(())
}
