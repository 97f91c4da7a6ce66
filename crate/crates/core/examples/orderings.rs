//! Natural, greedy and topological node orders.

use snnmap::generators::{gen_layered, gen_random_cyclic, LayeredSnnSpec, RandomSnnSpec};
use snnmap::partitioning::{greedy_order, make_order, topo_order, OrderStrategy};
use snnmap::IndexedHypergraph;

fn main() -> snnmap::Result<()> {
    let layered = IndexedHypergraph::new(gen_layered(&LayeredSnnSpec::dense(vec![3, 3, 2], 1))?);
    let order = make_order(&layered, &OrderStrategy::Topological)?;
    println!("layered {:?}: {:?}", order.kind(), order.sequence());

    let cyclic = IndexedHypergraph::new(gen_random_cyclic(&RandomSnnSpec::new(12, 2.0, 5))?);
    println!("cyclic has a topological order: {}", topo_order(&cyclic).is_some());
    let order = make_order(&cyclic, &OrderStrategy::Topological)?;
    println!("cyclic {:?}: {:?}", order.kind(), order.sequence());
    println!("greedy: {:?}", greedy_order(&cyclic).sequence());
    Ok(())
}
