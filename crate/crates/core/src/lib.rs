//! Mapping of spiking neural networks onto 2D meshes of neuromorphic cores.
//!
//! A network is modeled as a directed hypergraph where every hyperedge has a
//! single source (one axon) and a set of destinations (its synapses), weighted
//! by spike frequency. Mapping happens in two steps:
//!
//! 1. **Partitioning** groups neurons into cores under the per-core limits on
//!    neurons, distinct inbound axons and synapses ([`partitioning`]).
//! 2. **Placement** assigns every partition to a lattice coordinate
//!    ([`placement`]).
//!
//! Mappings are scored with the λ−1 connectivity of the partition hypergraph
//! ([`hgraph::connectivity`]), energy, latency and congestion under a mesh
//! network-on-chip cost model ([`costmodel`]), and the synaptic reuse and
//! connections locality measures ([`metrics`]).
//!
//! The `examples/` directory of this crate has one runnable program per
//! capability; the `snnmap` binary drives the whole pipeline from the shell.

pub mod costmodel;
pub mod error;
pub mod generators;
pub mod hgraph;
pub mod metrics;
pub mod partitioning;
pub mod pipeline;
pub mod placement;
mod sum;

pub use costmodel::{HardwareConfig, MappingReport, Placement, Point};
pub use error::{Error, Result};
pub use hgraph::{Hyperedge, Hypergraph, IndexedHypergraph, Partitioning};
