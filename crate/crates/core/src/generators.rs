//! Synthetic benchmark networks and the hardware preset catalog.

use rand::seq::index::sample_weighted;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Poisson};
use serde::{Deserialize, Serialize};

use crate::costmodel::HardwareConfig;
use crate::error::{Error, Result};
use crate::hgraph::{Hyperedge, Hypergraph};

pub const DEFAULT_DECAY_SCALE: f64 = 0.1;
pub const SPIKE_MEDIAN: f64 = 0.23;
pub const SPIKE_CV: f64 = 1.58;

/// Log-normal spike frequencies with the given median and coefficient of
/// variation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpikeFrequency {
    pub median: f64,
    pub cv: f64,
}

impl Default for SpikeFrequency {
    fn default() -> Self {
        Self {
            median: SPIKE_MEDIAN,
            cv: SPIKE_CV,
        }
    }
}

impl SpikeFrequency {
    fn distribution(&self) -> Result<LogNormal<f64>> {
        if !(self.median > 0.0 && self.cv > 0.0) {
            return Err(Error::InvalidGraph(
                "spike frequency median and CV must be positive".into(),
            ));
        }
        let sigma = (1.0 + self.cv * self.cv).ln().sqrt();
        LogNormal::new(self.median.ln(), sigma).map_err(|e| Error::InvalidGraph(e.to_string()))
    }
}

/// Random recurrent network on the unit square with distance-decaying
/// connection probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomSnnSpec {
    pub num_nodes: usize,
    /// Mean of the Poisson-distributed destination count.
    pub mean_cardinality: f64,
    pub decay_scale: f64,
    pub spike: SpikeFrequency,
    pub seed: u64,
}

impl RandomSnnSpec {
    pub fn new(num_nodes: usize, mean_cardinality: f64, seed: u64) -> Self {
        Self {
            num_nodes,
            mean_cardinality,
            decay_scale: DEFAULT_DECAY_SCALE,
            spike: SpikeFrequency::default(),
            seed,
        }
    }
}

/// One hyperedge per node. Each node draws its destination count from a
/// Poisson law (clamped to `[1, n − 1]`), then samples that many distinct
/// other nodes with probability proportional to `exp(−dist / decay_scale)`.
pub fn gen_random_cyclic(spec: &RandomSnnSpec) -> Result<Hypergraph> {
    let n = spec.num_nodes;
    if n < 2 {
        return Err(Error::InvalidGraph("a random network needs at least 2 nodes".into()));
    }
    // also rejects NaN
    if !(spec.mean_cardinality >= 1.0 && spec.decay_scale > 0.0) {
        return Err(Error::InvalidGraph(
            "mean cardinality must be at least 1 and decay scale positive".into(),
        ));
    }
    let cardinality =
        Poisson::new(spec.mean_cardinality).map_err(|e| Error::InvalidGraph(e.to_string()))?;
    let spike = spec.spike.distribution()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let pos: Vec<(f64, f64)> = (0..n).map(|_| (rng.random(), rng.random())).collect();

    let mut hedges = Vec::with_capacity(n);
    for s in 0..n {
        let k = (cardinality.sample(&mut rng) as usize).clamp(1, n - 1);
        let other = |j: usize| if j >= s { j + 1 } else { j };
        let weight = |j: usize| {
            let (a, b) = (pos[s], pos[other(j)]);
            (-((a.0 - b.0).hypot(a.1 - b.1)) / spec.decay_scale).exp()
        };
        let picked = sample_weighted(&mut rng, n - 1, weight, k)
            .map_err(|e| Error::InvalidGraph(e.to_string()))?;
        let mut destinations: Vec<usize> = picked.iter().map(other).collect();
        destinations.sort_unstable();
        hedges.push(Hyperedge::new(s, destinations, spike.sample(&mut rng)));
    }
    Hypergraph::new_snn(n, hedges)
}

/// How a layer's neurons receive from the previous layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FanIn {
    Dense,
    /// Output `j` listens to the `size` inputs starting at
    /// `min(j·stride, previous − size)`.
    Window { size: usize, stride: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayeredSnnSpec {
    pub layer_sizes: Vec<usize>,
    /// One entry per layer after the first.
    pub fan_in: Vec<FanIn>,
    pub spike: SpikeFrequency,
    pub seed: u64,
}

impl LayeredSnnSpec {
    pub fn dense(layer_sizes: Vec<usize>, seed: u64) -> Self {
        let fan_in = vec![FanIn::Dense; layer_sizes.len().saturating_sub(1)];
        Self {
            layer_sizes,
            fan_in,
            spike: SpikeFrequency::default(),
            seed,
        }
    }
}

/// Feedforward network with layer-major node ids. Neurons that feed nothing
/// (the last layer, and inputs outside every window) have no hyperedge.
pub fn gen_layered(spec: &LayeredSnnSpec) -> Result<Hypergraph> {
    let sizes = &spec.layer_sizes;
    if sizes.len() < 2 || sizes.contains(&0) {
        return Err(Error::InvalidGraph(
            "a layered network needs at least two non-empty layers".into(),
        ));
    }
    if spec.fan_in.len() != sizes.len() - 1 {
        return Err(Error::InvalidGraph(format!(
            "{} layers need {} fan-in patterns, got {}",
            sizes.len(),
            sizes.len() - 1,
            spec.fan_in.len()
        )));
    }
    let spike = spec.spike.distribution()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut offset = vec![0usize; sizes.len() + 1];
    for (l, &s) in sizes.iter().enumerate() {
        offset[l + 1] = offset[l] + s;
    }
    let mut hedges = Vec::new();
    for (l, fan) in spec.fan_in.iter().enumerate() {
        let (prev, next) = (sizes[l], sizes[l + 1]);
        let mut targets: Vec<Vec<usize>> = vec![Vec::new(); prev];
        for j in 0..next {
            let range = match *fan {
                FanIn::Dense => 0..prev,
                FanIn::Window { size, stride } => {
                    if size == 0 || size > prev || stride == 0 {
                        return Err(Error::InvalidGraph(format!(
                            "window {size} with stride {stride} does not fit layer {l} of {prev}"
                        )));
                    }
                    let start = (j * stride).min(prev - size);
                    start..start + size
                }
            };
            for i in range {
                targets[i].push(offset[l + 1] + j);
            }
        }
        for (i, destinations) in targets.into_iter().enumerate() {
            if !destinations.is_empty() {
                hedges.push(Hyperedge::new(offset[l] + i, destinations, spike.sample(&mut rng)));
            }
        }
    }
    Hypergraph::new_snn(offset[sizes.len()], hedges)
}

pub fn hardware_preset(name: &str) -> Result<HardwareConfig> {
    match name {
        "small" => Ok(HardwareConfig::small()),
        "large" => Ok(HardwareConfig::large()),
        "desk" => Ok(HardwareConfig::desk()),
        other => Err(Error::Unknown {
            kind: "hardware preset",
            name: other.to_owned(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hgraph::write_hgx;
    use crate::partitioning::topo_order;

    #[test]
    fn two_nodes_target_each_other() {
        let g = gen_random_cyclic(&RandomSnnSpec::new(2, 3.0, 7)).unwrap();
        assert_eq!(g.hedge(0).destinations, vec![1]);
        assert_eq!(g.hedge(1).destinations, vec![0]);
    }

    #[test]
    fn random_generation_is_seeded() {
        let spec = RandomSnnSpec::new(64, 4.0, 11);
        let a = write_hgx(&gen_random_cyclic(&spec).unwrap());
        assert_eq!(a, write_hgx(&gen_random_cyclic(&spec).unwrap()));
        let other = RandomSnnSpec { seed: 12, ..spec };
        assert_ne!(a, write_hgx(&gen_random_cyclic(&other).unwrap()));
    }

    #[test]
    fn dense_layers() {
        let g = gen_layered(&LayeredSnnSpec::dense(vec![3, 2], 0)).unwrap();
        assert_eq!(g.num_hedges(), 3);
        assert!(g.hedges().iter().all(|e| e.destinations == vec![3, 4]));
        assert!(topo_order(&g).is_some());
    }

    #[test]
    fn windows_overlap_by_size_minus_stride() {
        let spec = LayeredSnnSpec {
            layer_sizes: vec![6, 4],
            fan_in: vec![FanIn::Window { size: 3, stride: 1 }],
            spike: SpikeFrequency::default(),
            seed: 0,
        };
        let g = gen_layered(&spec).unwrap();
        let sources_of = |d: usize| -> Vec<usize> {
            g.hedges()
                .iter()
                .filter(|e| e.destinations.contains(&d))
                .map(|e| e.source)
                .collect()
        };
        assert_eq!(sources_of(6), vec![0, 1, 2]);
        assert_eq!(sources_of(7), vec![1, 2, 3]);
        let bad = LayeredSnnSpec {
            fan_in: vec![FanIn::Window { size: 7, stride: 1 }],
            ..spec
        };
        assert!(gen_layered(&bad).is_err());
    }

    #[test]
    fn presets() {
        let small = hardware_preset("small").unwrap();
        assert_eq!((small.npc, small.apc, small.spc), (1024, 4096, 16384));
        assert_eq!((small.width, small.height), (64, 64));
        let large = hardware_preset("large").unwrap();
        assert_eq!((large.npc, large.apc, large.spc), (4096, 65536, 262144));
        assert!(hardware_preset("desk").unwrap().validate().is_ok());
        assert!(hardware_preset("huge").is_err());
    }
}
