//! Mapping property measures and hypergraph diagnostics.

mod diagnostics;
mod hull;
mod locality;
mod rank;

pub use diagnostics::{avg_hedge_overlap, avg_path_length, jaccard, DEFAULT_SAMPLES};
pub use hull::{convex_hull, lattice_hull_count};
pub use locality::{connections_locality, synaptic_reuse};
pub use rank::{average_ranks, spearman};

use serde::{Deserialize, Serialize};

use crate::sum::compensated_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanKind {
    Arithmetic,
    Geometric,
}

impl MeanKind {
    /// Mean of `values`; 1 for an empty input. Geometric means expect
    /// strictly positive values.
    pub fn mean(self, values: &[f64]) -> f64 {
        if values.is_empty() {
            return 1.0;
        }
        let n = values.len() as f64;
        match self {
            MeanKind::Arithmetic => compensated_sum(values.iter().copied()) / n,
            MeanKind::Geometric => (compensated_sum(values.iter().map(|v| v.ln())) / n).exp(),
        }
    }
}
