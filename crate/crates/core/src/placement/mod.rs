//! Initial placements and placement refinement.

mod eigen;
mod force;
mod hilbert;
mod laplacian;
mod mindist;
mod spectral;

use std::str::FromStr;

pub use eigen::{
    budget, jacobi_eigen, lowest_modes, smallest_nonzero_eigenpairs, EigenPair, SpectralEmbedding,
    RESIDUAL_TOLERANCE, ZERO_THRESHOLD,
};
pub use force::{
    force, force_directed_refine, global_potential, potential, RefineOptions, RefineTrace,
    DEFAULT_MAX_ITERS, STEPS,
};
pub use hilbert::{hilbert_place, HilbertCurve};
pub use laplacian::{build_laplacian, smoothness, SparseLaplacian};
pub use mindist::{min_distance_place, min_distance_place_traced, spread, MinDistanceTrace};
pub use spectral::spectral_place;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlacerKind {
    Hilbert,
    Spectral,
    MinDistance,
}

impl FromStr for PlacerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hilbert" => Ok(Self::Hilbert),
            "spectral" => Ok(Self::Spectral),
            "mindist" | "min-distance" => Ok(Self::MinDistance),
            other => Err(Error::Unknown {
                kind: "placer",
                name: other.to_owned(),
            }),
        }
    }
}

impl PlacerKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Hilbert => "hilbert",
            Self::Spectral => "spectral",
            Self::MinDistance => "mindist",
        }
    }
}
