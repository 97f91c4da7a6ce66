use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single-chip lattice of `width × height` cores with per-core capacities
/// and per-hop spike costs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardwareConfig {
    pub width: usize,
    pub height: usize,
    /// Neurons per core.
    pub npc: usize,
    /// Distinct inbound axons per core.
    pub apc: usize,
    /// Synapses per core.
    pub spc: usize,
    /// Energy per routing step, pJ.
    pub energy_route: f64,
    /// Energy per link traversal, pJ.
    pub energy_transmit: f64,
    /// Latency per routing step, ns.
    pub latency_route: f64,
    /// Latency per link traversal, ns.
    pub latency_transmit: f64,
}

const E_ROUTE: f64 = 1.7;
const L_ROUTE: f64 = 2.1;
const E_TRANSMIT: f64 = 3.5;
const L_TRANSMIT: f64 = 5.3;

impl HardwareConfig {
    /// Loihi-like core limits on a 64×64 mesh.
    pub fn small() -> Self {
        Self::with_limits(64, 64, 1024, 4096, 16384)
    }

    pub fn large() -> Self {
        Self::with_limits(64, 64, 4096, 65536, 262144)
    }

    /// An 8×8 mesh with scaled-down limits, sized for tests and examples.
    pub fn desk() -> Self {
        Self::with_limits(8, 8, 16, 64, 256)
    }

    pub fn with_limits(width: usize, height: usize, npc: usize, apc: usize, spc: usize) -> Self {
        Self {
            width,
            height,
            npc,
            apc,
            spc,
            energy_route: E_ROUTE,
            energy_transmit: E_TRANSMIT,
            latency_route: L_ROUTE,
            latency_transmit: L_TRANSMIT,
        }
    }

    pub fn num_cores(&self) -> usize {
        self.width * self.height
    }

    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("width", self.width),
            ("height", self.height),
            ("npc", self.npc),
            ("apc", self.apc),
            ("spc", self.spc),
        ];
        if let Some((name, _)) = counts.iter().find(|(_, v)| *v == 0) {
            return Err(Error::InvalidHardware(format!("{name} must be positive")));
        }
        let costs = [
            ("energy_route", self.energy_route),
            ("energy_transmit", self.energy_transmit),
            ("latency_route", self.latency_route),
            ("latency_transmit", self.latency_transmit),
        ];
        if let Some((name, _)) = costs.iter().find(|(_, v)| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidHardware(format!("{name} must be positive")));
        }
        if self.spc as u128 > self.npc as u128 * self.apc as u128 {
            return Err(Error::InvalidHardware(format!(
                "spc {} exceeds npc·apc = {}",
                self.spc,
                self.npc * self.apc
            )));
        }
        Ok(())
    }

    /// Reads a TOML document with the field names of this struct.
    pub fn from_toml(text: &str) -> Result<Self> {
        let hw: Self =
            toml::from_str(text).map_err(|e| Error::InvalidHardware(e.to_string()))?;
        hw.validate()?;
        Ok(hw)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("hardware config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_valid() {
        for hw in [HardwareConfig::small(), HardwareConfig::large(), HardwareConfig::desk()] {
            hw.validate().unwrap();
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let mut hw = HardwareConfig::desk();
        hw.spc = hw.npc * hw.apc + 1;
        assert!(hw.validate().is_err());
        let mut hw = HardwareConfig::desk();
        hw.width = 0;
        assert!(hw.validate().is_err());
        let mut hw = HardwareConfig::desk();
        hw.latency_transmit = -1.0;
        assert!(hw.validate().is_err());
    }

    #[test]
    fn toml_round_trip() {
        let hw = HardwareConfig::large();
        assert_eq!(HardwareConfig::from_toml(&hw.to_toml()).unwrap(), hw);
        assert!(HardwareConfig::from_toml("width = 3").is_err());
    }
}
