//! Mesh hardware model and post-layout cost metrics.

mod cost;
mod hardware;
mod layout;
mod report;

pub use cost::{avg_congestion, avg_latency, congestion_map, energy, manhattan, rect, tau};
pub use hardware::HardwareConfig;
pub use layout::{parse_placement_file, write_placement_file, Placement, Point};
pub use report::{evaluate, MappingReport, PhaseTimes};
