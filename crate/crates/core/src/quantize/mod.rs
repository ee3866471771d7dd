//! Quantization: cutoff functions and the open quantum baker's maps.

mod cutoff;
mod map;

pub use cutoff::{primitive, ramp, Cutoff};
pub use map::{MapInfo, Perturbation, QuantumMap, Trimmed, PERTURBATION_RNG};
