//! Wavefunctions, packet assembly, time evolution and the autocorrelation.

mod autocorr;
mod packet;
mod radial;
mod series;
mod weights;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scales::ScalesError;
use crate::schedule::ScheduleError;

pub use autocorr::{autocorrelation, autocorrelation_at, TimeGrid};
pub use packet::{
    evolve_exact, evolve_third_order, expansion_reconstruct, psi_cl, AmplitudeField, PacketModel,
    DEFAULT_GRID_POINTS, RADIAL_EXTENT,
};
pub use radial::{
    circular_mean_radius, ln_circular_magnitude, radial_hydrogen, radial_sqdt, RadialState,
};
pub use series::{Coordinate, SpatialProfile, TimeSeries, TimeUnit};
pub use weights::{gaussian_weights, WeightProfile, DEFAULT_WINDOW_SIGMAS};

/// Which slice of the packet is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    /// States `l = m = n - 1`, sampled in `φ` at `r = ⟨r⟩`, `θ = π/2`.
    Circular,
    /// States of fixed `l`, sampled in `r`.
    Radial,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BasisError {
    #[error("invalid quantum numbers n = {n}, l = {l}")]
    BadQuantumNumbers { n: f64, l: f64 },
    #[error("Laguerre degree n* - l* - 1 = {0} is not an integer")]
    NonIntegerDegree(f64),
    #[error("window_sigmas = {0} must be at least 4")]
    WindowTooNarrow(f64),
    #[error(
        "weight window reaches n = {lowest}, below the lowest allowed state n = {min_allowed}"
    )]
    WindowBelowThreshold { lowest: i64, min_allowed: i64 },
    #[error("circular packets are hydrogenic; got quantum defect {0}")]
    CircularWithDefect(f64),
    #[error("grid needs at least 2 points and a positive extent")]
    BadGrid,
    #[error("weights were built for n_bar = {weights}, spec has n_bar = {spec}")]
    WeightMismatch { weights: u32, spec: u32 },
    #[error(transparent)]
    Scales(#[from] ScalesError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}
