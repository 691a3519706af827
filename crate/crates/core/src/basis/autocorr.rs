use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BasisError, TimeSeries, TimeUnit, WeightProfile};
use crate::scales::{energy, AtomSpec};

/// Uniform grid `start, start + step, ...` up to and including `stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl TimeGrid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self, BasisError> {
        if !(step > 0.0 && stop >= start && start.is_finite() && stop.is_finite()) {
            return Err(BasisError::BadGrid);
        }
        Ok(TimeGrid { start, stop, step })
    }

    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

/// Energies relative to the centre level, `E_{n̄+k} - E_{n̄}`.
pub(crate) fn relative_energies(
    weights: &WeightProfile,
    spec: &AtomSpec,
) -> Result<Vec<f64>, BasisError> {
    if weights.n_bar != spec.n_bar {
        return Err(BasisError::WeightMismatch {
            weights: weights.n_bar,
            spec: spec.n_bar,
        });
    }
    let centre = energy(spec.n_bar, spec.delta)?;
    (0..weights.len())
        .map(|i| Ok(energy(weights.n_at(i), spec.delta)? - centre))
        .collect()
}

/// `|Σ_k p_k exp(-i ΔE_k t)|²` with a fixed summation order.
pub(crate) fn abs_a_squared(probs: &[f64], rel_energies: &[f64], t: f64) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (p, e) in probs.iter().zip(rel_energies) {
        acc += Complex64::from_polar(*p, -e * t);
    }
    acc.norm_sqr()
}

/// `|A(t)|²` at one time (atomic units).
pub fn autocorrelation_at(
    weights: &WeightProfile,
    spec: &AtomSpec,
    t: f64,
) -> Result<f64, BasisError> {
    let e = relative_energies(weights, spec)?;
    Ok(abs_a_squared(&weights.probabilities(), &e, t))
}

/// `|A(t)|²` on a time grid in atomic units, using exact level energies.
///
/// Only `|c_k|²` and the energies enter, so circular and radial packets
/// with the same weights share this trace exactly. Grid points are
/// evaluated in parallel; each point's sum runs in a fixed order, so the
/// output does not depend on the thread count.
pub fn autocorrelation(
    weights: &WeightProfile,
    spec: &AtomSpec,
    t_grid: &[f64],
) -> Result<TimeSeries, BasisError> {
    spec.validate()?;
    let e = relative_energies(weights, spec)?;
    let probs = weights.probabilities();
    let values = t_grid
        .par_iter()
        .map(|&t| abs_a_squared(&probs, &e, t))
        .collect();
    Ok(TimeSeries {
        unit: TimeUnit::Atomic,
        t: t_grid.to_vec(),
        values,
    })
}
