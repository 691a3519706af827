//! Rydberg energies and the three characteristic time scales of a packet.
//!
//! Everything is in atomic units. Conversion to seconds happens only at the
//! I/O boundary through [`au_to_seconds`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// CODATA 2018 atomic unit of time, ħ/E_h, in seconds.
pub const AU_TIME_SECONDS: f64 = 2.418_884_326_585_7e-17;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalesError {
    #[error("effective principal quantum number n - delta = {0} must be positive")]
    NonPositiveEffectiveN(f64),
    #[error("n_bar must be at least 1")]
    ZeroNbar,
    #[error("n_bar = {n_bar} must satisfy n_bar >= l + 1 (l = {l})")]
    NbarBelowL { n_bar: u32, l: u32 },
    #[error("sigma = {0} must be positive and finite")]
    BadSigma(f64),
    #[error("quantum defect delta = {delta} must be nonnegative and below n_bar = {n_bar}")]
    BadDefect { delta: f64, n_bar: u32 },
    #[error(
        "radial node count n_bar - l - I - 1 = {nodes} is negative \
         (n_bar = {n_bar}, l = {l}, sqdt_shift = {shift})"
    )]
    NegativeNodeCount {
        nodes: i64,
        n_bar: u32,
        l: u32,
        shift: u32,
    },
    #[error("non-integer n_bar {0} (laser detuning) is not supported")]
    NonIntegerNbar(f64),
}

/// Definition of an atom together with the packet excited in it.
///
/// `delta` is the asymptotic quantum defect of the packet's `l` series; it is
/// zero for hydrogen. `sqdt_shift` is the integer supersymmetric shift used
/// to build the SQDT radial functions and is ignored when `delta == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomSpec {
    pub n_bar: u32,
    pub sigma: f64,
    pub l: u32,
    #[serde(default)]
    pub delta: f64,
    #[serde(default)]
    pub sqdt_shift: Option<u32>,
}

impl AtomSpec {
    /// Hydrogen packet centred on `n_bar`.
    pub fn hydrogen(n_bar: u32, sigma: f64, l: u32) -> Result<Self, ScalesError> {
        Self::alkali(n_bar, sigma, l, 0.0)
    }

    /// Alkali packet with quantum defect `delta`; the SQDT shift defaults to
    /// `ceil(delta)`.
    pub fn alkali(n_bar: u32, sigma: f64, l: u32, delta: f64) -> Result<Self, ScalesError> {
        let spec = AtomSpec {
            n_bar,
            sigma,
            l,
            delta,
            sqdt_shift: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Builds a spec from a real-valued `n_bar`, rejecting anything that is
    /// not an integer.
    pub fn from_real_nbar(n_bar: f64, sigma: f64, l: u32, delta: f64) -> Result<Self, ScalesError> {
        if n_bar.fract() != 0.0 || n_bar < 1.0 || n_bar > u32::MAX as f64 {
            return Err(ScalesError::NonIntegerNbar(n_bar));
        }
        Self::alkali(n_bar as u32, sigma, l, delta)
    }

    pub fn with_sqdt_shift(mut self, shift: u32) -> Result<Self, ScalesError> {
        self.sqdt_shift = Some(shift);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ScalesError> {
        if self.n_bar == 0 {
            return Err(ScalesError::ZeroNbar);
        }
        if self.n_bar < self.l + 1 {
            return Err(ScalesError::NbarBelowL {
                n_bar: self.n_bar,
                l: self.l,
            });
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(ScalesError::BadSigma(self.sigma));
        }
        if !(self.delta.is_finite() && self.delta >= 0.0 && self.delta < self.n_bar as f64) {
            return Err(ScalesError::BadDefect {
                delta: self.delta,
                n_bar: self.n_bar,
            });
        }
        let nodes = self.n_bar as i64 - self.l as i64 - self.effective_shift() as i64 - 1;
        if nodes < 0 {
            return Err(ScalesError::NegativeNodeCount {
                nodes,
                n_bar: self.n_bar,
                l: self.l,
                shift: self.effective_shift(),
            });
        }
        Ok(())
    }

    pub fn is_hydrogenic(&self) -> bool {
        self.delta == 0.0
    }

    /// SQDT shift actually in force: zero for hydrogen, otherwise the
    /// override or `ceil(delta)`.
    pub fn effective_shift(&self) -> u32 {
        if self.is_hydrogenic() {
            0
        } else {
            self.sqdt_shift.unwrap_or(self.delta.ceil() as u32)
        }
    }

    /// `n̄* = n̄ - δ`.
    pub fn n_bar_eff(&self) -> f64 {
        self.n_bar as f64 - self.delta
    }

    /// `l* = l - δ + I`.
    pub fn l_eff(&self) -> f64 {
        self.l as f64 - self.delta + self.effective_shift() as f64
    }
}

/// `T_cl`, `t_rev` and `t_sr` in atomic units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeScales {
    pub t_cl: f64,
    pub t_rev: f64,
    pub t_sr: f64,
}

/// The same scales converted to seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeScalesSi {
    pub t_cl: f64,
    pub t_rev: f64,
    pub t_sr: f64,
}

impl TimeScales {
    /// Scales for a packet centred on the effective quantum number `n_eff`.
    pub fn for_n_eff(n_eff: f64) -> Self {
        let t_cl = 2.0 * PI * n_eff.powi(3);
        let t_rev = 2.0 * n_eff / 3.0 * t_cl;
        let t_sr = 3.0 * n_eff / 4.0 * t_rev;
        TimeScales { t_cl, t_rev, t_sr }
    }

    pub fn si(&self) -> TimeScalesSi {
        TimeScalesSi {
            t_cl: au_to_seconds(self.t_cl),
            t_rev: au_to_seconds(self.t_rev),
            t_sr: au_to_seconds(self.t_sr),
        }
    }

    /// Evaluates `a·t_sr + b·t_rev + c·T_cl`.
    pub fn combine(&self, a: f64, b: f64, c: f64) -> f64 {
        a * self.t_sr + b * self.t_rev + c * self.t_cl
    }
}

/// Bound-state energy `-1 / (2 (n - δ)²)` in hartree.
pub fn energy(n: u32, delta: f64) -> Result<f64, ScalesError> {
    let n_eff = n as f64 - delta;
    if !(n_eff > 0.0) {
        return Err(ScalesError::NonPositiveEffectiveN(n_eff));
    }
    Ok(-0.5 / (n_eff * n_eff))
}

pub fn time_scales(spec: &AtomSpec) -> Result<TimeScales, ScalesError> {
    spec.validate()?;
    Ok(TimeScales::for_n_eff(spec.n_bar_eff()))
}

pub fn au_to_seconds(t_au: f64) -> f64 {
    t_au * AU_TIME_SECONDS
}

pub fn seconds_to_au(t_s: f64) -> f64 {
    t_s / AU_TIME_SECONDS
}
