use serde::{Deserialize, Serialize};

use super::BasisError;
use crate::scales::AtomSpec;

/// Default truncation half-width in units of `σ`.
pub const DEFAULT_WINDOW_SIGMAS: f64 = 6.0;

/// Truncated gaussian amplitudes `c_k` over `k = n - n̄ ∈ [k_min, k_max]`.
///
/// The amplitudes are real and nonnegative. Only `|c_n|²` is physically
/// prescribed; a common zero phase reproduces the usual initial packet
/// localised at the inner turning point (radial) or at `φ = 0` (circular).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub n_bar: u32,
    pub sigma: f64,
    pub k_min: i64,
    pub k_max: i64,
    pub c: Vec<f64>,
}

impl WeightProfile {
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// `(k, c_k)` pairs in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        (self.k_min..=self.k_max).zip(self.c.iter().copied())
    }

    /// Principal quantum number of the `i`-th component.
    pub fn n_at(&self, i: usize) -> u32 {
        (self.n_bar as i64 + self.k_min + i as i64) as u32
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.c.iter().map(|c| c * c).collect()
    }
}

/// Gaussian weights `c_k² ∝ exp(-k²/2σ²)` truncated to `|k| ≤ ⌈wσ⌉` and
/// renormalised so that `Σ c_k² = 1`.
///
/// The lowest state in the window must still carry at least
/// `l + I + 1` as principal quantum number, so that every component has a
/// nonnegative radial node count.
pub fn gaussian_weights(spec: &AtomSpec, window_sigmas: f64) -> Result<WeightProfile, BasisError> {
    spec.validate()?;
    if !(window_sigmas >= 4.0) {
        return Err(BasisError::WindowTooNarrow(window_sigmas));
    }
    let half = (window_sigmas * spec.sigma - 1e-9).ceil() as i64;
    let lowest = spec.n_bar as i64 - half;
    let min_allowed = (spec.l + spec.effective_shift()) as i64 + 1;
    if lowest < min_allowed {
        return Err(BasisError::WindowBelowThreshold {
            lowest,
            min_allowed,
        });
    }
    let two_sigma_sq = 2.0 * spec.sigma * spec.sigma;
    let prefactor = (std::f64::consts::PI * two_sigma_sq).powf(-0.5);
    let probs: Vec<f64> = (-half..=half)
        .map(|k| prefactor * (-((k * k) as f64) / two_sigma_sq).exp())
        .collect();
    let total: f64 = probs.iter().sum();
    Ok(WeightProfile {
        n_bar: spec.n_bar,
        sigma: spec.sigma,
        k_min: -half,
        k_max: half,
        c: probs.iter().map(|p| (p / total).sqrt()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn window_of_thirty_one_states() {
        let spec = AtomSpec::hydrogen(319, 2.5, 0).unwrap();
        let w = gaussian_weights(&spec, 6.0).unwrap();
        assert_eq!(w.len(), 31);
        assert_eq!((w.k_min, w.k_max), (-15, 15));
        assert_eq!(w.n_at(0), 304);
        let ratio = w.c[15] / w.c[16];
        assert!((ratio - 0.04f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn amplitude_ratio_at_nine() {
        let spec = AtomSpec::hydrogen(36, 1.5, 1).unwrap();
        let w = gaussian_weights(&spec, 6.0).unwrap();
        assert_eq!(w.len(), 19);
        let ratio = w.c[0] / w.c[9];
        assert!((ratio / (-9f64).exp() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_narrow_or_unphysical_windows() {
        let spec = AtomSpec::hydrogen(36, 1.5, 1).unwrap();
        assert!(matches!(
            gaussian_weights(&spec, 3.0),
            Err(BasisError::WindowTooNarrow(_))
        ));
        let spec = AtomSpec::hydrogen(10, 2.0, 1).unwrap();
        assert!(matches!(
            gaussian_weights(&spec, 6.0),
            Err(BasisError::WindowBelowThreshold { lowest: -2, .. })
        ));
        // Rb: n - l - I - 1 >= 0 requires n >= 5
        let rb = AtomSpec::alkali(13, 1.5, 1, 2.65).unwrap();
        assert!(gaussian_weights(&rb, 6.0).is_err());
        let rb = AtomSpec::alkali(14, 1.5, 1, 2.65).unwrap();
        assert!(gaussian_weights(&rb, 6.0).is_ok());
    }

    proptest! {
        #[test]
        fn normalised_and_symmetric(n_bar in 60u32..400, sigma in 0.5f64..5.0, w in 4.0f64..8.0) {
            let spec = AtomSpec::hydrogen(n_bar, sigma, 1).unwrap();
            let p = gaussian_weights(&spec, w).unwrap();
            let sum: f64 = p.probabilities().iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-12);
            prop_assert!(p.k_max as f64 >= w * sigma - 1e-9);
            let n = p.len();
            for i in 0..n {
                prop_assert_eq!(p.c[i], p.c[n - 1 - i]);
                prop_assert!(p.c[i] >= 0.0);
            }
        }
    }
}
