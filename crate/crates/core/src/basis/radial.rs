//! Radial eigenfunctions (hydrogen and SQDT) and the circular-state slice.
//!
//! All normalisation constants are assembled as logarithms. At `n = 319`
//! the factorials involved are far outside `f64` range; only the final
//! product is exponentiated.

use std::f64::consts::PI;

use super::BasisError;
use crate::special::{laguerre_scaled, ln_factorial, ln_gamma};

/// Tolerance for accepting `n* - l* - 1` as an integer.
const DEGREE_TOLERANCE: f64 = 1e-9;

/// A normalised radial function of hydrogen form,
///
/// ```text
/// R(r) = N ρ^l e^{-ρ/2} L_d^(2l+1)(ρ),   ρ = 2r/n,   d = n - l - 1,
/// N²   = (2/n)³ Γ(n - l) / (2n Γ(n + l + 1)),
/// ```
///
/// where `n` and `l` may be the non-integer SQDT quantum numbers as long as
/// the degree `d` is a nonnegative integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialState {
    n: f64,
    l: f64,
    degree: u32,
    ln_norm: f64,
}

impl RadialState {
    /// Integer hydrogen state; normalisation via exact log-factorials.
    pub fn hydrogen(n: u32, l: u32) -> Result<Self, BasisError> {
        if n == 0 || l >= n {
            return Err(BasisError::BadQuantumNumbers {
                n: n as f64,
                l: l as f64,
            });
        }
        let nf = n as f64;
        let ln_norm = 0.5
            * (3.0 * (2.0 / nf).ln() + ln_factorial((n - l - 1) as u64)
                - (2.0 * nf).ln()
                - ln_factorial((n + l) as u64));
        Ok(RadialState {
            n: nf,
            l: l as f64,
            degree: n - l - 1,
            ln_norm,
        })
    }

    /// SQDT state with effective quantum numbers `n* = n - δ`, `l* = l - δ + I`.
    pub fn sqdt(n_star: f64, l_star: f64) -> Result<Self, BasisError> {
        let bad = || BasisError::BadQuantumNumbers {
            n: n_star,
            l: l_star,
        };
        if !(n_star > 0.0 && l_star > -0.5 && n_star.is_finite() && l_star.is_finite()) {
            return Err(bad());
        }
        let d = n_star - l_star - 1.0;
        let degree = d.round();
        if (d - degree).abs() > DEGREE_TOLERANCE {
            return Err(BasisError::NonIntegerDegree(d));
        }
        if degree < 0.0 {
            return Err(bad());
        }
        let ln_norm = 0.5
            * (3.0 * (2.0 / n_star).ln() + ln_gamma(degree + 1.0)
                - (2.0 * n_star).ln()
                - ln_gamma(n_star + l_star + 1.0));
        Ok(RadialState {
            n: n_star,
            l: l_star,
            degree: degree as u32,
            ln_norm,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Laguerre parameter `2l + 1`.
    pub fn laguerre_alpha(&self) -> f64 {
        2.0 * self.l + 1.0
    }

    pub fn eval(&self, r: f64) -> f64 {
        let rho = 2.0 * r / self.n;
        let (mantissa, log_scale) = laguerre_scaled(self.degree, self.laguerre_alpha(), rho);
        if mantissa == 0.0 {
            return 0.0;
        }
        let ln_power = if rho == 0.0 {
            if self.l == 0.0 {
                0.0
            } else {
                return 0.0;
            }
        } else {
            self.l * rho.ln()
        };
        let ln_abs = self.ln_norm + ln_power - 0.5 * rho + log_scale + mantissa.abs().ln();
        mantissa.signum() * ln_abs.exp()
    }
}

/// Normalised hydrogen radial function `R_nl(r)`.
pub fn radial_hydrogen(n: u32, l: u32, r: f64) -> Result<f64, BasisError> {
    Ok(RadialState::hydrogen(n, l)?.eval(r))
}

/// SQDT radial function `R_{n* l*}(r)`; `n* - l* - 1` must be an integer.
pub fn radial_sqdt(n_star: f64, l_star: f64, r: f64) -> Result<f64, BasisError> {
    Ok(RadialState::sqdt(n_star, l_star)?.eval(r))
}

/// `ln |ψ_{n,n-1,n-1}(r, θ = π/2, φ)|`, independent of `φ`.
pub fn ln_circular_magnitude(n: u32, r: f64) -> Result<f64, BasisError> {
    let state = RadialState::hydrogen(n, n - 1)?;
    let l = (n - 1) as f64;
    // R_{n,n-1} has a degree-0 Laguerre factor, so its log is closed form
    let rho = 2.0 * r / state.n;
    let ln_radial = state.ln_norm + l * rho.ln() - 0.5 * rho;
    // |Y_ll(π/2, φ)| = sqrt((2l+1)! / 4π) / (2^l l!)
    let ln_ylm = 0.5 * (ln_gamma(2.0 * l + 2.0) - (4.0 * PI).ln())
        - l * 2f64.ln()
        - ln_gamma(l + 1.0);
    Ok(ln_radial + ln_ylm)
}

/// `⟨r⟩` for the circular state of principal quantum number `n`.
pub fn circular_mean_radius(n: u32) -> f64 {
    let n = n as f64;
    0.5 * n * (2.0 * n + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Simpson rule on `[0, r_max]`.
    fn simpson(f: impl Fn(f64) -> f64, r_max: f64, panels: usize) -> f64 {
        let h = r_max / panels as f64;
        let mut sum = f(0.0) + f(r_max);
        for i in 1..panels {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * f(i as f64 * h);
        }
        sum * h / 3.0
    }

    fn norm(state: &RadialState, n: f64) -> f64 {
        let r_max = 4.0 * n * n + 60.0 * n;
        // keep the step below the local wavelength near the core
        let panels = 2 * (r_max / 2.0).ceil() as usize;
        simpson(|r| state.eval(r).powi(2) * r * r, r_max, panels.max(40_000))
    }

    #[test]
    fn ground_state_at_origin() {
        assert!((radial_hydrogen(1, 0, 0.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((radial_hydrogen(1, 0, 1.0).unwrap() - 2.0 * (-1f64).exp()).abs() < 1e-15);
        assert_eq!(radial_hydrogen(2, 1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn closed_forms() {
        // R_20 = (1/√2)(1 - r/2) e^{-r/2}, R_21 = (1/(2√6)) r e^{-r/2}
        for r in [0.0, 0.5, 2.0, 7.0] {
            let r20 = (1.0 - r / 2.0) * (-r / 2.0f64).exp() / 2f64.sqrt();
            let r21 = r * (-r / 2.0f64).exp() / (2.0 * 6f64.sqrt());
            assert!((radial_hydrogen(2, 0, r).unwrap() - r20).abs() < 1e-14);
            assert!((radial_hydrogen(2, 1, r).unwrap() - r21).abs() < 1e-14);
        }
    }

    #[test]
    fn normalisation_of_p_states() {
        for n in [2u32, 10, 36] {
            let s = RadialState::hydrogen(n, 1).unwrap();
            assert!((norm(&s, n as f64) - 1.0).abs() < 1e-8, "n={n}");
        }
    }

    #[test]
    fn high_n_does_not_overflow() {
        for (n, l) in [(400u32, 0u32), (400, 1), (319, 318), (400, 399)] {
            let s = RadialState::hydrogen(n, l).unwrap();
            let nf = n as f64;
            for r in [1.0, nf, nf * nf, 2.0 * nf * nf, 4.0 * nf * nf] {
                assert!(s.eval(r).is_finite(), "n={n} l={l} r={r}");
            }
        }
        let s = RadialState::hydrogen(400, 1).unwrap();
        assert!((norm(&s, 400.0) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn circular_mean_radius_by_quadrature() {
        let n = 60u32;
        let s = RadialState::hydrogen(n, n - 1).unwrap();
        let nf = n as f64;
        let mean = simpson(|r| s.eval(r).powi(2) * r.powi(3), 4.0 * nf * nf, 40_000);
        assert!((mean / circular_mean_radius(n) - 1.0).abs() < 1e-9);
        assert_eq!(circular_mean_radius(319), 0.5 * 319.0 * 639.0);
    }

    #[test]
    fn circular_magnitude_matches_direct_product() {
        // small n where the direct evaluation is still finite
        let n = 20u32;
        let r = circular_mean_radius(n);
        let l = (n - 1) as f64;
        let ylm = (ln_gamma(2.0 * l + 2.0).exp() / (4.0 * PI)).sqrt()
            / (2f64.powf(l) * ln_gamma(l + 1.0).exp());
        let direct = radial_hydrogen(n, n - 1, r).unwrap() * ylm;
        let got = ln_circular_magnitude(n, r).unwrap().exp();
        assert!((got / direct - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sqdt_reduces_to_hydrogen() {
        for n in 27..=45u32 {
            let h = RadialState::hydrogen(n, 1).unwrap();
            let s = RadialState::sqdt(n as f64, 1.0).unwrap();
            for i in 0..200 {
                let r = i as f64 * 15.0;
                let (a, b) = (h.eval(r), s.eval(r));
                assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300) + 1e-300, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn rubidium_parameters() {
        let s = RadialState::sqdt(36.0 - 2.65, 1.0 - 2.65 + 3.0).unwrap();
        assert_eq!(s.degree(), 31);
        assert!((s.laguerre_alpha() - 3.7).abs() < 1e-12);
    }

    #[test]
    fn sqdt_normalisation_in_window() {
        for n in 27..=45u32 {
            let s = RadialState::sqdt(n as f64 - 2.65, 1.35).unwrap();
            assert!((norm(&s, n as f64) - 1.0).abs() < 1e-8, "n={n}");
        }
    }

    #[test]
    fn sqdt_rejects_fractional_degree() {
        assert!(matches!(
            radial_sqdt(33.35, 1.0, 1.0),
            Err(BasisError::NonIntegerDegree(_))
        ));
        assert!(RadialState::hydrogen(3, 3).is_err());
    }
}
