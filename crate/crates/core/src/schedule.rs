//! Superrevival schedule for hydrogen and alkali atoms.
//!
//! For a packet centred on `n̄* = 4η + λ - μ/ν` the subsidiary packets form at
//!
//! ```text
//! t_frac = t_sr / q - (m/n) t_rev,     m/n = 3(λν - μ) / (4qν)       (mod 1)
//! ```
//!
//! for `q` a multiple of three, and the structure there repeats with period
//!
//! ```text
//! T_frac = (3/q) t_rev - (u/v) T_cl,   u/v = (2(η+λ) - 3)/q - 2μ/(qν) (mod 1)
//! ```
//!
//! At `t_frac` the packet is `Σ_s b_s ψ_cl(t_frac + sα/l · T_cl)` with
//! `b_s` a length-`l` discrete Fourier transform of the residual phase
//! `θ_k = (3η/q) k² - k³/q`. All of this is done in exact rational
//! arithmetic; floating point only enters when a rational is multiplied by a
//! time scale or exponentiated into a `b_s`.
//!
//! Only `p = 1` is supported: it is the only numerator for which the
//! periodicity argument goes through.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{Rational, RationalError};
use crate::scales::TimeScales;

/// Default bound on the denominator ν of the quantum-defect fraction.
pub const DEFAULT_MAX_DENOMINATOR: i64 = 1000;
/// Exactness tolerance when turning a decimal `n̄*` into `4η + λ - μ/ν`.
pub const DECOMPOSITION_TOLERANCE: f64 = 1e-9;
/// Tolerance of the `|b'_s| = |b_(s+x) mod l|` witness check.
pub const WITNESS_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScheduleError {
    #[error("q must be a multiple of 3 (got q = {0})")]
    QNotMultipleOfThree(i64),
    #[error("q must be positive (got q = {0})")]
    NonPositiveQ(i64),
    #[error("p must be 1: periodicity of the superrevival structure only holds for p = 1 (got p = {0})")]
    UnsupportedP(i64),
    #[error("effective n_bar must be positive (got {0})")]
    NonPositiveNbar(f64),
    #[error("eta = 0 (n_bar* < 4) gives a degenerate schedule")]
    DegenerateEta,
    #[error(
        "fractional part of n_bar* = {value} is not a fraction with denominator <= {max_denominator}; \
         raise max_denominator"
    )]
    FractionNotRepresentable { value: f64, max_denominator: i64 },
    #[error("no x in [0, {l}) solves {alpha} x = {rhs} (mod {l}); arithmetic inconsistency")]
    NoWitness { alpha: i64, rhs: i64, l: i64 },
    #[error(transparent)]
    Rational(#[from] RationalError),
}

/// `n̄* = 4η + λ - μ/ν` with `λ ∈ {0,1,2,3}` and `μ/ν ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NbarDecomposition {
    pub eta: i64,
    pub lambda: i64,
    pub mu_over_nu: Rational,
}

impl NbarDecomposition {
    /// Decomposition of an integer `n̄` (hydrogen).
    pub fn integer(n_bar: i64) -> Result<Self, ScheduleError> {
        if n_bar <= 0 {
            return Err(ScheduleError::NonPositiveNbar(n_bar as f64));
        }
        let (eta, lambda) = n_bar.div_rem(&4);
        Ok(NbarDecomposition {
            eta,
            lambda,
            mu_over_nu: Rational::ZERO,
        })
    }

    /// Reconstructs `n̄*` exactly.
    pub fn n_bar_eff(&self) -> Rational {
        Rational::from_int(4 * self.eta + self.lambda) - self.mu_over_nu
    }

    fn mu(&self) -> i64 {
        self.mu_over_nu.num()
    }

    fn nu(&self) -> i64 {
        self.mu_over_nu.den()
    }
}

/// Splits `n̄*` into `(η, λ, μ/ν)`.
///
/// The fractional part is recovered as the best rational with denominator at
/// most `max_denominator`; it must match to within `1e-9`.
pub fn decompose_nbar(
    n_bar_eff: f64,
    max_denominator: i64,
) -> Result<NbarDecomposition, ScheduleError> {
    if !(n_bar_eff.is_finite() && n_bar_eff > 0.0) {
        return Err(ScheduleError::NonPositiveNbar(n_bar_eff));
    }
    let nearest = n_bar_eff.round();
    if (n_bar_eff - nearest).abs() <= DECOMPOSITION_TOLERANCE && nearest >= 1.0 {
        return NbarDecomposition::integer(nearest as i64);
    }
    let ceil = n_bar_eff.ceil();
    let deficit = ceil - n_bar_eff;
    let mu_over_nu = Rational::approximate(deficit, max_denominator, DECOMPOSITION_TOLERANCE)
        .map_err(|_| ScheduleError::FractionNotRepresentable {
            value: n_bar_eff,
            max_denominator,
        })?;
    let (eta, lambda) = (ceil as i64).div_rem(&4);
    Ok(NbarDecomposition {
        eta,
        lambda,
        mu_over_nu,
    })
}

fn check_q(q: i64) -> Result<(), ScheduleError> {
    if q <= 0 {
        return Err(ScheduleError::NonPositiveQ(q));
    }
    if q % 3 != 0 {
        return Err(ScheduleError::QNotMultipleOfThree(q));
    }
    Ok(())
}

fn check_p(p: i64) -> Result<(), ScheduleError> {
    if p != 1 {
        return Err(ScheduleError::UnsupportedP(p));
    }
    Ok(())
}

/// Minimum period `l` of `θ_k` in `k`, and `J = 3l/q`.
pub fn level_period(q: i64) -> Result<(i64, i64), ScheduleError> {
    check_q(q)?;
    if q % 9 != 0 {
        Ok((q, 3))
    } else {
        Ok((q / 3, 1))
    }
}

/// `m/n = 3p(λν - μ) / (4qν) mod 1`.
pub fn frac_shift(q: i64, p: i64, dec: &NbarDecomposition) -> Result<Rational, ScheduleError> {
    check_q(q)?;
    check_p(p)?;
    let num = 3 * p * (dec.lambda * dec.nu() - dec.mu());
    Ok(Rational::new(num, 4 * q * dec.nu())?.mod_one())
}

/// `α = 8η` with every prime shared with `l` removed; `N = 8η / α`.
pub fn alpha_reduction(eta: i64, l: i64) -> Result<(i64, i64), ScheduleError> {
    if eta <= 0 {
        return Err(ScheduleError::DegenerateEta);
    }
    let mut alpha = 8 * eta;
    loop {
        let g = alpha.gcd(&l);
        if g == 1 {
            break;
        }
        alpha /= g;
    }
    Ok((alpha, 8 * eta / alpha))
}

/// `θ_k = (3ηp/q) k² - (p/q) k³ mod 1`.
pub fn theta(k: i64, q: i64, p: i64, eta: i64) -> Result<Rational, ScheduleError> {
    check_q(q)?;
    Ok(quadratic_cubic_phase(k, Rational::new(3 * eta * p, q)?, Rational::new(p, q)?))
}

/// `θ'_k = (3(η+1)/q) k² - k³/q mod 1`, the residual phase one period
/// `(3/q) t_rev` later.
pub fn theta_shifted(k: i64, q: i64, eta: i64) -> Result<Rational, ScheduleError> {
    check_q(q)?;
    Ok(quadratic_cubic_phase(k, Rational::new(3 * (eta + 1), q)?, Rational::new(1, q)?))
}

fn quadratic_cubic_phase(k: i64, quad: Rational, cubic: Rational) -> Rational {
    // reduce each term first so k³ never meets a large numerator
    let k2 = (quad * (k * k)).mod_one();
    let k3 = (cubic * (k * k * k)).mod_one();
    (k2 - k3).mod_one()
}

/// `b_s = (1/l) Σ_{k=0}^{l-1} exp(2πi (α s k / l + φ_k))` for a phase table
/// `φ_k` of length `l`. Phases are summed exactly mod 1 before being
/// exponentiated.
fn dft_coefficients(alpha: i64, phases: &[Rational]) -> Vec<Complex64> {
    let l = phases.len() as i64;
    (0..l)
        .map(|s| {
            let sum: Complex64 = phases
                .iter()
                .enumerate()
                .map(|(k, &phi)| {
                    let shift = Rational::new((alpha * s).mod_floor(&l) * k as i64, l)
                        .expect("l > 0")
                        .mod_one();
                    cis((shift + phi).mod_one())
                })
                .sum();
            sum / l as f64
        })
        .collect()
}

fn cis(turns: Rational) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * turns.to_f64())
}

/// Superrevival expansion coefficients `b_s`, `s = 0..l`.
pub fn b_coefficients(q: i64, dec: &NbarDecomposition) -> Result<Vec<Complex64>, ScheduleError> {
    let (l, _) = level_period(q)?;
    let (alpha, _) = alpha_reduction(dec.eta, l)?;
    let phases = (0..l)
        .map(|k| theta(k, q, 1, dec.eta))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(dft_coefficients(alpha, &phases))
}

/// `t_frac = t_sr / q - (m/n) t_rev` in atomic units.
pub fn t_frac(q: i64, scales: &TimeScales, dec: &NbarDecomposition) -> Result<f64, ScheduleError> {
    let m_over_n = frac_shift(q, 1, dec)?;
    Ok(scales.t_sr / q as f64 - m_over_n.to_f64() * scales.t_rev)
}

/// `u/v = (2(η+λ) - 3)/q - 2μ/(qν) mod 1`.
pub fn period_shift(q: i64, dec: &NbarDecomposition) -> Result<Rational, ScheduleError> {
    check_q(q)?;
    let first = Rational::new(2 * (dec.eta + dec.lambda) - 3, q)?;
    let second = Rational::new(2 * dec.mu(), q * dec.nu())?;
    Ok((first - second).mod_one())
}

/// `T_frac = (3/q) t_rev - (u/v) T_cl` in atomic units, together with `u/v`.
pub fn t_frac_period(
    q: i64,
    scales: &TimeScales,
    dec: &NbarDecomposition,
) -> Result<(f64, Rational), ScheduleError> {
    let u_over_v = period_shift(q, dec)?;
    let period = 3.0 / q as f64 * scales.t_rev - u_over_v.to_f64() * scales.t_cl;
    Ok((period, u_over_v))
}

/// Outcome of [`periodicity_witness`].
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub x: i64,
    pub check: bool,
    /// Largest `| |b'_s| - |b_(s+x) mod l| |` over `s`.
    pub max_deviation: f64,
    pub b_shifted: Vec<Complex64>,
}

/// Smallest `x ∈ [0, l)` with `αx ≡ J(2η+1) (mod l)`, and a numerical check
/// that the coefficients one period later are the `b_s` cyclically shifted
/// by `x` (up to phases).
pub fn periodicity_witness(q: i64, dec: &NbarDecomposition) -> Result<Witness, ScheduleError> {
    let (l, j) = level_period(q)?;
    let (alpha, _) = alpha_reduction(dec.eta, l)?;
    let rhs = (j * (2 * dec.eta + 1)).mod_floor(&l);
    let x = (0..l)
        .find(|x| (alpha * x).mod_floor(&l) == rhs)
        .ok_or(ScheduleError::NoWitness { alpha, rhs, l })?;

    let b = b_coefficients(q, dec)?;
    let shifted_phases = (0..l)
        .map(|k| theta_shifted(k, q, dec.eta))
        .collect::<Result<Vec<_>, _>>()?;
    let b_shifted = dft_coefficients(alpha, &shifted_phases);
    let max_deviation = (0..l as usize)
        .map(|s| (b_shifted[s].norm() - b[(s + x as usize) % l as usize].norm()).abs())
        .fold(0.0, f64::max);
    Ok(Witness {
        x,
        check: max_deviation <= WITNESS_TOLERANCE,
        max_deviation,
        b_shifted,
    })
}

/// Complete schedule record for one `q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperrevivalSchedule {
    pub q: i64,
    pub p: i64,
    pub l: i64,
    pub alpha: i64,
    pub big_n: i64,
    #[serde(rename = "J")]
    pub j: i64,
    pub m_over_n: Rational,
    pub u_over_v: Rational,
    /// Atomic units.
    pub t_frac: f64,
    /// Atomic units.
    pub t_frac_period: f64,
    #[serde(with = "complex_objects")]
    pub b: Vec<Complex64>,
    pub witness_x: i64,
}

/// `b_s` as `[{"re": .., "im": ..}, ..]`.
mod complex_objects {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct ReIm {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(v: &[Complex64], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(|c| ReIm { re: c.re, im: c.im }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Complex64>, D::Error> {
        let raw = Vec::<ReIm>::deserialize(de)?;
        Ok(raw.into_iter().map(|c| Complex64::new(c.re, c.im)).collect())
    }
}

impl SuperrevivalSchedule {
    pub fn compute(
        q: i64,
        scales: &TimeScales,
        dec: &NbarDecomposition,
    ) -> Result<Self, ScheduleError> {
        let (l, j) = level_period(q)?;
        let (alpha, big_n) = alpha_reduction(dec.eta, l)?;
        let m_over_n = frac_shift(q, 1, dec)?;
        let (period, u_over_v) = t_frac_period(q, scales, dec)?;
        let witness = periodicity_witness(q, dec)?;
        Ok(SuperrevivalSchedule {
            q,
            p: 1,
            l,
            alpha,
            big_n,
            j,
            m_over_n,
            u_over_v,
            t_frac: t_frac(q, scales, dec)?,
            t_frac_period: period,
            b: b_coefficients(q, dec)?,
            witness_x: witness.x,
        })
    }

    /// Shift of the `s`-th subsidiary packet, `sα/l` in units of `T_cl`,
    /// reduced mod 1.
    pub fn subsidiary_shift(&self, s: i64) -> Rational {
        Rational::new(s * self.alpha, self.l)
            .expect("l > 0")
            .mod_one()
    }

    /// Indices `s` whose `|b_s|` exceeds `threshold`.
    pub fn nonzero_terms(&self, threshold: f64) -> Vec<usize> {
        self.b
            .iter()
            .enumerate()
            .filter(|(_, b)| b.norm() > threshold)
            .map(|(s, _)| s)
            .collect()
    }
}
