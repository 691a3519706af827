use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::autocorr::{abs_a_squared, relative_energies};
use super::{
    circular_mean_radius, ln_circular_magnitude, BasisError, BasisKind, Coordinate, RadialState,
    SpatialProfile, TimeSeries, TimeUnit, WeightProfile,
};
use crate::scales::{time_scales, AtomSpec, TimeScales};
use crate::schedule::{theta, NbarDecomposition, SuperrevivalSchedule};

/// Default number of grid points in `r` or `φ`.
pub const DEFAULT_GRID_POINTS: usize = 2048;
/// Radial grids span `[0, RADIAL_EXTENT · n̄*²]` bohr by default.
pub const RADIAL_EXTENT: f64 = 2.5;

/// Complex amplitude sampled on the model grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeField {
    pub kind: BasisKind,
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl AmplitudeField {
    fn measure(&self, i: usize) -> f64 {
        match self.kind {
            BasisKind::Circular => 1.0,
            BasisKind::Radial => self.grid[i] * self.grid[i],
        }
    }

    /// `|Ψ|²` for circular slices, `r²|Ψ|²` for radial ones.
    pub fn density(&self) -> SpatialProfile {
        let density = (0..self.values.len())
            .map(|i| self.values[i].norm_sqr() * self.measure(i))
            .collect();
        SpatialProfile {
            coordinate: match self.kind {
                BasisKind::Circular => Coordinate::Phi,
                BasisKind::Radial => Coordinate::R,
            },
            grid: self.grid.clone(),
            density,
        }
    }

    /// `⟨self|other⟩` on the grid (uniform spacing factor omitted).
    pub fn inner(&self, other: &AmplitudeField) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            acc += a.conj() * b * self.measure(i);
        }
        acc
    }

    /// Normalised squared overlap `|⟨a|b⟩|² / (⟨a|a⟩⟨b|b⟩)`.
    pub fn fidelity(&self, other: &AmplitudeField) -> f64 {
        let ab = self.inner(other).norm_sqr();
        ab / (self.inner(self).re * other.inner(other).re)
    }
}

enum Basis {
    /// `|ψ_{n,n-1,n-1}(⟨r⟩, π/2)|` and the azimuthal quantum number `n - 1`.
    Circular { magnitude: Vec<f64>, m: Vec<f64> },
    /// `R_k(r_j)` stored per component.
    Radial { values: Vec<Vec<f64>> },
}

/// A gaussian packet with its basis functions tabulated on a grid.
pub struct PacketModel {
    kind: BasisKind,
    spec: AtomSpec,
    weights: WeightProfile,
    scales: TimeScales,
    rel_energies: Vec<f64>,
    grid: Vec<f64>,
    basis: Basis,
}

impl PacketModel {
    /// Default grid: 2048 points over `[0, 2π)` or `[0, 2.5 n̄*²]`.
    pub fn new(
        spec: &AtomSpec,
        weights: &WeightProfile,
        kind: BasisKind,
    ) -> Result<Self, BasisError> {
        let extent = RADIAL_EXTENT * spec.n_bar_eff().powi(2);
        Self::with_grid(spec, weights, kind, DEFAULT_GRID_POINTS, extent)
    }

    /// `radial_extent` is ignored for circular packets.
    pub fn with_grid(
        spec: &AtomSpec,
        weights: &WeightProfile,
        kind: BasisKind,
        points: usize,
        radial_extent: f64,
    ) -> Result<Self, BasisError> {
        spec.validate()?;
        if points < 2 || !(radial_extent > 0.0) {
            return Err(BasisError::BadGrid);
        }
        let rel_energies = relative_energies(weights, spec)?;
        let (grid, basis) = match kind {
            BasisKind::Circular => {
                if !spec.is_hydrogenic() {
                    return Err(BasisError::CircularWithDefect(spec.delta));
                }
                let grid = (0..points).map(|j| TAU * j as f64 / points as f64).collect();
                let r0 = circular_mean_radius(spec.n_bar);
                let mut magnitude = Vec::with_capacity(weights.len());
                let mut m = Vec::with_capacity(weights.len());
                for i in 0..weights.len() {
                    let n = weights.n_at(i);
                    magnitude.push(ln_circular_magnitude(n, r0)?.exp());
                    m.push((n - 1) as f64);
                }
                (grid, Basis::Circular { magnitude, m })
            }
            BasisKind::Radial => {
                let h = radial_extent / (points - 1) as f64;
                let grid: Vec<f64> = (0..points).map(|j| j as f64 * h).collect();
                let states = (0..weights.len())
                    .map(|i| radial_state(spec, weights.n_at(i)))
                    .collect::<Result<Vec<_>, _>>()?;
                let values = states
                    .par_iter()
                    .map(|s| grid.iter().map(|&r| s.eval(r)).collect())
                    .collect();
                (grid, Basis::Radial { values })
            }
        };
        Ok(PacketModel {
            kind,
            spec: *spec,
            weights: weights.clone(),
            scales: time_scales(spec)?,
            rel_energies,
            grid,
            basis,
        })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn spec(&self) -> &AtomSpec {
        &self.spec
    }

    pub fn scales(&self) -> &TimeScales {
        &self.scales
    }

    pub fn weights(&self) -> &WeightProfile {
        &self.weights
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Whether `t` is inside the range where the cubic expansion of the
    /// energies is trusted (`t <= t_sr / 3`).
    pub fn third_order_valid(&self, t: f64) -> bool {
        t <= self.scales.t_sr / 3.0
    }

    pub fn initial_coefficients(&self) -> Vec<Complex64> {
        self.weights.c.iter().map(|&c| Complex64::new(c, 0.0)).collect()
    }

    /// `c_k exp(-i (E_{n̄+k} - E_{n̄}) t)`.
    pub fn exact_coefficients(&self, t: f64) -> Vec<Complex64> {
        self.weights
            .c
            .iter()
            .zip(&self.rel_energies)
            .map(|(&c, &e)| Complex64::from_polar(c, -e * t))
            .collect()
    }

    /// `c_k exp(-2πi (k t/T_cl - k² t/t_rev + k³ t/t_sr))`.
    pub fn third_order_coefficients(&self, t: f64) -> Vec<Complex64> {
        let s = &self.scales;
        let (a, b, c3) = (t / s.t_cl, t / s.t_rev, t / s.t_sr);
        self.weights
            .iter()
            .map(|(k, c)| {
                let k = k as f64;
                let cycles = k * a - k * k * b + k * k * k * c3;
                Complex64::from_polar(c, -TAU * cycles.rem_euclid(1.0))
            })
            .collect()
    }

    /// `c_k exp(-2πi k t/T_cl)`: the classical, `T_cl`-periodic motion.
    pub fn classical_coefficients(&self, t: f64) -> Vec<Complex64> {
        self.shifted_classical(t / self.scales.t_cl)
    }

    fn shifted_classical(&self, cycles: f64) -> Vec<Complex64> {
        self.weights
            .iter()
            .map(|(k, c)| Complex64::from_polar(c, -TAU * (k as f64 * cycles).rem_euclid(1.0)))
            .collect()
    }

    /// `Σ_s b_s ψ_cl(t_frac + sα/l · T_cl)` in coefficient form.
    pub fn expansion_coefficients(&self, schedule: &SuperrevivalSchedule) -> Vec<Complex64> {
        let base = schedule.t_frac / self.scales.t_cl;
        let mut out = vec![Complex64::new(0.0, 0.0); self.weights.len()];
        for (s, b) in schedule.b.iter().enumerate() {
            let shift = schedule.subsidiary_shift(s as i64).to_f64();
            for (o, c) in out.iter_mut().zip(self.shifted_classical(base + shift)) {
                *o += b * c;
            }
        }
        out
    }

    /// `c_k exp(-2πi k t_frac/T_cl + 2πi θ_k)`: the field the expansion
    /// reproduces identically once the DFT over `s` is carried out.
    pub fn reduced_coefficients(
        &self,
        schedule: &SuperrevivalSchedule,
        dec: &NbarDecomposition,
    ) -> Result<Vec<Complex64>, BasisError> {
        let cycles = schedule.t_frac / self.scales.t_cl;
        self.weights
            .iter()
            .map(|(k, c)| {
                let th = theta(k, schedule.q, schedule.p, dec.eta)?.to_f64();
                let phase = TAU * (th - (k as f64 * cycles).rem_euclid(1.0));
                Ok(Complex64::from_polar(c, phase))
            })
            .collect()
    }

    /// Evaluates `Σ_k a_k φ_k` on the grid.
    pub fn field(&self, coeffs: &[Complex64]) -> AmplitudeField {
        let values = match &self.basis {
            Basis::Circular { magnitude, m } => self
                .grid
                .par_iter()
                .map(|&phi| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for ((a, mag), m) in coeffs.iter().zip(magnitude).zip(m) {
                        acc += a * Complex64::from_polar(*mag, (m * phi).rem_euclid(TAU));
                    }
                    acc
                })
                .collect(),
            Basis::Radial { values } => (0..self.grid.len())
                .into_par_iter()
                .map(|j| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (a, row) in coeffs.iter().zip(values) {
                        acc += a * row[j];
                    }
                    acc
                })
                .collect(),
        };
        AmplitudeField {
            kind: self.kind,
            grid: self.grid.clone(),
            values,
        }
    }

    pub fn evolve_exact(&self, t: f64) -> AmplitudeField {
        self.field(&self.exact_coefficients(t))
    }

    pub fn evolve_third_order(&self, t: f64) -> AmplitudeField {
        self.field(&self.third_order_coefficients(t))
    }

    pub fn psi_cl(&self, t: f64) -> AmplitudeField {
        self.field(&self.classical_coefficients(t))
    }

    /// Fidelity of the `b_s` expansion against the third-order field at
    /// `t_frac`.
    pub fn expansion_reconstruct(&self, schedule: &SuperrevivalSchedule) -> f64 {
        let expansion = self.field(&self.expansion_coefficients(schedule));
        expansion.fidelity(&self.evolve_third_order(schedule.t_frac))
    }

    /// Fidelity of the `b_s` expansion against the `θ_k`-reduced field.
    pub fn expansion_identity_fidelity(
        &self,
        schedule: &SuperrevivalSchedule,
        dec: &NbarDecomposition,
    ) -> Result<f64, BasisError> {
        let expansion = self.field(&self.expansion_coefficients(schedule));
        let reduced = self.field(&self.reduced_coefficients(schedule, dec)?);
        Ok(expansion.fidelity(&reduced))
    }

    /// `|A(t)|²`; identical for both basis kinds.
    pub fn autocorrelation(&self, t_grid: &[f64]) -> TimeSeries {
        let probs = self.weights.probabilities();
        TimeSeries {
            unit: TimeUnit::Atomic,
            t: t_grid.to_vec(),
            values: t_grid
                .par_iter()
                .map(|&t| abs_a_squared(&probs, &self.rel_energies, t))
                .collect(),
        }
    }
}

fn radial_state(spec: &AtomSpec, n: u32) -> Result<RadialState, BasisError> {
    if spec.is_hydrogenic() {
        RadialState::hydrogen(n, spec.l)
    } else {
        RadialState::sqdt(n as f64 - spec.delta, spec.l_eff())
    }
}

/// Exactly evolved packet on the default grid.
pub fn evolve_exact(
    weights: &WeightProfile,
    spec: &AtomSpec,
    t: f64,
    kind: BasisKind,
) -> Result<AmplitudeField, BasisError> {
    Ok(PacketModel::new(spec, weights, kind)?.evolve_exact(t))
}

/// Packet evolved with energies expanded to third order in `n - n̄`.
pub fn evolve_third_order(
    weights: &WeightProfile,
    spec: &AtomSpec,
    t: f64,
    kind: BasisKind,
) -> Result<AmplitudeField, BasisError> {
    Ok(PacketModel::new(spec, weights, kind)?.evolve_third_order(t))
}

/// Classical (linear-phase) evolution on the default grid.
pub fn psi_cl(
    weights: &WeightProfile,
    spec: &AtomSpec,
    t: f64,
    kind: BasisKind,
) -> Result<AmplitudeField, BasisError> {
    Ok(PacketModel::new(spec, weights, kind)?.psi_cl(t))
}

/// See [`PacketModel::expansion_reconstruct`].
pub fn expansion_reconstruct(
    schedule: &SuperrevivalSchedule,
    weights: &WeightProfile,
    spec: &AtomSpec,
    kind: BasisKind,
) -> Result<f64, BasisError> {
    Ok(PacketModel::new(spec, weights, kind)?.expansion_reconstruct(schedule))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{autocorrelation, gaussian_weights};
    use crate::schedule::decompose_nbar;

    fn circular319() -> PacketModel {
        let spec = AtomSpec::hydrogen(319, 2.5, 0).unwrap();
        let w = gaussian_weights(&spec, 6.0).unwrap();
        PacketModel::new(&spec, &w, BasisKind::Circular).unwrap()
    }

    fn radial36() -> PacketModel {
        let spec = AtomSpec::hydrogen(36, 1.5, 1).unwrap();
        let w = gaussian_weights(&spec, 6.0).unwrap();
        PacketModel::new(&spec, &w, BasisKind::Radial).unwrap()
    }

    fn norm(c: &[Complex64]) -> f64 {
        c.iter().map(|c| c.norm_sqr()).sum()
    }

    #[test]
    fn circular_packet_starts_at_phi_zero() {
        let m = circular319();
        assert_eq!(m.evolve_exact(0.0).density().argmax(), 0.0);
    }

    #[test]
    fn evolutions_agree_at_zero_and_preserve_norm() {
        let m = circular319();
        let a = m.exact_coefficients(0.0);
        assert_eq!(a, m.third_order_coefficients(0.0));
        assert_eq!(a, m.classical_coefficients(0.0));
        assert_eq!(a, m.initial_coefficients());
        let t = 0.37 * m.scales().t_sr;
        for c in [
            m.exact_coefficients(t),
            m.third_order_coefficients(t),
            m.classical_coefficients(t),
        ] {
            assert!((norm(&c) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn classical_motion_is_periodic_and_moves_at_kepler_rate() {
        let m = circular319();
        let t_cl = m.scales().t_cl;
        let t = 1234.567 * t_cl;
        let a = m.psi_cl(t);
        let b = m.psi_cl(t + t_cl);
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).norm() < 1e-10 * (1.0 + x.norm()));
        }
        let peak = m.psi_cl(0.25 * t_cl).density().argmax();
        let step = TAU / DEFAULT_GRID_POINTS as f64;
        assert!((peak - 0.25 * TAU).abs() <= step);
    }

    #[test]
    fn third_order_close_to_exact_at_revival() {
        let m = circular319();
        let t = m.scales().t_rev;
        let f = m.evolve_exact(t).fidelity(&m.evolve_third_order(t));
        assert!(f > 0.99, "fidelity {f}");
    }

    #[test]
    fn radial_packet_breathes_between_apsides() {
        let m = radial36();
        let mean_r = |p: SpatialProfile| {
            let total: f64 = p.density.iter().sum();
            p.grid.iter().zip(&p.density).map(|(r, d)| r * d).sum::<f64>() / total
        };
        let n2 = 36.0 * 36.0;
        let start = mean_r(m.evolve_exact(0.0).density());
        let half = m.evolve_exact(0.5 * m.scales().t_cl).density();
        assert!(half.argmax() > 1.2 * n2, "outer peak {}", half.argmax());
        assert!(mean_r(half) > 1.5 * start, "start {start}");
    }

    #[test]
    fn autocorrelation_identical_for_both_kinds() {
        let spec = AtomSpec::hydrogen(60, 2.0, 1).unwrap();
        let w = gaussian_weights(&spec, 6.0).unwrap();
        let c = PacketModel::with_grid(&spec, &w, BasisKind::Circular, 64, 1.0).unwrap();
        let r = PacketModel::with_grid(&spec, &w, BasisKind::Radial, 64, 9000.0).unwrap();
        let grid: Vec<f64> = (0..500).map(|i| i as f64 * 1e4).collect();
        let free = autocorrelation(&w, &spec, &grid).unwrap();
        assert_eq!(c.autocorrelation(&grid), free);
        assert_eq!(r.autocorrelation(&grid), free);
    }

    #[test]
    fn expansion_matches_reduced_field() {
        let m = circular319();
        let dec = decompose_nbar(319.0, 1000).unwrap();
        for q in [6, 9, 12, 15, 18, 36] {
            let s = SuperrevivalSchedule::compute(q, m.scales(), &dec).unwrap();
            let f = m.expansion_identity_fidelity(&s, &dec).unwrap();
            assert!(f > 1.0 - 1e-9, "q={q}: {f}");
        }
    }

    #[test]
    fn single_term_expansion_is_a_shifted_classical_packet() {
        let m = circular319();
        let dec = decompose_nbar(319.0, 1000).unwrap();
        let s = SuperrevivalSchedule::compute(6, m.scales(), &dec).unwrap();
        assert_eq!(s.nonzero_terms(1e-6), vec![4]);
        // b_4 alone: the packet sits where psi_cl(0) starts
        let peak = m.field(&m.expansion_coefficients(&s)).density().argmax();
        let wrapped = peak.min(TAU - peak);
        assert!(wrapped < 0.05 * TAU, "peak at {peak}");
    }

    #[test]
    fn circular_rejects_defects() {
        let spec = AtomSpec::alkali(36, 1.5, 1, 2.65).unwrap();
        let w = gaussian_weights(&spec, 6.0).unwrap();
        assert!(matches!(
            PacketModel::new(&spec, &w, BasisKind::Circular),
            Err(BasisError::CircularWithDefect(_))
        ));
        assert!(PacketModel::new(&spec, &w, BasisKind::Radial).is_ok());
    }
}
