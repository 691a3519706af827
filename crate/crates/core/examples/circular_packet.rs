//! Azimuthal slices of the n = 319 circular packet: the initial packet,
//! the full revival, and the subsidiary packets at the q = 9 superrevival.
//!
//! cargo run --release --example circular_packet

use std::f64::consts::TAU;

use rydberg_revivals::basis::{gaussian_weights, BasisKind, PacketModel, SpatialProfile};
use rydberg_revivals::scales::AtomSpec;
use rydberg_revivals::schedule::{decompose_nbar, SuperrevivalSchedule};

/// Local maxima above `frac` of the global maximum, as (phi/2pi, height).
fn lumps(p: &SpatialProfile, frac: f64) -> Vec<(f64, f64)> {
    let d = &p.density;
    let top = d.iter().copied().fold(0.0, f64::max);
    let n = d.len();
    (0..n)
        .filter(|&i| {
            let (l, r) = (d[(i + n - 1) % n], d[(i + 1) % n]);
            d[i] > l && d[i] >= r && d[i] > frac * top
        })
        .map(|i| (p.grid[i] / TAU, d[i] / top))
        .collect()
}

fn show(label: &str, p: &SpatialProfile) {
    let parts: Vec<String> = lumps(p, 0.2)
        .iter()
        .map(|(x, h)| format!("{x:.3} ({h:.2})"))
        .collect();
    println!("{label:<28} maxima at phi/2pi: {}", parts.join(", "));
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let atom = AtomSpec::hydrogen(319, 2.5, 0)?;
    let weights = gaussian_weights(&atom, 6.0)?;
    let model = PacketModel::new(&atom, &weights, BasisKind::Circular)?;
    let s = *model.scales();
    let dec = decompose_nbar(319.0, 1000)?;

    show("t = 0", &model.evolve_exact(0.0).density());
    show("t = t_rev", &model.evolve_exact(s.t_rev).density());
    for q in [6, 9, 12] {
        let sched = SuperrevivalSchedule::compute(q, &s, &dec)?;
        show(
            &format!("q = {q}, t_frac (exact)"),
            &model.evolve_exact(sched.t_frac).density(),
        );
        show(
            &format!("q = {q}, b_s expansion"),
            &model.field(&model.expansion_coefficients(&sched)).density(),
        );
        // packet s sits where psi_cl is at t_frac + (s alpha / l) T_cl
        let base = (sched.t_frac / s.t_cl).fract();
        let predicted: Vec<String> = sched
            .nonzero_terms(1e-6)
            .iter()
            .map(|&i| {
                let phi = (base + sched.subsidiary_shift(i as i64).to_f64()).fract();
                format!("{phi:.3} (|b| = {:.2})", sched.b[i].norm())
            })
            .collect();
        println!("{:<28} predicted at phi/2pi: {}", "", predicted.join(", "));
    }
    Ok(())
}
