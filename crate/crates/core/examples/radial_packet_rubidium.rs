//! Radial p-state packets in hydrogen and rubidium built from SQDT
//! wavefunctions: breathing between the apsides, and the full
//! superrevival compared with the full revival. Snapshot times are shifted
//! so that each packet sits near the outer turning point.
//!
//! cargo run --release --example radial_packet_rubidium

use rydberg_revivals::basis::{gaussian_weights, BasisKind, PacketModel, SpatialProfile};
use rydberg_revivals::scales::AtomSpec;
use rydberg_revivals::schedule::{decompose_nbar, SuperrevivalSchedule};

/// Mean radius and rms width of a radial density.
fn summary(p: &SpatialProfile) -> (f64, f64) {
    let total: f64 = p.density.iter().sum();
    let mean = p.grid.iter().zip(&p.density).map(|(r, d)| r * d).sum::<f64>() / total;
    let var = p
        .grid
        .iter()
        .zip(&p.density)
        .map(|(r, d)| (r - mean).powi(2) * d)
        .sum::<f64>()
        / total;
    (mean, var.sqrt())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // (t_sr, t_rev, T_cl) coefficients of the snapshot times
    let hydrogen = [
        ("t = 0", (0.0, 0.0, 0.0)),
        ("t = T_cl/2", (0.0, 0.0, 0.5)),
        ("revival", (0.0, 1.0, 0.5)),
        ("superrevival", (1.0 / 6.0, 0.0, -1.0 / 6.0)),
        ("one T_frac later", (1.0 / 6.0, 0.5, -2.0 / 3.0)),
    ];
    let rubidium = [
        ("t = 0", (0.0, 0.0, 0.0)),
        ("t = T_cl/2", (0.0, 0.0, 0.5)),
        ("revival", (0.0, 1.0, 4.0 / 15.0)),
        ("superrevival", (1.0 / 6.0, -27.0 / 160.0, 0.4)),
        ("one T_frac later", (1.0 / 6.0, 53.0 / 160.0, -13.0 / 60.0)),
    ];
    let cases = [
        ("hydrogen", AtomSpec::hydrogen(36, 1.5, 1)?, &hydrogen),
        ("rubidium", AtomSpec::alkali(36, 1.5, 1, 2.65)?, &rubidium),
    ];
    for (label, atom, times) in cases {
        let weights = gaussian_weights(&atom, 6.0)?;
        let model = PacketModel::new(&atom, &weights, BasisKind::Radial)?;
        let s = *model.scales();
        let dec = decompose_nbar(atom.n_bar_eff(), 1000)?;
        let sched = SuperrevivalSchedule::compute(6, &s, &dec)?;
        let active = sched.nonzero_terms(1e-6);
        let cycle = (sched.t_frac / s.t_cl + sched.subsidiary_shift(active[0] as i64).to_f64()).fract();
        println!(
            "{label}: n* = {:.2}, l* = {:.2}, b_{} = 1, single packet at {:.3} of the cycle",
            atom.n_bar_eff(),
            atom.l_eff(),
            active[0],
            cycle
        );
        for (name, (a, b, c)) in times.iter() {
            let t = s.combine(*a, *b, *c);
            let (mean, width) = summary(&model.evolve_exact(t).density());
            println!("  {name:<18} <r> = {mean:8.1}  width = {width:7.1}");
        }
    }
    Ok(())
}
