//! Energies and time scales for the hydrogen and rubidium packets.
//!
//! cargo run --example time_scales

use rydberg_revivals::scales::{energy, time_scales, AtomSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let atoms = [
        ("hydrogen, n = 319", AtomSpec::hydrogen(319, 2.5, 0)?),
        ("hydrogen, n = 36", AtomSpec::hydrogen(36, 1.5, 1)?),
        ("rubidium p, n = 36", AtomSpec::alkali(36, 1.5, 1, 2.65)?),
    ];
    for (label, atom) in atoms {
        let au = time_scales(&atom)?;
        let si = au.si();
        println!("{label}");
        println!("  E(n_bar)  = {:.6e} hartree", energy(atom.n_bar, atom.delta)?);
        println!("  n_bar*    = {}   l* = {}", atom.n_bar_eff(), atom.l_eff());
        println!("  T_cl      = {:.4e} au = {:.4e} s", au.t_cl, si.t_cl);
        println!("  t_rev     = {:.4e} au = {:.4e} s", au.t_rev, si.t_rev);
        println!("  t_sr      = {:.4e} au = {:.4e} s", au.t_sr, si.t_sr);
    }
    Ok(())
}
