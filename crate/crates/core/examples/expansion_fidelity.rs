//! How well the b_s expansion in shifted classical packets describes the
//! packet at t_frac.
//!
//! The expansion reproduces the field with the quadratic and cubic phases
//! reduced to theta_k exactly. Against the full third-order field the
//! agreement degrades by the k^3 (m/n) t_rev/t_sr phase dropped in that
//! reduction, which vanishes when m/n = 0.
//!
//! cargo run --release --example expansion_fidelity

use rydberg_revivals::basis::{gaussian_weights, BasisKind, PacketModel};
use rydberg_revivals::scales::AtomSpec;
use rydberg_revivals::schedule::{decompose_nbar, SuperrevivalSchedule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("H 319 circular", AtomSpec::hydrogen(319, 2.5, 0)?, BasisKind::Circular, vec![6, 9, 12, 15, 18]),
        ("H 36 radial", AtomSpec::hydrogen(36, 1.5, 1)?, BasisKind::Radial, vec![6]),
        ("Rb 36 radial", AtomSpec::alkali(36, 1.5, 1, 2.65)?, BasisKind::Radial, vec![6]),
    ];
    println!("{:<16} {:>3} {:>8} {:>12} {:>12} {:>12}", "case", "q", "m/n", "identity", "third-order", "exact");
    for (label, atom, kind, qs) in cases {
        let weights = gaussian_weights(&atom, 6.0)?;
        let model = PacketModel::new(&atom, &weights, kind)?;
        let dec = decompose_nbar(atom.n_bar_eff(), 1000)?;
        for q in qs {
            let s = SuperrevivalSchedule::compute(q, model.scales(), &dec)?;
            let expansion = model.field(&model.expansion_coefficients(&s));
            println!(
                "{label:<16} {q:>3} {:>8} {:>12.6} {:>12.6} {:>12.6}",
                s.m_over_n.to_string(),
                model.expansion_identity_fidelity(&s, &dec)?,
                model.expansion_reconstruct(&s),
                expansion.fidelity(&model.evolve_exact(s.t_frac)),
            );
        }
    }
    Ok(())
}
