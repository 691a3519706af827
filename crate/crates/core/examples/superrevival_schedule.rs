//! Exact superrevival schedules: formation times, periods and the weights
//! of the subsidiary packets.
//!
//! cargo run --example superrevival_schedule

use rydberg_revivals::scales::{au_to_seconds, time_scales, AtomSpec};
use rydberg_revivals::schedule::{decompose_nbar, periodicity_witness, SuperrevivalSchedule};

fn report(label: &str, atom: &AtomSpec, qs: &[i64]) -> Result<(), Box<dyn std::error::Error>> {
    let scales = time_scales(atom)?;
    let dec = decompose_nbar(atom.n_bar_eff(), 1000)?;
    println!(
        "{label}: n_bar* = 4*{} + {} - {}",
        dec.eta, dec.lambda, dec.mu_over_nu
    );
    for &q in qs {
        let s = match SuperrevivalSchedule::compute(q, &scales, &dec) {
            Ok(s) => s,
            Err(e) => {
                println!("  q = {q:>2}: {e}");
                continue;
            }
        };
        let w = periodicity_witness(q, &dec)?;
        println!(
            "  q = {:>2}  l = {:>2}  alpha = {:>3}  N = {:>2}  t_frac = t_sr/{} - {} t_rev ({:.4e} s)",
            q,
            s.l,
            s.alpha,
            s.big_n,
            q,
            s.m_over_n,
            au_to_seconds(s.t_frac)
        );
        println!(
            "          T_frac = {}/{} t_rev - {} T_cl ({:.4e} s), witness x = {} (check {})",
            3,
            q,
            s.u_over_v,
            au_to_seconds(s.t_frac_period),
            w.x,
            w.check
        );
        let moduli: Vec<String> = s
            .b
            .iter()
            .enumerate()
            .filter(|(_, b)| b.norm() > 1e-9)
            .map(|(i, b)| format!("|b_{i}| = {:.3}", b.norm()))
            .collect();
        println!("          {}", moduli.join(", "));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    report("hydrogen 319", &AtomSpec::hydrogen(319, 2.5, 0)?, &[6, 9, 12, 15, 18, 36, 7])?;
    report("hydrogen 36", &AtomSpec::hydrogen(36, 1.5, 1)?, &[6])?;
    report("rubidium 36", &AtomSpec::alkali(36, 1.5, 1, 2.65)?, &[6, 9, 12])?;
    Ok(())
}
