//! Automated comparison of the n = 319 autocorrelation trace with the
//! predicted superrevival periods.
//!
//! cargo run --release --example verify_schedule

use rydberg_revivals::analysis::{format_table, verify_schedule, VerifyConfig};
use rydberg_revivals::basis::{autocorrelation, gaussian_weights, TimeGrid};
use rydberg_revivals::scales::{time_scales, AtomSpec};
use rydberg_revivals::schedule::{decompose_nbar, SuperrevivalSchedule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let atom = AtomSpec::hydrogen(319, 2.5, 0)?;
    let weights = gaussian_weights(&atom, 6.0)?;
    let s = time_scales(&atom)?;
    let dec = decompose_nbar(319.0, 1000)?;
    let schedules = [6, 9, 12, 15, 18, 36]
        .iter()
        .map(|&q| SuperrevivalSchedule::compute(q, &s, &dec))
        .collect::<Result<Vec<_>, _>>()?;

    let grid = TimeGrid::new(s.t_sr / 40.0, 0.18 * s.t_sr, s.t_cl / 64.0)?;
    let trace = autocorrelation(&weights, &atom, &grid.points())?.to_seconds();
    let outcomes = verify_schedule(&trace, &schedules, &VerifyConfig::default());
    print!("{}", format_table(&outcomes));
    Ok(())
}
