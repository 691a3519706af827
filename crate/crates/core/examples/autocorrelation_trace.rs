//! Fractional revivals in |A(t)|^2 before the first full revival, and the
//! full superrevival near t_sr/6.
//!
//! cargo run --release --example autocorrelation_trace

use rydberg_revivals::analysis::{detect_peaks, estimate_period};
use rydberg_revivals::basis::{autocorrelation, gaussian_weights, TimeGrid};
use rydberg_revivals::scales::{au_to_seconds, seconds_to_au, time_scales, AtomSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let atom = AtomSpec::hydrogen(319, 2.5, 0)?;
    let weights = gaussian_weights(&atom, 6.0)?;
    let s = time_scales(&atom)?;

    println!("fractional revivals (local period in units of T_cl):");
    for (frac, r) in [(8.0, 4.0), (6.0, 3.0), (4.0, 2.0), (2.0, 1.0)] {
        let centre = s.t_rev / frac;
        let grid = TimeGrid::new(centre - 3.0 * s.t_cl, centre + 3.0 * s.t_cl, s.t_cl / 512.0)?;
        let trace = autocorrelation(&weights, &atom, &grid.points())?;
        let h = 0.05f64.max(0.5 * trace.max().unwrap_or(0.0));
        let peaks = detect_peaks(&trace, h, s.t_cl / 8.0)?;
        if let Some(p) = estimate_period(&peaks) {
            println!("  t_rev/{frac}: {:.3} (expected 1/{r})", p / s.t_cl);
        }
    }

    let revival = TimeGrid::new(0.9 * s.t_rev, 1.1 * s.t_rev, s.t_cl / 64.0)?;
    let revival = autocorrelation(&weights, &atom, &revival.points())?;
    let t_frac = s.t_sr / 6.0 - 3.0 / 8.0 * s.t_rev;
    let half = seconds_to_au(1.5e-6);
    let cluster = TimeGrid::new(t_frac - half, t_frac + half, s.t_cl / 64.0)?;
    let cluster = autocorrelation(&weights, &atom, &cluster.points())?;
    println!(
        "full revival max {:.3}, superrevival max {:.3} near {:.2} us",
        revival.max().unwrap_or(0.0),
        cluster.max().unwrap_or(0.0),
        au_to_seconds(t_frac) * 1e6
    );
    Ok(())
}
