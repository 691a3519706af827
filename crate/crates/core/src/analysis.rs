//! Peak detection on `|A(t)|²` and comparison against superrevival schedules.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::basis::{TimeSeries, TimeUnit};
use crate::scales::au_to_seconds;
use crate::schedule::SuperrevivalSchedule;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("time series is empty")]
    EmptySeries,
    #[error("min_separation {min_separation} must exceed the grid spacing {spacing}")]
    SeparationBelowSpacing { min_separation: f64, spacing: f64 },
    #[error(
        "series covers [{have_lo:e}, {have_hi:e}] but the window for q = {q} needs [{need_lo:e}, {need_hi:e}]"
    )]
    InsufficientCoverage {
        q: i64,
        need_lo: f64,
        need_hi: f64,
        have_lo: f64,
        have_hi: f64,
    },
}

/// Local maxima of a trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakSet {
    pub times: Vec<f64>,
    pub heights: Vec<f64>,
    pub threshold: f64,
}

impl PeakSet {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn spacings(&self) -> Vec<f64> {
        self.times.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Strict local maxima above `min_height`, thinned greedily so that no two
/// kept peaks are closer than `min_separation` (the higher one wins).
pub fn detect_peaks(
    series: &TimeSeries,
    min_height: f64,
    min_separation: f64,
) -> Result<PeakSet, AnalysisError> {
    let indices = peak_indices(series, min_height, min_separation)?;
    Ok(PeakSet {
        times: indices.iter().map(|&i| series.t[i]).collect(),
        heights: indices.iter().map(|&i| series.values[i]).collect(),
        threshold: min_height,
    })
}

fn peak_indices(
    series: &TimeSeries,
    min_height: f64,
    min_separation: f64,
) -> Result<Vec<usize>, AnalysisError> {
    let (t, v) = (&series.t, &series.values);
    if t.is_empty() {
        return Err(AnalysisError::EmptySeries);
    }
    if t.len() >= 2 {
        let spacing = t[1] - t[0];
        if !(min_separation > spacing) {
            return Err(AnalysisError::SeparationBelowSpacing {
                min_separation,
                spacing,
            });
        }
    }
    // a flat top counts once, at its left edge
    let mut candidates: Vec<usize> = (1..v.len().saturating_sub(1))
        .filter(|&i| v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] > min_height)
        .collect();
    candidates.sort_by(|&a, &b| v[b].total_cmp(&v[a]).then(a.cmp(&b)));

    let mut kept = BTreeSet::new();
    for i in candidates {
        let left = kept.range(..i).next_back();
        let right = kept.range(i..).next();
        let clear = left.is_none_or(|&j: &usize| t[i] - t[j] >= min_separation)
            && right.is_none_or(|&j: &usize| t[j] - t[i] >= min_separation);
        if clear {
            kept.insert(i);
        }
    }
    Ok(kept.into_iter().collect())
}

/// Median spacing of consecutive peaks; `None` with fewer than three.
pub fn estimate_period(peaks: &PeakSet) -> Option<f64> {
    if peaks.len() < 3 {
        return None;
    }
    let mut d = peaks.spacings();
    d.sort_by(f64::total_cmp);
    let mid = d.len() / 2;
    Some(if d.len() % 2 == 1 {
        d[mid]
    } else {
        0.5 * (d[mid - 1] + d[mid])
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Confirmed,
    Partial,
    Absent,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "confirmed",
            Verdict::Partial => "partial",
            Verdict::Absent => "absent",
        })
    }
}

/// Thresholds for [`verify_schedule`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    /// Absolute floor for a peak to count as prominent.
    pub min_height: f64,
    /// Peaks must also reach this fraction of the window maximum.
    pub relative_height: f64,
    /// Half-width of the analysis window in predicted periods.
    pub window_halfwidth_periods: f64,
    /// Allowed relative deviation of the measured period.
    pub tolerance: f64,
    /// Fraction of spacings that must agree with the median.
    pub regularity: f64,
    /// Minimum peak separation as a fraction of the predicted period.
    pub cluster_fraction: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            min_height: 0.25,
            relative_height: 0.75,
            window_halfwidth_periods: 3.0,
            tolerance: 0.10,
            regularity: 0.75,
            cluster_fraction: 0.25,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleVerdict {
    pub q: i64,
    pub predicted_t_frac: f64,
    #[serde(rename = "predicted_T_frac")]
    pub predicted_t_frac_period: f64,
    pub measured_period: Option<f64>,
    /// `|measured - T_frac| / T_frac`.
    pub relative_error: Option<f64>,
    pub verdict: Verdict,
    pub peak_count: usize,
    pub window_max: f64,
}

/// One row of a verification report: a verdict or the reason there is none.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum VerifyOutcome {
    Verdict(ScheduleVerdict),
    Error { q: i64, error: String },
}

impl VerifyOutcome {
    pub fn q(&self) -> i64 {
        match self {
            VerifyOutcome::Verdict(v) => v.q,
            VerifyOutcome::Error { q, .. } => *q,
        }
    }

    pub fn verdict(&self) -> Option<Verdict> {
        match self {
            VerifyOutcome::Verdict(v) => Some(v.verdict),
            VerifyOutcome::Error { .. } => None,
        }
    }
}

/// Compares the trace around each predicted `t_frac` with the predicted
/// period `T_frac`.
///
/// Peaks in `t_frac ± w·T_frac` above `max(min_height, relative_height ·
/// window max)` are collected. Their median spacing is the measured
/// period; it only counts if most spacings agree with it. A regular train
/// at `T_frac` is confirmed, one at `T_frac/2` is partial, anything else is
/// absent. A window the series does not cover yields an error entry.
pub fn verify_schedule(
    series: &TimeSeries,
    schedules: &[SuperrevivalSchedule],
    config: &VerifyConfig,
) -> Vec<VerifyOutcome> {
    schedules
        .iter()
        .map(|s| match verify_one(series, s, config) {
            Ok(v) => VerifyOutcome::Verdict(v),
            Err(e) => VerifyOutcome::Error {
                q: s.q,
                error: e.to_string(),
            },
        })
        .collect()
}

fn verify_one(
    series: &TimeSeries,
    schedule: &SuperrevivalSchedule,
    config: &VerifyConfig,
) -> Result<ScheduleVerdict, AnalysisError> {
    let to_unit = |t: f64| match series.unit {
        TimeUnit::Atomic => t,
        TimeUnit::Seconds => au_to_seconds(t),
    };
    let t_frac = to_unit(schedule.t_frac);
    let period = to_unit(schedule.t_frac_period);
    let half = config.window_halfwidth_periods * period;
    let (lo, hi) = (t_frac - half, t_frac + half);
    let (first, last) = match (series.t.first(), series.t.last()) {
        (Some(a), Some(b)) => (*a, *b),
        _ => return Err(AnalysisError::EmptySeries),
    };
    if first > lo || last < hi {
        return Err(AnalysisError::InsufficientCoverage {
            q: schedule.q,
            need_lo: lo,
            need_hi: hi,
            have_lo: first,
            have_hi: last,
        });
    }
    let window = series.window(lo, hi);
    let window_max = window.max().unwrap_or(0.0);
    let threshold = config.min_height.max(config.relative_height * window_max);
    let peaks = detect_peaks(&window, threshold, config.cluster_fraction * period)?;
    let measured = estimate_period(&peaks);

    let regular = measured.is_some_and(|p| {
        let d = peaks.spacings();
        let agree = d
            .iter()
            .filter(|x| (*x - p).abs() <= config.tolerance * p)
            .count();
        agree as f64 >= config.regularity * d.len() as f64
    });
    let relative_error = measured.map(|p| (p - period).abs() / period);
    let verdict = match (measured, relative_error) {
        (Some(_), Some(e)) if regular && e <= config.tolerance => Verdict::Confirmed,
        (Some(p), _) if regular && (p - 0.5 * period).abs() <= config.tolerance * 0.5 * period => {
            Verdict::Partial
        }
        _ => Verdict::Absent,
    };
    Ok(ScheduleVerdict {
        q: schedule.q,
        predicted_t_frac: t_frac,
        predicted_t_frac_period: period,
        measured_period: measured,
        relative_error,
        verdict,
        peak_count: peaks.len(),
        window_max,
    })
}

/// Plain-text table of a verification report.
pub fn format_table(outcomes: &[VerifyOutcome]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4}  {:>12}  {:>12}  {:>12}  {:>9}  {:>5}  verdict",
        "q", "t_frac", "T_frac", "measured", "rel_err", "peaks"
    );
    for o in outcomes {
        match o {
            VerifyOutcome::Verdict(v) => {
                let measured = v
                    .measured_period
                    .map_or("-".to_string(), |p| format!("{p:.5e}"));
                let err = v
                    .relative_error
                    .map_or("-".to_string(), |e| format!("{:.2}%", 100.0 * e));
                let _ = writeln!(
                    out,
                    "{:>4}  {:>12.5e}  {:>12.5e}  {:>12}  {:>9}  {:>5}  {}",
                    v.q, v.predicted_t_frac, v.predicted_t_frac_period, measured, err, v.peak_count,
                    v.verdict
                );
            }
            VerifyOutcome::Error { q, error } => {
                let _ = writeln!(out, "{q:>4}  error: {error}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series(t: Vec<f64>, f: impl Fn(f64) -> f64) -> TimeSeries {
        let values = t.iter().map(|&x| f(x)).collect();
        TimeSeries {
            unit: TimeUnit::Atomic,
            t,
            values,
        }
    }

    fn grid(n: usize, dt: f64) -> Vec<f64> {
        (0..n).map(|i| i as f64 * dt).collect()
    }

    #[test]
    fn constant_series_has_no_peaks() {
        let s = series(grid(100, 1.0), |_| 0.7);
        assert!(detect_peaks(&s, 0.1, 2.0).unwrap().is_empty());
    }

    #[test]
    fn cos_squared_period() {
        let period = 3.7;
        let dt = 0.001;
        let s = series(grid(20_000, dt), |t| (std::f64::consts::PI * t / period).cos().powi(2));
        let p = detect_peaks(&s, 0.5, 0.5 * period).unwrap();
        assert_eq!(p.len(), 5);
        let est = estimate_period(&p).unwrap();
        assert!((est - period).abs() <= dt);
    }

    #[test]
    fn median_of_spacings() {
        let p = PeakSet {
            times: vec![1.0, 2.0, 3.0, 4.0],
            heights: vec![1.0; 4],
            threshold: 0.0,
        };
        assert_eq!(estimate_period(&p), Some(1.0));
        let p = PeakSet {
            times: vec![1.0, 2.0],
            heights: vec![1.0; 2],
            threshold: 0.0,
        };
        assert_eq!(estimate_period(&p), None);
    }

    #[test]
    fn suppression_keeps_the_higher_peak() {
        let t = grid(9, 1.0);
        let v = vec![0.0, 0.6, 0.0, 0.9, 0.0, 0.0, 0.0, 0.8, 0.0];
        let s = TimeSeries {
            unit: TimeUnit::Atomic,
            t,
            values: v,
        };
        let p = detect_peaks(&s, 0.1, 3.0).unwrap();
        assert_eq!(p.times, vec![3.0, 7.0]);
        assert_eq!(p.heights, vec![0.9, 0.8]);
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = series(vec![], |_| 0.0);
        assert_eq!(detect_peaks(&s, 0.1, 1.0), Err(AnalysisError::EmptySeries));
        let s = series(grid(10, 1.0), |_| 0.0);
        assert!(matches!(
            detect_peaks(&s, 0.1, 0.5),
            Err(AnalysisError::SeparationBelowSpacing { .. })
        ));
    }

    proptest! {
        #[test]
        fn rescaling_time_keeps_peak_indices(
            vals in prop::collection::vec(0.0f64..1.0, 5..200),
            scale in 0.01f64..100.0,
            sep in 1.5f64..6.0,
            h in 0.0f64..0.8,
        ) {
            let a = series(grid(vals.len(), 1.0), |_| 0.0);
            let a = TimeSeries { values: vals.clone(), ..a };
            let b = TimeSeries {
                unit: TimeUnit::Atomic,
                t: a.t.iter().map(|t| t * scale).collect(),
                values: vals,
            };
            let ia = peak_indices(&a, h, sep).unwrap();
            let ib = peak_indices(&b, h, sep * scale).unwrap();
            prop_assert_eq!(ia, ib);
        }

        #[test]
        fn periodic_synthetic_recovered(period in 5.0f64..50.0, phase in 0.0f64..1.0) {
            let dt = 0.05;
            let n = (12.0 * period / dt) as usize;
            let s = series(grid(n, dt), |t| {
                (std::f64::consts::PI * (t / period + phase)).cos().powi(8)
            });
            let p = detect_peaks(&s, 0.5, 0.5 * period).unwrap();
            let est = estimate_period(&p).unwrap();
            prop_assert!((est - period).abs() <= dt * 1.000_001);
        }
    }
}
