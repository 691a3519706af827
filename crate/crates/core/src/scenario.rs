//! JSON scenario files and the runners behind the `rydberg` binary.
//!
//! A scenario fixes an atom and packet, an optional autocorrelation trace,
//! optional packet snapshots, and an optional verification block. Every
//! time is written as `a·t_sr + b·t_rev + c·T_cl` with rational
//! coefficients, e.g.
//!
//! ```json
//! {"t_sr": "1/6", "t_rev": "-3/8"}
//! ```
//!
//! so published times can be copied without rounding. The whole file is
//! validated before anything is computed.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{format_table, verify_schedule, Verdict, VerifyConfig, VerifyOutcome};
use crate::basis::{
    autocorrelation, gaussian_weights, BasisKind, PacketModel, SpatialProfile, TimeGrid,
    TimeSeries, TimeUnit, WeightProfile, DEFAULT_GRID_POINTS, DEFAULT_WINDOW_SIGMAS,
    RADIAL_EXTENT,
};
use crate::rational::Rational;
use crate::scales::{au_to_seconds, time_scales, AtomSpec, TimeScales, TimeScalesSi};
use crate::schedule::{
    decompose_nbar, NbarDecomposition, SuperrevivalSchedule, DEFAULT_MAX_DENOMINATOR,
};

/// Upper bound on trace length, to catch a mistyped step early.
pub const MAX_TRACE_POINTS: usize = 50_000_000;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("cannot read scenario {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
}

fn invalid(msg: impl std::fmt::Display) -> ScenarioError {
    ScenarioError::Invalid(msg.to_string())
}

/// `t_sr · a + t_rev · b + T_cl · c` with rational coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeExpr {
    #[serde(default, with = "rational_str")]
    pub t_sr: Rational,
    #[serde(default, with = "rational_str")]
    pub t_rev: Rational,
    #[serde(default, with = "rational_str")]
    pub t_cl: Rational,
}

impl TimeExpr {
    pub fn new(t_sr: Rational, t_rev: Rational, t_cl: Rational) -> Self {
        TimeExpr { t_sr, t_rev, t_cl }
    }

    /// Atomic units.
    pub fn eval(&self, scales: &TimeScales) -> f64 {
        scales.combine(self.t_sr.to_f64(), self.t_rev.to_f64(), self.t_cl.to_f64())
    }
}

/// Rationals as `"a/b"` strings (integers also accepted as numbers).
mod rational_str {
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::Rational;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        Int(i64),
    }

    pub fn serialize<S: Serializer>(r: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        match Raw::deserialize(de)? {
            Raw::Text(s) => s.parse().map_err(D::Error::custom),
            Raw::Int(n) => Ok(Rational::from_int(n)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceSpec {
    pub start: TimeExpr,
    pub stop: TimeExpr,
    pub step: TimeExpr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evolution {
    #[default]
    Exact,
    ThirdOrder,
    Classical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Snapshot {
    pub label: String,
    #[serde(flatten)]
    pub time: TimeExpr,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketSpec {
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    /// Radial grid extent in units of `n̄*²`.
    #[serde(default = "default_radial_extent")]
    pub radial_extent: f64,
    #[serde(default)]
    pub evolution: Evolution,
    pub times: Vec<Snapshot>,
}

fn default_grid_points() -> usize {
    DEFAULT_GRID_POINTS
}

fn default_radial_extent() -> f64 {
    RADIAL_EXTENT
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySpec {
    #[serde(default)]
    pub config: VerifyConfig,
    /// Verdicts the run must reproduce for a zero exit status.
    #[serde(default)]
    pub expected: BTreeMap<i64, Verdict>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub dir: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default = "default_time_unit")]
    pub time_unit: TimeUnit,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            dir: None,
            format: None,
            time_unit: default_time_unit(),
        }
    }
}

fn default_time_unit() -> TimeUnit {
    TimeUnit::Seconds
}

fn default_basis() -> BasisKind {
    BasisKind::Radial
}

fn default_window() -> f64 {
    DEFAULT_WINDOW_SIGMAS
}

fn default_max_den() -> i64 {
    DEFAULT_MAX_DENOMINATOR
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub atom: AtomSpec,
    #[serde(default = "default_basis")]
    pub basis: BasisKind,
    #[serde(default = "default_window")]
    pub window_sigmas: f64,
    #[serde(default = "default_max_den")]
    pub max_denominator: i64,
    #[serde(default)]
    pub q_list: Vec<i64>,
    #[serde(default)]
    pub trace: Option<TraceSpec>,
    #[serde(default)]
    pub packet: Option<PacketSpec>,
    #[serde(default)]
    pub verify: Option<VerifySpec>,
    #[serde(default)]
    pub output: OutputSpec,
}

/// A scenario that passed validation, with its derived quantities.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub scenario: Scenario,
    pub scales: TimeScales,
    pub decomposition: NbarDecomposition,
    pub weights: WeightProfile,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(text).map_err(invalid)
    }

    pub fn from_path(path: &Path) -> Result<Self, ScenarioError> {
        let text = fs::read_to_string(path).map_err(|source| ScenarioError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Checks every precondition the runners rely on.
    pub fn prepare(&self) -> Result<Prepared, ScenarioError> {
        if self.name.is_empty() || !is_file_safe(&self.name) {
            return Err(invalid(format!(
                "name {:?} must be nonempty and use only [A-Za-z0-9_.-]",
                self.name
            )));
        }
        let scales = time_scales(&self.atom).map_err(invalid)?;
        let weights = gaussian_weights(&self.atom, self.window_sigmas).map_err(invalid)?;
        if self.basis == BasisKind::Circular && !self.atom.is_hydrogenic() {
            return Err(invalid(format!(
                "circular packets are hydrogenic; delta = {} must be 0",
                self.atom.delta
            )));
        }
        if self.max_denominator < 1 {
            return Err(invalid("max_denominator must be positive"));
        }
        let decomposition =
            decompose_nbar(self.atom.n_bar_eff(), self.max_denominator).map_err(invalid)?;

        if let Some(trace) = &self.trace {
            let grid = trace_grid(trace, &scales)?;
            if grid.len() > MAX_TRACE_POINTS {
                return Err(invalid(format!(
                    "trace has {} points (limit {MAX_TRACE_POINTS})",
                    grid.len()
                )));
            }
        }
        if let Some(packet) = &self.packet {
            if packet.grid_points < 2 {
                return Err(invalid("packet.grid_points must be at least 2"));
            }
            if !(packet.radial_extent > 0.0) {
                return Err(invalid("packet.radial_extent must be positive"));
            }
            let mut seen = BTreeSet::new();
            for snap in &packet.times {
                if snap.label.is_empty() || !is_file_safe(&snap.label) {
                    return Err(invalid(format!(
                        "snapshot label {:?} must be nonempty and use only [A-Za-z0-9_.-]",
                        snap.label
                    )));
                }
                if !seen.insert(&snap.label) {
                    return Err(invalid(format!("duplicate snapshot label {:?}", snap.label)));
                }
                if snap.time.eval(&scales) < 0.0 {
                    return Err(invalid(format!("snapshot {:?} has negative time", snap.label)));
                }
            }
        }
        if let Some(verify) = &self.verify {
            if self.trace.is_none() {
                return Err(invalid("verify needs a trace block"));
            }
            for q in verify.expected.keys() {
                if !self.q_list.contains(q) {
                    return Err(invalid(format!("expected verdict for q = {q} not in q_list")));
                }
            }
        }
        Ok(Prepared {
            scenario: self.clone(),
            scales,
            decomposition,
            weights,
        })
    }
}

fn is_file_safe(s: &str) -> bool {
    s.chars()
        .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

fn trace_grid(trace: &TraceSpec, scales: &TimeScales) -> Result<TimeGrid, ScenarioError> {
    let (start, stop, step) = (
        trace.start.eval(scales),
        trace.stop.eval(scales),
        trace.step.eval(scales),
    );
    if start < 0.0 {
        return Err(invalid("trace.start must not be negative"));
    }
    TimeGrid::new(start, stop, step)
        .map_err(|_| invalid("trace needs step > 0 and stop >= start"))
}

/// Scales in both unit systems.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalesReport {
    pub atom: AtomSpec,
    pub n_bar_eff: f64,
    pub l_eff: f64,
    pub atomic_units: TimeScales,
    pub seconds: TimeScalesSi,
}

/// A schedule with SI mirrors, or the reason `q` was rejected.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ScheduleEntry {
    Ok {
        #[serde(flatten)]
        schedule: SuperrevivalSchedule,
        t_frac_s: f64,
        t_frac_period_s: f64,
    },
    Error {
        q: i64,
        error: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileRecord {
    pub label: String,
    pub time: TimeExpr,
    pub t_au: f64,
    pub t_s: f64,
    pub profile: SpatialProfile,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub outcomes: Vec<VerifyOutcome>,
    pub expected: BTreeMap<i64, Verdict>,
    pub all_expected_met: bool,
}

impl Prepared {
    pub fn scales_report(&self) -> ScalesReport {
        ScalesReport {
            atom: self.scenario.atom,
            n_bar_eff: self.scenario.atom.n_bar_eff(),
            l_eff: self.scenario.atom.l_eff(),
            atomic_units: self.scales,
            seconds: self.scales.si(),
        }
    }

    pub fn schedules(&self) -> Vec<ScheduleEntry> {
        self.scenario
            .q_list
            .iter()
            .map(
                |&q| match SuperrevivalSchedule::compute(q, &self.scales, &self.decomposition) {
                    Ok(s) => ScheduleEntry::Ok {
                        t_frac_s: au_to_seconds(s.t_frac),
                        t_frac_period_s: au_to_seconds(s.t_frac_period),
                        schedule: s,
                    },
                    Err(e) => ScheduleEntry::Error {
                        q,
                        error: e.to_string(),
                    },
                },
            )
            .collect()
    }

    /// The trace in the scenario's output time unit.
    pub fn trace(&self) -> Result<TimeSeries, ScenarioError> {
        let spec = self
            .scenario
            .trace
            .as_ref()
            .ok_or_else(|| invalid("scenario has no trace block"))?;
        let grid = trace_grid(spec, &self.scales)?.points();
        let series = autocorrelation(&self.weights, &self.scenario.atom, &grid).map_err(invalid)?;
        Ok(match self.scenario.output.time_unit {
            TimeUnit::Atomic => series,
            TimeUnit::Seconds => series.to_seconds(),
        })
    }

    pub fn profiles(&self) -> Result<Vec<ProfileRecord>, ScenarioError> {
        let spec = self
            .scenario
            .packet
            .as_ref()
            .ok_or_else(|| invalid("scenario has no packet block"))?;
        let model = PacketModel::with_grid(
            &self.scenario.atom,
            &self.weights,
            self.scenario.basis,
            spec.grid_points,
            spec.radial_extent * self.scenario.atom.n_bar_eff().powi(2),
        )
        .map_err(invalid)?;
        Ok(spec
            .times
            .iter()
            .map(|snap| {
                let t = snap.time.eval(&self.scales);
                let field = match spec.evolution {
                    Evolution::Exact => model.evolve_exact(t),
                    Evolution::ThirdOrder => {
                        if !model.third_order_valid(t) {
                            eprintln!(
                                "warning: snapshot {:?} lies beyond t_sr/3, where the \
                                 third-order expansion is unreliable",
                                snap.label
                            );
                        }
                        model.evolve_third_order(t)
                    }
                    Evolution::Classical => model.psi_cl(t),
                };
                ProfileRecord {
                    label: snap.label.clone(),
                    time: snap.time,
                    t_au: t,
                    t_s: au_to_seconds(t),
                    profile: field.density(),
                }
            })
            .collect())
    }

    pub fn verify(&self) -> Result<VerifyReport, ScenarioError> {
        let spec = self.scenario.verify.clone().unwrap_or_default();
        let series = self.trace()?;
        let schedules: Vec<SuperrevivalSchedule> = self
            .schedules()
            .into_iter()
            .filter_map(|e| match e {
                ScheduleEntry::Ok { schedule, .. } => Some(schedule),
                ScheduleEntry::Error { .. } => None,
            })
            .collect();
        let mut outcomes = verify_schedule(&series, &schedules, &spec.config);
        // keep rejected q values visible in the report
        for entry in self.schedules() {
            if let ScheduleEntry::Error { q, error } = entry {
                outcomes.push(VerifyOutcome::Error { q, error });
            }
        }
        outcomes.sort_by_key(|o| o.q());
        let all_expected_met = spec.expected.iter().all(|(q, want)| {
            outcomes
                .iter()
                .any(|o| o.q() == *q && o.verdict() == Some(*want))
        });
        Ok(VerifyReport {
            outcomes,
            expected: spec.expected,
            all_expected_met,
        })
    }
}

/// Where and how the runners write.
#[derive(Debug, Clone, Default)]
pub struct OutputOptions {
    /// Overrides the scenario's `output.dir`.
    pub dir: Option<PathBuf>,
    /// Overrides the scenario's `output.format`.
    pub format: Option<Format>,
    pub quiet: bool,
}

/// Files written by a runner and whether its checks passed.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutcome {
    pub files: Vec<PathBuf>,
    pub success: bool,
}

struct Sink {
    dir: PathBuf,
    format: Format,
    quiet: bool,
}

impl Sink {
    fn new(prepared: &Prepared, opts: &OutputOptions, default_format: Format) -> Self {
        let out = &prepared.scenario.output;
        Sink {
            dir: opts
                .dir
                .clone()
                .or_else(|| out.dir.clone())
                .unwrap_or_else(|| PathBuf::from("out")),
            format: opts.format.or(out.format).unwrap_or(default_format),
            quiet: opts.quiet,
        }
    }

    fn ext(&self) -> &'static str {
        match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    /// Writes through a temporary file in the target directory, then renames.
    fn write(
        &self,
        file_name: &str,
        body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
    ) -> Result<PathBuf, ScenarioError> {
        let path = self.dir.join(file_name);
        let fail = |source| ScenarioError::Write {
            path: path.clone(),
            source,
        };
        fs::create_dir_all(&self.dir).map_err(fail)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(fail)?;
        {
            let mut w = BufWriter::new(tmp.as_file_mut());
            body(&mut w).map_err(fail)?;
            w.flush().map_err(fail)?;
        }
        tmp.persist(&path).map_err(|e| fail(e.error))?;
        if !self.quiet {
            println!("wrote {}", path.display());
        }
        Ok(path)
    }

    fn write_json<T: Serialize>(&self, file_name: &str, value: &T) -> Result<PathBuf, ScenarioError> {
        self.write(file_name, |w| {
            serde_json::to_writer_pretty(&mut *w, value)?;
            writeln!(w)
        })
    }
}

/// Time scales as JSON (or a three-row CSV).
pub fn cmd_scales(scenario: &Scenario, opts: &OutputOptions) -> Result<CommandOutcome, ScenarioError> {
    let p = scenario.prepare()?;
    let sink = Sink::new(&p, opts, Format::Json);
    let report = p.scales_report();
    let name = format!("{}_scales.{}", scenario.name, sink.ext());
    let path = match sink.format {
        Format::Json => sink.write_json(&name, &report)?,
        Format::Csv => sink.write(&name, |w| {
            writeln!(w, "quantity,atomic_units,seconds")?;
            let (au, si) = (report.atomic_units, report.seconds);
            writeln!(w, "t_cl,{:e},{:e}", au.t_cl, si.t_cl)?;
            writeln!(w, "t_rev,{:e},{:e}", au.t_rev, si.t_rev)?;
            writeln!(w, "t_sr,{:e},{:e}", au.t_sr, si.t_sr)
        })?,
    };
    Ok(CommandOutcome {
        files: vec![path],
        success: true,
    })
}

/// One schedule record per `q`; a bad `q` yields an error record, not a
/// failed run.
pub fn cmd_schedule(
    scenario: &Scenario,
    opts: &OutputOptions,
) -> Result<CommandOutcome, ScenarioError> {
    let p = scenario.prepare()?;
    let sink = Sink::new(&p, opts, Format::Json);
    let entries = p.schedules();
    if !sink.quiet {
        for e in &entries {
            if let ScheduleEntry::Error { q, error } = e {
                eprintln!("q = {q}: {error}");
            }
        }
    }
    let path = sink.write_json(&format!("{}_schedule.json", scenario.name), &entries)?;
    Ok(CommandOutcome {
        files: vec![path],
        success: true,
    })
}

/// `|A(t)|²` over the scenario's trace.
pub fn cmd_autocorr(
    scenario: &Scenario,
    opts: &OutputOptions,
) -> Result<CommandOutcome, ScenarioError> {
    let p = scenario.prepare()?;
    let sink = Sink::new(&p, opts, Format::Csv);
    let series = p.trace()?;
    let name = format!("{}_autocorr.{}", scenario.name, sink.ext());
    let path = match sink.format {
        Format::Csv => sink.write(&name, |w| series.write_csv(w))?,
        Format::Json => sink.write_json(&name, &series)?,
    };
    Ok(CommandOutcome {
        files: vec![path],
        success: true,
    })
}

/// One density profile per snapshot time.
pub fn cmd_packet(
    scenario: &Scenario,
    opts: &OutputOptions,
) -> Result<CommandOutcome, ScenarioError> {
    let p = scenario.prepare()?;
    let sink = Sink::new(&p, opts, Format::Csv);
    let records = p.profiles()?;
    let files = match sink.format {
        Format::Csv => records
            .iter()
            .map(|r| {
                let name = format!("{}_packet_{}.csv", scenario.name, r.label);
                sink.write(&name, |w| r.profile.write_csv(w))
            })
            .collect::<Result<Vec<_>, _>>()?,
        Format::Json => vec![sink.write_json(&format!("{}_packet.json", scenario.name), &records)?],
    };
    Ok(CommandOutcome {
        files,
        success: true,
    })
}

/// Trace plus schedule comparison; succeeds iff every expected verdict is
/// reproduced.
pub fn cmd_verify(
    scenario: &Scenario,
    opts: &OutputOptions,
) -> Result<CommandOutcome, ScenarioError> {
    let p = scenario.prepare()?;
    let sink = Sink::new(&p, opts, Format::Json);
    let report = p.verify()?;
    if !sink.quiet {
        print!("{}", format_table(&report.outcomes));
        for (q, want) in &report.expected {
            let got = report
                .outcomes
                .iter()
                .find(|o| o.q() == *q)
                .and_then(VerifyOutcome::verdict);
            if got != Some(*want) {
                println!(
                    "q = {q}: expected {want}, got {}",
                    got.map_or("error".to_string(), |v| v.to_string())
                );
            }
        }
    }
    let path = sink.write_json(&format!("{}_verify.json", scenario.name), &report)?;
    Ok(CommandOutcome {
        files: vec![path],
        success: report.all_expected_met,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const H319: &str = r#"{
        "name": "h319",
        "atom": {"n_bar": 319, "sigma": 2.5, "l": 0},
        "basis": "circular",
        "q_list": [6, 7, 9]
    }"#;

    #[test]
    fn time_expressions_parse_exactly() {
        let t: TimeExpr = serde_json::from_str(r#"{"t_sr": "1/6", "t_rev": "-3/8"}"#).unwrap();
        assert_eq!(t.t_sr, Rational::new(1, 6).unwrap());
        assert_eq!(t.t_rev, Rational::new(-3, 8).unwrap());
        assert_eq!(t.t_cl, Rational::ZERO);
        let t: TimeExpr = serde_json::from_str(r#"{"t_rev": 1}"#).unwrap();
        assert_eq!(t.t_rev, Rational::ONE);
        assert!(serde_json::from_str::<TimeExpr>(r#"{"t_rev": "1/0"}"#).is_err());
        assert!(serde_json::from_str::<TimeExpr>(r#"{"t_x": "1"}"#).is_err());
    }

    #[test]
    fn schedule_entries_report_bad_q_individually() {
        let p = Scenario::from_json(H319).unwrap().prepare().unwrap();
        let entries = p.schedules();
        assert!(matches!(&entries[0], ScheduleEntry::Ok { schedule, .. } if schedule.alpha == 79));
        match &entries[1] {
            ScheduleEntry::Error { q, error } => {
                assert_eq!(*q, 7);
                assert!(error.contains("q must be a multiple of 3"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let json = serde_json::to_value(&entries).unwrap();
        assert_eq!(json[0]["m_over_n"]["num"], 3);
        assert_eq!(json[0]["u_over_v"]["den"], 6);
        assert_eq!(json[0]["J"], 3);
        assert_eq!(json[1]["q"], 7);
    }

    #[test]
    fn validation_names_the_problem() {
        let bad = H319.replace(r#""l": 0"#, r#""l": 0, "delta": 400.0"#);
        let err = Scenario::from_json(&bad).unwrap().prepare().unwrap_err();
        assert!(err.to_string().contains("delta"), "{err}");

        let bad = H319.replace(r#""basis": "circular""#, r#""basis": "circular", "window_sigmas": 2"#);
        assert!(Scenario::from_json(&bad).unwrap().prepare().is_err());

        let bad = H319.replace(r#""name": "h319""#, r#""name": "../x""#);
        assert!(Scenario::from_json(&bad).unwrap().prepare().is_err());

        assert!(Scenario::from_json(r#"{"name": "x"}"#).is_err());
    }

    #[test]
    fn runners_write_deterministic_files() {
        let dir = tempfile::tempdir().unwrap();
        let text = H319.replace(
            r#""q_list": [6, 7, 9]"#,
            r#""q_list": [6],
               "trace": {"start": {}, "stop": {"t_cl": 3}, "step": {"t_cl": "1/16"}},
               "packet": {"grid_points": 64, "times": [{"label": "a"}, {"label": "b", "t_rev": 1}]}"#,
        );
        let s = Scenario::from_json(&text).unwrap();
        let opts = OutputOptions {
            dir: Some(dir.path().to_path_buf()),
            format: None,
            quiet: true,
        };
        let first = cmd_autocorr(&s, &opts).unwrap();
        let bytes = fs::read(&first.files[0]).unwrap();
        let again = cmd_autocorr(&s, &opts).unwrap();
        assert_eq!(bytes, fs::read(&again.files[0]).unwrap());
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.starts_with("t_s,abs_a_squared\n0e0,"));
        assert_eq!(text.lines().count(), 1 + 49);

        let packets = cmd_packet(&s, &opts).unwrap();
        assert_eq!(packets.files.len(), 2);
        assert!(packets.files[1].ends_with("h319_packet_b.csv"));

        let scales = cmd_scales(&s, &opts).unwrap();
        let v: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&scales.files[0]).unwrap()).unwrap();
        let t_rev = v["seconds"]["t_rev"].as_f64().unwrap();
        assert!((t_rev / 1.05e-6 - 1.0).abs() < 0.02);
    }
}
