//! Long-term dynamics of Rydberg wave packets in hydrogen and alkali atoms.
//!
//! The crate is organised around five pieces:
//!
//! * [`scales`]: level energies, the classical, revival and superrevival
//!   time scales, unit conversion.
//! * [`schedule`]: exact rational arithmetic giving when superrevival
//!   structure forms, how it moves, and the weights `b_s` of its
//!   subsidiary packets.
//! * [`basis`]: hydrogen and SQDT radial functions, circular-state slices,
//!   packet evolution and the autocorrelation `|A(t)|²`.
//! * [`analysis`]: peak detection and automated comparison of a trace
//!   against a schedule.
//! * [`scenario`]: JSON scenario files driving CSV/JSON outputs, used by the
//!   `rydberg` binary.
//!
//! All computations are in atomic units; seconds appear only at I/O.

// `!(x > 0.0)` is used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod basis;
pub mod rational;
pub mod scales;
pub mod scenario;
pub mod schedule;
pub mod special;

pub use rational::Rational;
pub use scales::{time_scales, AtomSpec, TimeScales};
pub use schedule::{decompose_nbar, NbarDecomposition, SuperrevivalSchedule};
