use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::scales::au_to_seconds;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeUnit {
    Atomic,
    Seconds,
}

/// Sampled `|A(t)|²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub unit: TimeUnit,
    pub t: Vec<f64>,
    pub values: Vec<f64>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Copy with the time axis in seconds.
    pub fn to_seconds(&self) -> TimeSeries {
        match self.unit {
            TimeUnit::Seconds => self.clone(),
            TimeUnit::Atomic => TimeSeries {
                unit: TimeUnit::Seconds,
                t: self.t.iter().map(|&t| au_to_seconds(t)).collect(),
                values: self.values.clone(),
            },
        }
    }

    /// Samples with `lo <= t <= hi`.
    pub fn window(&self, lo: f64, hi: f64) -> TimeSeries {
        let (t, values) = self
            .t
            .iter()
            .zip(&self.values)
            .filter(|(t, _)| **t >= lo && **t <= hi)
            .map(|(t, v)| (*t, *v))
            .unzip();
        TimeSeries {
            unit: self.unit,
            t,
            values,
        }
    }

    pub fn max(&self) -> Option<f64> {
        self.values.iter().copied().reduce(f64::max)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let header = match self.unit {
            TimeUnit::Atomic => "t_au",
            TimeUnit::Seconds => "t_s",
        };
        writeln!(out, "{header},abs_a_squared")?;
        for (t, v) in self.t.iter().zip(&self.values) {
            writeln!(out, "{t:e},{v:e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coordinate {
    /// Azimuthal angle in radians.
    Phi,
    /// Radius in bohr.
    R,
}

/// Probability density sampled on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpatialProfile {
    pub coordinate: Coordinate,
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
}

impl SpatialProfile {
    /// Grid point of the largest density.
    pub fn argmax(&self) -> f64 {
        let mut best = 0;
        for (i, d) in self.density.iter().enumerate() {
            if *d > self.density[best] {
                best = i;
            }
        }
        self.grid[best]
    }

    /// `‖self - other‖₂ / ‖self‖₂` over the shared grid.
    pub fn relative_l2(&self, other: &SpatialProfile) -> f64 {
        let (mut diff, mut base) = (0.0, 0.0);
        for (a, b) in self.density.iter().zip(&other.density) {
            diff += (a - b) * (a - b);
            base += a * a;
        }
        (diff / base).sqrt()
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let header = match self.coordinate {
            Coordinate::Phi => "phi",
            Coordinate::R => "r_au",
        };
        writeln!(out, "{header},density")?;
        for (x, d) in self.grid.iter().zip(&self.density) {
            writeln!(out, "{x:e},{d:e}")?;
        }
        Ok(())
    }
}
