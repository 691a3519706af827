//! Small exact rational type for the superrevival schedule.
//!
//! Values are always stored reduced with a positive denominator. Overflow is
//! not a concern at the sizes used here (numerators stay well inside `i64`
//! for `q <= 60` and cubes of `k` up to a few hundred), but arithmetic is
//! checked and panics rather than wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RationalError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error(
        "{value} has no rational approximation with denominator <= {max_denominator} \
         within {tolerance:e}; raise max_denominator"
    )]
    NotRepresentable {
        value: f64,
        max_denominator: i64,
        tolerance: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRational")]
pub struct Rational {
    num: i64,
    den: i64,
}

#[derive(Deserialize)]
struct RawRational {
    num: i64,
    den: i64,
}

impl TryFrom<RawRational> for Rational {
    type Error = RationalError;

    fn try_from(raw: RawRational) -> Result<Self, Self::Error> {
        Rational::new(raw.num, raw.den)
    }
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self, RationalError> {
        if den == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: i64, den: i64) -> Self {
        let g = num.gcd(&den);
        let sign = if den < 0 { -1 } else { 1 };
        Rational {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Floor as an integer.
    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.num, &self.den)
    }

    /// Representative of `self mod 1` in `[0, 1)`.
    pub fn mod_one(&self) -> Self {
        Rational {
            num: self.num.mod_floor(&self.den),
            den: self.den,
        }
    }

    /// Best rational approximation of `x` with denominator at most
    /// `max_denominator`, accepted only if it lies within `tolerance` of `x`.
    pub fn approximate(
        x: f64,
        max_denominator: i64,
        tolerance: f64,
    ) -> Result<Self, RationalError> {
        let not_repr = || RationalError::NotRepresentable {
            value: x,
            max_denominator,
            tolerance,
        };
        if !x.is_finite() || max_denominator < 1 {
            return Err(not_repr());
        }
        let best = best_approximation(x, max_denominator);
        if (best.to_f64() - x).abs() <= tolerance {
            Ok(best)
        } else {
            Err(not_repr())
        }
    }
}

/// Continued-fraction convergents plus the last admissible semiconvergent.
fn best_approximation(x: f64, max_den: i64) -> Rational {
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut frac = x;
    loop {
        let a = frac.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let q2 = a * q1 + q0;
        if q2 > max_den {
            // largest semiconvergent still inside the bound
            let t = (max_den - q0) / q1;
            let semi = Rational::reduced(t * p1 + p0, t * q1 + q0);
            let conv = Rational::reduced(p1, q1);
            return if (semi.to_f64() - x).abs() < (conv.to_f64() - x).abs() {
                semi
            } else {
                conv
            };
        }
        let p2 = a * p1 + p0;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let rem = frac - a as f64;
        if rem.abs() < 1e-15 {
            break;
        }
        frac = 1.0 / rem;
    }
    Rational::reduced(p1, q1)
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl std::str::FromStr for Rational {
    type Err = RationalError;

    /// Accepts `"a"`, `"a/b"` (with optional sign and whitespace).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| RationalError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational::from_int(parse(s)?)),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        let l = self.den.lcm(&rhs.den);
        let a = self.num.checked_mul(l / self.den).expect("rational overflow");
        let b = rhs.num.checked_mul(l / rhs.den).expect("rational overflow");
        Rational::reduced(a.checked_add(b).expect("rational overflow"), l)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (g1, g2) = (g1.max(1), g2.max(1));
        let num = (self.num / g1)
            .checked_mul(rhs.num / g2)
            .expect("rational overflow");
        let den = (self.den / g2)
            .checked_mul(rhs.den / g1)
            .expect("rational overflow");
        Rational::reduced(num, den)
    }
}

impl Mul<i64> for Rational {
    type Output = Rational;
    fn mul(self, rhs: i64) -> Rational {
        self * Rational::from_int(rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.num as i128) * (other.den as i128)).cmp(&((other.num as i128) * (self.den as i128)))
    }
}
