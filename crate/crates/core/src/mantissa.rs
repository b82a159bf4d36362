//! Bases, fractional logarithms, mantissae and the Benford measure.
//!
//! A positive `x` is represented on the circle `[0, 1)` by `{log_b x}`; `x`
//! is Benford in base `b` exactly when that coordinate is uniform. All the
//! primitives here are pure functions.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Reduced values this close to 1 are snapped to 0, so that exact powers of
/// the base land on the fixed point of the walk.
pub const SNAP_TOLERANCE: f64 = 1e-12;

/// Largest `|log_b x|` whose fractional part still carries information.
pub const MAX_LOG_MAGNITUDE: f64 = 4_503_599_627_370_496.0; // 2^52

/// A logarithm base, strictly greater than one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Base {
    value: f64,
    ln: f64,
}

impl Base {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 1.0 {
            return Err(Error::domain(format!("base must exceed 1 (got {value})")));
        }
        Ok(Base {
            value,
            ln: value.ln(),
        })
    }

    pub fn value(self) -> f64 {
        self.value
    }

    /// Natural logarithm of the base.
    pub fn ln(self) -> f64 {
        self.ln
    }

    /// The integer value of the base, if it is an integer `>= 2`.
    pub fn as_integer(self) -> Option<u32> {
        (self.value.fract() == 0.0 && self.value <= u32::MAX as f64).then_some(self.value as u32)
    }
}

impl TryFrom<f64> for Base {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Base::new(value)
    }
}

impl From<Base> for f64 {
    fn from(b: Base) -> f64 {
        b.value
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// A point of the circle `[0, 1)`, standing for `{log_b x}`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct FracLog(f64);

impl FracLog {
    pub const ZERO: FracLog = FracLog(0.0);

    /// Reduces any real modulo one.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::domain(format!("non-finite log value {value}")));
        }
        if value.abs() > MAX_LOG_MAGNITUDE {
            return Err(Error::Precision(value.abs()));
        }
        Ok(FracLog::wrap(value))
    }

    /// Reduction for values already known to be finite and small.
    pub(crate) fn wrap(value: f64) -> Self {
        let r = value - value.floor();
        if r >= 1.0 - SNAP_TOLERANCE {
            FracLog(0.0)
        } else {
            FracLog(r)
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<FracLog> for f64 {
    fn from(f: FracLog) -> f64 {
        f.0
    }
}

/// A positive frequency index `h` of `e_h(x) = exp(2iπhx)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Harmonic(u32);

impl Harmonic {
    pub fn new(h: u32) -> Result<Self> {
        if h == 0 {
            return Err(Error::domain("harmonic must be >= 1"));
        }
        Ok(Harmonic(h))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for Harmonic {
    type Error = Error;

    fn try_from(h: u32) -> Result<Self> {
        Harmonic::new(h)
    }
}

impl From<Harmonic> for u32 {
    fn from(h: Harmonic) -> u32 {
        h.0
    }
}

impl fmt::Display for Harmonic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_positive(x: f64) -> Result<()> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::domain(format!(
            "expected a positive finite number, got {x}"
        )));
    }
    Ok(())
}

/// `{log_b x}`.
pub fn fraclog(x: f64, b: Base) -> Result<FracLog> {
    check_positive(x)?;
    FracLog::new(x.ln() / b.ln())
}

/// The mantissa `M_b(x) ∈ [1, b)`, i.e. `b^{log_b x}` with the integer part
/// of the exponent dropped.
pub fn mantissa(x: f64, b: Base) -> Result<f64> {
    let f = fraclog(x, b)?;
    Ok(mantissa_of(f, b))
}

/// `b^f` for a point of the circle, clamped into `[1, b)`.
pub fn mantissa_of(f: FracLog, b: Base) -> f64 {
    let m = (f.0 * b.ln()).exp();
    if m >= b.value {
        1.0
    } else {
        m.max(1.0)
    }
}

/// `μ_b([1, a)) = log_b a`.
pub fn benford_cdf(a: f64, b: Base) -> Result<f64> {
    if !(a >= 1.0 && a <= b.value) {
        return Err(Error::domain(format!(
            "benford_cdf needs 1 <= a <= b, got a = {a}"
        )));
    }
    if a == b.value {
        return Ok(1.0);
    }
    Ok(a.ln() / b.ln())
}

/// Benford probability of leading digit `d` in an integer base.
pub fn first_digit_prob(d: u32, b: Base) -> Result<f64> {
    let ib = b
        .as_integer()
        .ok_or_else(|| Error::domain(format!("first-digit law needs an integer base, got {b}")))?;
    if d == 0 || d >= ib {
        return Err(Error::domain(format!("digit {d} outside 1..={}", ib - 1)));
    }
    Ok((1.0 / d as f64).ln_1p() / b.ln())
}

/// `exp(2iπ t)` with `t` in turns. Quarter turns are applied exactly, so
/// `t ∈ {0, 1/4, 1/2, 3/4}` give exact unit values.
pub fn cis_turns(t: f64) -> Complex64 {
    let t = t - t.floor();
    let q = (t * 4.0).floor();
    let r = t - q * 0.25;
    let (s, c) = (TAU * r).sin_cos();
    match q as u8 & 3 {
        0 => Complex64::new(c, s),
        1 => Complex64::new(-s, c),
        2 => Complex64::new(-c, -s),
        _ => Complex64::new(s, -c),
    }
}

/// `e_h(f) = exp(2iπ h f)`.
pub fn unit_phase(h: Harmonic, f: FracLog) -> Complex64 {
    cis_turns(h.0 as f64 * f.0)
}

/// Distance between two points of the circle, in `[0, 1/2]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}
