use std::f64::consts::PI;
use std::fmt;

use crate::error::{Result, TrigError};

/// A periodic domain `[a, b)` of period `L = b - a`.
///
/// The basis on every interval is `exp(2 pi i k t / L)` evaluated at the
/// absolute coordinate `t`, so translating an interval leaves the basis
/// functions where they are.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > a && (b - a).is_finite()) {
            return Err(TrigError::InvalidInterval { a, b });
        }
        Ok(Interval { a, b })
    }

    /// `[0, 2 pi]`, where the angular frequency is exactly 1.
    pub fn two_pi() -> Self {
        Interval { a: 0.0, b: 2.0 * PI }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Period `L = b - a`.
    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    /// Fundamental angular frequency `2 pi / L`.
    pub fn omega(&self) -> f64 {
        2.0 * PI / self.length()
    }

    /// Fraction of a period at which `t` sits in absolute coordinates,
    /// reduced to `[0, 1)`.
    pub(crate) fn turns(&self, t: f64) -> f64 {
        (t / self.length()).rem_euclid(1.0)
    }

    /// Fraction of a period between the left endpoint and `t`, in `[0, 1)`.
    pub(crate) fn turns_from_left(&self, t: f64) -> f64 {
        ((t - self.a) / self.length()).rem_euclid(1.0)
    }

    /// Maps `t` into `[a, b)`.
    pub fn wrap(&self, t: f64) -> f64 {
        let w = self.a + (t - self.a).rem_euclid(self.length());
        if w >= self.b {
            self.a
        } else {
            w
        }
    }

    /// True when both intervals have the same period (bitwise).
    pub fn same_period(&self, other: &Interval) -> bool {
        self.length() == other.length()
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval { a: -1.0, b: 1.0 }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}
