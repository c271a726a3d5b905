//! Tagged extended reals.
//!
//! Harmonic and homogeneous Rayleigh quotients are points of the projective
//! line: they may legitimately take the value "infinity" (the pair `(1, 0)`).
//! That case is carried as an explicit tag so IEEE infinities never leak
//! through downstream arithmetic unnoticed.

use core::fmt;

/// A real number or the projective point at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    Infinity,
}

impl ExtendedReal {
    /// `Some(x)` for a finite value, `None` at infinity.
    #[inline]
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(x) => Some(x),
            ExtendedReal::Infinity => None,
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    /// Collapse to `f64`, mapping the infinity tag to `f64::INFINITY`.
    ///
    /// Intended for reporting only; computations should match on the enum.
    #[inline]
    pub fn to_f64(self) -> f64 {
        match self {
            ExtendedReal::Finite(x) => x,
            ExtendedReal::Infinity => f64::INFINITY,
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(x: f64) -> Self {
        ExtendedReal::Finite(x)
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(x) => write!(f, "{x}"),
            ExtendedReal::Infinity => write!(f, "inf"),
        }
    }
}
