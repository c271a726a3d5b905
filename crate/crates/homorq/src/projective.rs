//! Points of the projective line and the shared 2x2 least-squares kernel.
//!
//! Every homogeneous quotient in this crate reduces to the same scalar
//! problem: given an n x 2 matrix `C = [b  -c]`, find the unit vector
//! `(a1, a2)` minimizing `||a1 b - a2 c||`, i.e. the eigenvector of the
//! smallest eigenvalue of `C' C`. Only three inner products enter:
//!
//! ```text
//!   C' C = [  b'b   -b'c ]   with   p = b'b,  q = c'c,  w = b'c.
//!          [ -b'c    c'c ]
//! ```
//!
//! For the standard problem `b = u, c = Au`; for the pencil case
//! `b = Bu, c = Au`; for secant stepsizes `b = s, c = y`. [`Gram2`] holds
//! `(p, q, w)` and produces the minimizer in closed form, evaluated on the
//! branch that avoids subtractive cancellation.

use core::fmt;

use crate::extended::ExtendedReal;
use crate::math;
use crate::quotients::QuotientError;

/// A point of the projective line in canonical homogeneous coordinates.
///
/// Canonical form: `a1^2 + a2^2 = 1` and the first nonzero coordinate is
/// positive, so equality of pairs is equality of projective points.
/// `(1, 0)` is the point at infinity; any other class has the finite
/// ratio `a1 / a2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HomogeneousPair {
    a1: f64,
    a2: f64,
}

impl HomogeneousPair {
    /// Canonical representative of the class of `(a1, a2)`.
    ///
    /// Fails on the zero pair or non-finite coordinates.
    pub fn new(a1: f64, a2: f64) -> Result<Self, QuotientError> {
        if !a1.is_finite() || !a2.is_finite() || (a1 == 0.0 && a2 == 0.0) {
            return Err(QuotientError::InvalidPair);
        }
        let scale = math::hypot(a1, a2);
        let mut a1 = a1 / scale;
        let mut a2 = a2 / scale;
        // canonical sign: first nonzero coordinate positive
        let flip = if a1 != 0.0 { a1 < 0.0 } else { a2 < 0.0 };
        if flip {
            a1 = -a1;
            a2 = -a2;
        }
        // normalize -0.0 so byte-level output is stable
        Ok(HomogeneousPair { a1: a1 + 0.0, a2: a2 + 0.0 })
    }

    /// The pair representing a finite ratio or the point at infinity.
    pub fn from_ratio(ratio: ExtendedReal) -> Self {
        match ratio {
            ExtendedReal::Finite(a) => {
                let scale = math::hypot(1.0, a);
                let (a1, a2) = (a / scale, 1.0 / scale);
                if a1 < 0.0 {
                    HomogeneousPair { a1: -a1, a2: -a2 }
                } else {
                    HomogeneousPair { a1: a1 + 0.0, a2 }
                }
            }
            ExtendedReal::Infinity => HomogeneousPair { a1: 1.0, a2: 0.0 },
        }
    }

    #[inline]
    pub fn a1(&self) -> f64 {
        self.a1
    }

    #[inline]
    pub fn a2(&self) -> f64 {
        self.a2
    }

    /// The ratio `a1 / a2`, infinite when `a2 = 0`.
    #[inline]
    pub fn ratio(&self) -> ExtendedReal {
        if self.a2 == 0.0 {
            ExtendedReal::Infinity
        } else {
            ExtendedReal::Finite(self.a1 / self.a2)
        }
    }
}

impl fmt::Display for HomogeneousPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a1, self.a2)
    }
}

/// The three inner products defining the 2x2 normal equations.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Gram2 {
    /// `b' b`
    pub p: f64,
    /// `c' c`
    pub q: f64,
    /// `b' c`
    pub w: f64,
}

impl Gram2 {
    /// Smallest eigenvalue of `C' C` (the squared minimal residual).
    ///
    /// Computed as `det / nu` with `nu` the largest eigenvalue: the direct
    /// `(p + q - sqrt(...)) / 2` form cancels badly when the minimum is
    /// small. Clamped at zero against roundoff in the determinant.
    pub fn smallest_eigenvalue(&self) -> f64 {
        let det = self.p * self.q - self.w * self.w;
        let nu = 0.5 * (self.p + self.q + math::hypot(self.p - self.q, 2.0 * self.w));
        if nu <= 0.0 {
            return 0.0;
        }
        (det / nu).max(0.0)
    }

    /// The minimizing ratio `a1 / a2`.
    ///
    /// For `w != 0` this is the root of `w a^2 + (p - q) a - w = 0` with
    /// `sign(a) = sign(w)`, evaluated on the cancellation-free branch.
    /// For `w = 0` the matrix `C' C` is diagonal and the minimizer is a
    /// coordinate axis: zero when `q <= p`, infinity otherwise.
    pub fn selected_ratio(&self) -> ExtendedReal {
        if self.w == 0.0 {
            return if self.q <= self.p {
                ExtendedReal::Finite(0.0)
            } else {
                ExtendedReal::Infinity
            };
        }
        let d = self.q - self.p;
        let disc = math::hypot(d, 2.0 * self.w);
        let a = if d >= 0.0 { (d + disc) / (2.0 * self.w) } else { 2.0 * self.w / (disc - d) };
        ExtendedReal::Finite(a)
    }

    /// Canonical minimizer of `||a1 b - a2 c||` on the unit circle, with
    /// the attained smallest eigenvalue of `C' C`.
    pub fn minimizer(&self) -> (HomogeneousPair, f64) {
        (HomogeneousPair::from_ratio(self.selected_ratio()), self.smallest_eigenvalue())
    }

    /// Both roots of `w a^2 + (p - q) a - w = 0`, selected root first.
    ///
    /// The non-selected root is recovered from the product `-1` (Vieta), so
    /// neither root is formed by a cancelling subtraction. `None` when the
    /// quadratic degenerates (`w = 0`).
    pub fn roots(&self) -> Option<(f64, f64)> {
        match self.selected_ratio() {
            ExtendedReal::Finite(a) if self.w != 0.0 => Some((a, -1.0 / a)),
            _ => None,
        }
    }
}
