//! Standard, harmonic, and homogeneous Rayleigh quotients.
//!
//! For a symmetric operator `A` and a nonzero trial vector `u`, three
//! eigenvalue estimates are computed side by side:
//!
//! * the Rayleigh quotient `theta = u'Au / u'u`, which minimizes
//!   `||Au - g u||` over `g`;
//! * the harmonic Rayleigh quotient `theta~ = u'A^2u / u'Au`, which
//!   minimizes `||g^{-1} Au - u||` (infinite when `u'Au = 0`);
//! * the homogeneous Rayleigh quotient `alpha = a1/a2`, where the unit
//!   pair `(a1, a2)` minimizes `||a1 u - a2 Au||` over the projective
//!   line. It always lies between the other two: `theta <= alpha <=
//!   theta~` when `u'Au > 0`, reversed when `u'Au < 0`.
//!
//! `alpha` solves the quadratic `(u'Au) a^2 + (u'u - u'A^2u) a - u'Au = 0`
//! whose roots multiply to -1, equivalently the nonlinear Galerkin
//! condition `u'(A + a^{-1} I)(A - a I)u = 0`; it is also the harmonic
//! quotient with target `-1/alpha`. All functions are matrix-free: the
//! operator enters only through one application `Au`.

use alloc::vec::Vec;

use crate::extended::ExtendedReal;
use crate::linalg::dot;
use crate::math;
use crate::operator::SymOperator;
use crate::projective::{Gram2, HomogeneousPair};

/// Errors from quotient evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("trial vector is zero or has non-finite entries")]
    ZeroVector,
    #[error("operator dim {expected} does not match vector dim {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("u'(A - tau I)u vanishes; targeted harmonic quotient undefined")]
    ZeroTargetDenominator,
    #[error("u'Au vanishes; the quadratic in alpha degenerates")]
    DegenerateQuadratic,
    #[error("shift must be nonzero")]
    ZeroShift,
    #[error("homogeneous pair must be nonzero and finite")]
    InvalidPair,
}

/// All quotient and residual diagnostics for one `(A, u)` pair.
#[derive(Clone, Debug)]
pub struct QuotientReport {
    /// Rayleigh quotient `u'Au / u'u`.
    pub theta: f64,
    /// Harmonic Rayleigh quotient, infinite when `u'Au = 0`.
    pub theta_harmonic: ExtendedReal,
    /// Canonical minimizer of the homogeneous residual.
    pub alpha_pair: HomogeneousPair,
    /// Homogeneous Rayleigh quotient `a1 / a2`.
    pub alpha: ExtendedReal,
    /// Smallest eigenvalue of `C'C`, `C = [u  -Au]`; zero iff `u` is an
    /// eigenvector.
    pub mu: f64,
    /// `||Au - theta u||`.
    pub res_standard: f64,
    /// `||theta~^{-1} Au - u||`, evaluated at the harmonic optimum.
    pub res_harmonic: f64,
    /// `||a1 u - a2 Au||` at the canonical pair.
    pub res_homogeneous: f64,
}

/// Inner products `(u'u, u'A^2u, u'Au)` with input validation.
fn grams(a: &dyn SymOperator, u: &[f64]) -> Result<(Gram2, Vec<f64>), QuotientError> {
    if a.dim() != u.len() {
        return Err(QuotientError::DimensionMismatch { expected: a.dim(), got: u.len() });
    }
    let p = dot(u, u);
    if !(p > 0.0) || !p.is_finite() {
        return Err(QuotientError::ZeroVector);
    }
    let au = a.apply_vec(u);
    let w = dot(u, &au);
    let q = dot(&au, &au);
    Ok((Gram2 { p, q, w }, au))
}

/// Rayleigh quotient `u'Au / u'u`.
pub fn rayleigh(a: &dyn SymOperator, u: &[f64]) -> Result<f64, QuotientError> {
    let (g, _) = grams(a, u)?;
    Ok(g.w / g.p)
}

/// Harmonic Rayleigh quotient `u'A^2u / u'Au`, infinite when `u'Au = 0`.
pub fn harmonic_rayleigh(a: &dyn SymOperator, u: &[f64]) -> Result<ExtendedReal, QuotientError> {
    let (g, _) = grams(a, u)?;
    if g.w == 0.0 {
        Ok(ExtendedReal::Infinity)
    } else {
        Ok(ExtendedReal::Finite(g.q / g.w))
    }
}

/// Harmonic Rayleigh quotient with target `tau`:
/// `u'(A - tau I)Au / u'(A - tau I)u`.
///
/// Reduces to [`harmonic_rayleigh`] at `tau = 0` and reports a vanishing
/// denominator as an error rather than producing a NaN.
pub fn harmonic_rayleigh_target(
    a: &dyn SymOperator,
    u: &[f64],
    tau: f64,
) -> Result<f64, QuotientError> {
    let (g, _) = grams(a, u)?;
    let den = g.w - tau * g.p;
    if den == 0.0 {
        return Err(QuotientError::ZeroTargetDenominator);
    }
    Ok((g.q - tau * g.w) / den)
}

/// Canonical minimizer of `||a1 u - a2 Au||` on the projective line,
/// together with the smallest eigenvalue `mu` of `C'C`, `C = [u  -Au]`.
///
/// `mu = 0` exactly when `u` is an eigenvector, in which case the pair
/// represents the corresponding eigenvalue. In the degenerate case
/// `u'Au = 0` the matrix `C'C` is diagonal and the minimizer is the axis
/// with the smaller residual: `(0, 1)` (the value zero) when
/// `u'A^2u <= u'u`, else `(1, 0)` (the point at infinity).
pub fn homogeneous_pair(
    a: &dyn SymOperator,
    u: &[f64],
) -> Result<(HomogeneousPair, f64), QuotientError> {
    let (g, _) = grams(a, u)?;
    Ok(g.minimizer())
}

/// Homogeneous Rayleigh quotient `alpha = a1 / a2`.
///
/// For `u'Au != 0` this is the closed-form sign-matched root
/// `[u'A^2u - u'u + sqrt((u'A^2u - u'u)^2 + 4 (u'Au)^2)] / (2 u'Au)`,
/// so `sign(alpha) = sign(u'Au)`; it is invariant under scaling of `u`.
pub fn homogeneous_rayleigh(
    a: &dyn SymOperator,
    u: &[f64],
) -> Result<ExtendedReal, QuotientError> {
    let (g, _) = grams(a, u)?;
    Ok(g.selected_ratio())
}

/// Both roots of `(u'Au) a^2 + (u'u - u'A^2u) a - u'Au = 0`.
///
/// The first root is the homogeneous Rayleigh quotient (it satisfies
/// `a * u'Au > 0` and minimizes the homogeneous residual); the second,
/// `-1/alpha` by Vieta, maximizes it.
pub fn quadratic_roots(a: &dyn SymOperator, u: &[f64]) -> Result<(f64, f64), QuotientError> {
    let (g, _) = grams(a, u)?;
    g.roots().ok_or(QuotientError::DegenerateQuadratic)
}

/// Nonlinear Galerkin defect `u'(A + alpha^{-1} I)(A - alpha I)u`.
///
/// Vanishes (to roundoff) exactly at the roots of the homogeneous
/// quadratic.
pub fn galerkin_defect(
    a: &dyn SymOperator,
    u: &[f64],
    alpha: f64,
) -> Result<f64, QuotientError> {
    if alpha == 0.0 {
        return Err(QuotientError::ZeroShift);
    }
    let (g, _) = grams(a, u)?;
    Ok(g.q + (1.0 / alpha - alpha) * g.w - g.p)
}

/// Residual norms `(||Au - gamma u||, ||gamma^{-1} Au - u||)` at a common
/// trial value `gamma`. The harmonic form needs `gamma != 0`.
pub fn residuals(
    a: &dyn SymOperator,
    u: &[f64],
    gamma: f64,
) -> Result<(f64, f64), QuotientError> {
    if gamma == 0.0 {
        return Err(QuotientError::ZeroShift);
    }
    let (_, au) = grams(a, u)?;
    let standard = residual_norm(&au, u, gamma);
    let harmonic = residual_norm(u, &au, 1.0 / gamma);
    Ok((standard, harmonic))
}

/// `||x - c y||`.
fn residual_norm(x: &[f64], y: &[f64], c: f64) -> f64 {
    math::sqrt(x.iter().zip(y).map(|(xi, yi)| (xi - c * yi) * (xi - c * yi)).sum())
}

/// Homogeneous residual `||a1 u - a2 Au|| / sqrt(a1^2 + a2^2)`.
///
/// At the minimizing pair this equals `sqrt(mu)` and is never larger than
/// either classical residual minimum.
pub fn homogeneous_residual(
    a: &dyn SymOperator,
    u: &[f64],
    pair: &HomogeneousPair,
) -> Result<f64, QuotientError> {
    let (_, au) = grams(a, u)?;
    let raw: f64 = u
        .iter()
        .zip(&au)
        .map(|(ui, aui)| {
            let r = pair.a1() * ui - pair.a2() * aui;
            r * r
        })
        .sum();
    Ok(math::sqrt(raw) / math::hypot(pair.a1(), pair.a2()))
}

/// Chordal distance `|a - b| / (sqrt(1 + a^2) sqrt(1 + b^2))` on the
/// projective line, extended homogeneously to the point at infinity.
/// Symmetric, zero iff the points coincide, and never above 1.
pub fn chordal_distance(a: ExtendedReal, b: ExtendedReal) -> f64 {
    match (a, b) {
        (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => {
            // hypot keeps the scaling safe for values near sqrt(MAX)
            math::abs(a - b) / (math::hypot(1.0, a) * math::hypot(1.0, b))
        }
        (ExtendedReal::Infinity, ExtendedReal::Finite(x))
        | (ExtendedReal::Finite(x), ExtendedReal::Infinity) => 1.0 / math::hypot(1.0, x),
        (ExtendedReal::Infinity, ExtendedReal::Infinity) => 0.0,
    }
}

/// Right-hand side of the chordal residual bound: for any `alpha` there is
/// an eigenvalue `lambda` of `A` with
/// `chord(lambda, alpha) <= ||(A - alpha I)u|| / (sqrt(1 + lambda^2)
/// ||u|| sqrt(1 + alpha^2))`. Evaluates the bound at a candidate `lambda`.
pub fn chordal_bound_rhs(
    a: &dyn SymOperator,
    u: &[f64],
    alpha: f64,
    lambda: f64,
) -> Result<f64, QuotientError> {
    let (g, au) = grams(a, u)?;
    let res = residual_norm(&au, u, alpha);
    Ok(res / (math::hypot(1.0, lambda) * math::sqrt(g.p) * math::hypot(1.0, alpha)))
}

/// Evaluate every quotient and residual for one `(A, u)` pair.
///
/// Residuals are taken at the respective optimal arguments; undefined
/// quotients propagate as tagged infinities instead of failing.
pub fn quotient_report(a: &dyn SymOperator, u: &[f64]) -> Result<QuotientReport, QuotientError> {
    let (g, au) = grams(a, u)?;
    let theta = g.w / g.p;
    let theta_harmonic = if g.w == 0.0 {
        ExtendedReal::Infinity
    } else {
        ExtendedReal::Finite(g.q / g.w)
    };
    let (alpha_pair, mu) = g.minimizer();
    let alpha = g.selected_ratio();

    let res_standard = residual_norm(&au, u, theta);
    // harmonic optimum in the reciprocal variable is t = u'Au / u'A^2u,
    // which stays defined when the quotient itself is infinite
    let t = if g.q > 0.0 { g.w / g.q } else { 0.0 };
    let res_harmonic = residual_norm(u, &au, t);
    let res_homogeneous = {
        let raw: f64 = u
            .iter()
            .zip(&au)
            .map(|(ui, aui)| {
                let r = alpha_pair.a1() * ui - alpha_pair.a2() * aui;
                r * r
            })
            .sum();
        math::sqrt(raw)
    };

    Ok(QuotientReport {
        theta,
        theta_harmonic,
        alpha_pair,
        alpha,
        mu,
        res_standard,
        res_harmonic,
        res_homogeneous,
    })
}
