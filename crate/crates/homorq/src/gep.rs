//! Quotients for the symmetric-definite pencil `(A, B)`.
//!
//! For the generalized problem `Ax = lambda Bx` with `A` symmetric and `B`
//! symmetric positive definite, the relevant estimates for a trial vector
//! `u` are
//!
//! ```text
//!   theta  = u'ABu / u'B^2u        (minimizes ||Au - g Bu||)
//!   theta~ = u'A^2u / u'ABu        (minimizes ||g^{-1} Au - Bu||)
//! ```
//!
//! and the homogeneous quotient built from `C = [Bu  -Au]`, which obeys
//! the same closed forms, quadratic equation, ordering, and chordal bound
//! as the standard case — with `u'ABu` in the role of the pivot and an
//! extra `1/lambda_min(B)` factor in the residual bound. Setting `B = I`
//! recovers the `quotients` module exactly.
//!
//! Definiteness of `B` is the caller's contract; it can be spot-checked
//! with [`crate::operator::definiteness_spot_check`] but is not enforced
//! by factorization (nothing here needs one).

use alloc::vec::Vec;

use crate::extended::ExtendedReal;
use crate::linalg::dot;
use crate::math;
use crate::operator::SymOperator;
use crate::projective::{Gram2, HomogeneousPair};
use crate::quotients::QuotientError;

/// The pencil `(A, B)`, as a pair of matrix-free operator actions.
#[derive(Clone, Copy)]
pub struct Pencil<'a> {
    a: &'a dyn SymOperator,
    b: &'a dyn SymOperator,
}

impl core::fmt::Debug for Pencil<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Pencil").field("dim", &self.dim()).finish()
    }
}

impl<'a> Pencil<'a> {
    /// Pair two operators of equal dimension.
    pub fn new(a: &'a dyn SymOperator, b: &'a dyn SymOperator) -> Result<Self, QuotientError> {
        if a.dim() != b.dim() {
            return Err(QuotientError::DimensionMismatch { expected: a.dim(), got: b.dim() });
        }
        Ok(Pencil { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn a(&self) -> &'a dyn SymOperator {
        self.a
    }

    pub fn b(&self) -> &'a dyn SymOperator {
        self.b
    }
}

/// `(p, q, w) = (||Bu||^2, ||Au||^2, (Bu)'(Au))` plus both images.
fn grams(
    pencil: &Pencil<'_>,
    u: &[f64],
) -> Result<(Gram2, Vec<f64>, Vec<f64>), QuotientError> {
    if pencil.dim() != u.len() {
        return Err(QuotientError::DimensionMismatch { expected: pencil.dim(), got: u.len() });
    }
    let uu = dot(u, u);
    if !(uu > 0.0) || !uu.is_finite() {
        return Err(QuotientError::ZeroVector);
    }
    let au = pencil.a.apply_vec(u);
    let bu = pencil.b.apply_vec(u);
    let g = Gram2 { p: dot(&bu, &bu), q: dot(&au, &au), w: dot(&bu, &au) };
    Ok((g, au, bu))
}

/// Generalized Rayleigh quotient `u'ABu / u'B^2u`.
pub fn gen_rayleigh(pencil: &Pencil<'_>, u: &[f64]) -> Result<f64, QuotientError> {
    let (g, _, _) = grams(pencil, u)?;
    Ok(g.w / g.p)
}

/// Generalized harmonic quotient `u'A^2u / u'ABu`, infinite when the
/// pivot vanishes.
pub fn gen_harmonic(pencil: &Pencil<'_>, u: &[f64]) -> Result<ExtendedReal, QuotientError> {
    let (g, _, _) = grams(pencil, u)?;
    if g.w == 0.0 {
        Ok(ExtendedReal::Infinity)
    } else {
        Ok(ExtendedReal::Finite(g.q / g.w))
    }
}

/// Canonical minimizer of `||a1 Bu - a2 Au||` with the smallest eigenvalue
/// of `C'C`, `C = [Bu  -Au]`. Degenerate pivots follow the same axis rule
/// as the standard problem.
pub fn gen_homogeneous_pair(
    pencil: &Pencil<'_>,
    u: &[f64],
) -> Result<(HomogeneousPair, f64), QuotientError> {
    let (g, _, _) = grams(pencil, u)?;
    Ok(g.minimizer())
}

/// Generalized homogeneous Rayleigh quotient; `sign(alpha) = sign(u'ABu)`.
pub fn gen_homogeneous(pencil: &Pencil<'_>, u: &[f64]) -> Result<ExtendedReal, QuotientError> {
    let (g, _, _) = grams(pencil, u)?;
    Ok(g.selected_ratio())
}

/// Both roots of `(u'ABu) a^2 + (u'B^2u - u'A^2u) a - u'ABu = 0`,
/// selected root first; roots multiply to -1.
pub fn gen_quadratic_roots(
    pencil: &Pencil<'_>,
    u: &[f64],
) -> Result<(f64, f64), QuotientError> {
    let (g, _, _) = grams(pencil, u)?;
    g.roots().ok_or(QuotientError::DegenerateQuadratic)
}

/// Nonlinear Galerkin defect `u'(alpha A + B)(A - alpha B)u`; zero at both
/// quadratic roots.
pub fn gen_galerkin_defect(
    pencil: &Pencil<'_>,
    u: &[f64],
    alpha: f64,
) -> Result<f64, QuotientError> {
    let (g, _, _) = grams(pencil, u)?;
    Ok(alpha * g.q + (1.0 - alpha * alpha) * g.w - alpha * g.p)
}

/// Chordal residual bound for the pencil: for some generalized eigenvalue
/// `lambda`,
/// `chord(lambda, alpha) <= ||(A - alpha B)u|| /
/// (lambda_min(B) sqrt(1 + lambda^2) ||u|| sqrt(1 + alpha^2))`.
///
/// Evaluated at a caller-supplied candidate `lambda`; `lambda1_b` is the
/// smallest eigenvalue of `B`, which the caller must provide (the library
/// does not compute extremal eigenvalues). With `B = I`, `lambda1_b = 1`
/// recovers the standard bound.
pub fn gen_chordal_bound(
    pencil: &Pencil<'_>,
    u: &[f64],
    alpha: f64,
    lambda: f64,
    lambda1_b: f64,
) -> Result<f64, QuotientError> {
    if !(lambda1_b > 0.0) {
        return Err(QuotientError::ZeroShift);
    }
    let (_, au, bu) = grams(pencil, u)?;
    let res: f64 = math::sqrt(
        au.iter()
            .zip(&bu)
            .map(|(ai, bi)| {
                let r = ai - alpha * bi;
                r * r
            })
            .sum(),
    );
    let unorm = math::sqrt(dot(u, u));
    Ok(res / (lambda1_b * math::hypot(1.0, lambda) * unorm * math::hypot(1.0, alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::Diagonal;
    use crate::quotients;

    #[test]
    fn hand_values_for_diagonal_pencil() {
        let a = Diagonal::new(vec![1.0, 2.0]);
        let b = Diagonal::new(vec![1.0, 4.0]);
        let pencil = Pencil::new(&a, &b).unwrap();
        let u = [1.0, 1.0];
        assert_eq!(gen_rayleigh(&pencil, &u).unwrap(), 9.0 / 17.0);
        assert_eq!(gen_harmonic(&pencil, &u).unwrap().finite().unwrap(), 5.0 / 9.0);
        // root of 9 a^2 + 12 a - 9 = 0 with a > 0
        let alpha = gen_homogeneous(&pencil, &u).unwrap().finite().unwrap();
        let expect = (-12.0 + (144.0_f64 + 324.0).sqrt()) / 18.0;
        assert!((alpha - expect).abs() < 1e-14);
        assert!((alpha - 0.53518).abs() < 5e-6);
        let (sel, other) = gen_quadratic_roots(&pencil, &u).unwrap();
        assert_eq!(sel, alpha);
        assert!((sel * other + 1.0).abs() < 1e-14);
        // defect vanishes at both roots
        assert!(gen_galerkin_defect(&pencil, &u, sel).unwrap().abs() < 1e-13);
        assert!(gen_galerkin_defect(&pencil, &u, other).unwrap().abs() < 1e-13);
    }

    #[test]
    fn identity_pencil_reduces_to_standard_quotients() {
        let a = Diagonal::new(vec![-0.5, 1.25, 3.0]);
        let b = Diagonal::new(vec![1.0, 1.0, 1.0]);
        let pencil = Pencil::new(&a, &b).unwrap();
        let u = [0.3, -0.7, 1.1];
        assert!((gen_rayleigh(&pencil, &u).unwrap() - quotients::rayleigh(&a, &u).unwrap()).abs() < 1e-15);
        let gh = gen_homogeneous(&pencil, &u).unwrap().finite().unwrap();
        let h = quotients::homogeneous_rayleigh(&a, &u).unwrap().finite().unwrap();
        assert!((gh - h).abs() < 1e-14);
        let lhs = gen_chordal_bound(&pencil, &u, gh, 1.25, 1.0).unwrap();
        let rhs = quotients::chordal_bound_rhs(&a, &u, gh, 1.25).unwrap();
        assert!((lhs - rhs).abs() < 1e-15);
    }

    #[test]
    fn generalized_eigenvector_gives_exact_ratio() {
        let a = Diagonal::new(vec![3.0, 2.0]);
        let b = Diagonal::new(vec![2.0, 5.0]);
        let pencil = Pencil::new(&a, &b).unwrap();
        let (pair, mu) = gen_homogeneous_pair(&pencil, &[0.0, 1.0]).unwrap();
        assert!(mu.abs() < 1e-14);
        let alpha = pair.ratio().finite().unwrap();
        assert!((alpha - 2.0 / 5.0).abs() < 1e-14);
        assert_eq!(gen_rayleigh(&pencil, &[0.0, 1.0]).unwrap(), 2.0 / 5.0);
    }

    #[test]
    fn chordal_bound_dominates_distance_to_nearest_eigenvalue() {
        let a = Diagonal::new(vec![-1.0, 0.5, 2.0]);
        let b = Diagonal::new(vec![0.5, 1.0, 2.0]);
        let pencil = Pencil::new(&a, &b).unwrap();
        let u = [0.2, 0.9, -0.4];
        let alpha = gen_homogeneous(&pencil, &u).unwrap().finite().unwrap();
        // generalized eigenvalues of a diagonal pencil are a_ii / b_ii
        let eigs = [-2.0, 0.5, 1.0];
        let lambda1_b = 0.5;
        let hit = eigs.iter().any(|&lam| {
            let chord = quotients::chordal_distance(
                ExtendedReal::Finite(lam),
                ExtendedReal::Finite(alpha),
            );
            chord <= gen_chordal_bound(&pencil, &u, alpha, lam, lambda1_b).unwrap()
        });
        assert!(hit, "no eigenvalue satisfied the chordal bound");
    }

    #[test]
    fn eigenvector_makes_both_sides_of_bound_zero() {
        let a = Diagonal::new(vec![3.0, 2.0]);
        let b = Diagonal::new(vec![2.0, 5.0]);
        let pencil = Pencil::new(&a, &b).unwrap();
        let u = [1.0, 0.0];
        let alpha = 1.5;
        let bound = gen_chordal_bound(&pencil, &u, alpha, alpha, 2.0).unwrap();
        assert!(bound.abs() < 1e-15);
    }

    #[test]
    fn pencil_dimension_mismatch() {
        let a = Diagonal::new(vec![1.0, 2.0]);
        let b = Diagonal::new(vec![1.0, 2.0, 3.0]);
        assert!(Pencil::new(&a, &b).is_err());
    }
}
