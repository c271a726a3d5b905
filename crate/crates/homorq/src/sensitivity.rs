//! Eigenvector-perturbation sensitivity of the Rayleigh quotients.
//!
//! Setting: `u = x + eps e` approximates a unit eigenvector `x` of a
//! simple eigenvalue `lambda`, with `e` a unit vector orthogonal to `x`.
//! Up to `O(eps^4)` each quotient satisfies a second-order expansion of
//! the form `lambda + quadratic form in e`, which sandwiches the relative
//! error between spectrum-dependent bounds:
//!
//! ```text
//!   (eps^2/|lambda|) min_{i != j} |p(lambda_i)|
//!       <~  |quotient(u) - lambda| / |lambda|
//!       <~  (eps^2/|lambda|) max_{i != j} |p(lambda_i)|
//! ```
//!
//! with one polynomial `p` per quotient kind ([`p_lambda`]). The bounds
//! are asymptotic, and the lower one can fail for interior eigenvalues
//! when `p` changes sign over the spectrum (cancellation in the quadratic
//! form); scatter experiments therefore report points against the bounds
//! instead of asserting them sample by sample.
//!
//! [`run_sensitivity_experiment`] draws a diagonal spectrum from a
//! configured family, perturbs every eigenvector with seeded Gaussian
//! noise, and tabulates values, relative errors, and bounds per
//! (eigenvalue, kind, perturbation) cell. Each cell derives its own
//! counter-based stream from the master seed, so results replay exactly.

use alloc::vec::Vec;

use crate::extended::ExtendedReal;
use crate::linalg::{dot, norm};
use crate::math;
use crate::operator::{Diagonal, SymOperator};
use crate::projective::Gram2;
use crate::rng::{derive, Rng};

/// Which quotient a sensitivity statement refers to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QuotientKind {
    Standard,
    Harmonic,
    HarmonicWithTarget(f64),
    Homogeneous,
}

impl QuotientKind {
    /// Stable lowercase label used in reports.
    pub fn label(&self) -> &'static str {
        match self {
            QuotientKind::Standard => "standard",
            QuotientKind::Harmonic => "harmonic",
            QuotientKind::HarmonicWithTarget(_) => "harmonic_target",
            QuotientKind::Homogeneous => "homogeneous",
        }
    }
}

/// A diagonal symmetric operator described by its (sorted) spectrum, with
/// one eigenvalue singled out for study.
#[derive(Clone, Debug)]
pub struct SpectrumModel {
    eigenvalues: Vec<f64>,
    target_index: usize,
}

impl SpectrumModel {
    /// Eigenvalues must be finite and strictly increasing (all simple).
    pub fn new(eigenvalues: Vec<f64>, target_index: usize) -> Result<Self, SensitivityError> {
        if eigenvalues.is_empty() || target_index >= eigenvalues.len() {
            return Err(SensitivityError::TargetOutOfRange);
        }
        if eigenvalues.iter().any(|x| !x.is_finite()) {
            return Err(SensitivityError::NonFiniteEigenvalue);
        }
        if eigenvalues.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SensitivityError::NotStrictlyIncreasing);
        }
        Ok(SpectrumModel { eigenvalues, target_index })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn target_index(&self) -> usize {
        self.target_index
    }

    /// The eigenvalue under study.
    pub fn target(&self) -> f64 {
        self.eigenvalues[self.target_index]
    }

    /// Same spectrum, different target.
    pub fn with_target(&self, target_index: usize) -> Result<Self, SensitivityError> {
        SpectrumModel::new(self.eigenvalues.clone(), target_index)
    }

    pub fn operator(&self) -> Diagonal {
        Diagonal::new(self.eigenvalues.clone())
    }
}

/// Asymptotic `[lower, upper]` bounds on a relative error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SensitivityError {
    #[error("target eigenvalue must be nonzero for relative-error bounds")]
    ZeroEigenvalue,
    #[error("the bound needs at least two eigenvalues")]
    SingleEigenvalue,
    #[error("target index out of range")]
    TargetOutOfRange,
    #[error("eigenvalues must be strictly increasing")]
    NotStrictlyIncreasing,
    #[error("eigenvalues must be finite")]
    NonFiniteEigenvalue,
    #[error("target tau coincides with the studied eigenvalue")]
    TargetEqualsEigenvalue,
    #[error("base vector must have unit norm")]
    NotUnit,
    #[error("could not produce a nonzero orthogonal projection")]
    DegeneratePerturbation,
    #[error("dimension mismatch")]
    DimensionMismatch,
}

/// The polynomial `p_lambda` controlling a quotient's sensitivity bound:
///
/// | kind              | `p_lambda(t)`                         |
/// |-------------------|---------------------------------------|
/// | standard          | `t - lambda`                          |
/// | harmonic          | `t (t - lambda) / lambda`             |
/// | target `tau`      | `(t - tau)(t - lambda) / (lambda - tau)` |
/// | homogeneous       | `(t - lambda)(lambda t + 1) / (lambda^2 + 1)` |
///
/// The homogeneous polynomial satisfies `p_lambda = p_{-1/lambda}`; its
/// roots are `lambda` and `-1/lambda`.
pub fn p_lambda(kind: QuotientKind, lambda: f64, t: f64) -> Result<f64, SensitivityError> {
    match kind {
        QuotientKind::Standard => Ok(t - lambda),
        QuotientKind::Harmonic => {
            if lambda == 0.0 {
                return Err(SensitivityError::ZeroEigenvalue);
            }
            Ok(t * (t - lambda) / lambda)
        }
        QuotientKind::HarmonicWithTarget(tau) => {
            if lambda == tau {
                return Err(SensitivityError::TargetEqualsEigenvalue);
            }
            Ok((t - tau) * (t - lambda) / (lambda - tau))
        }
        QuotientKind::Homogeneous => {
            if lambda == 0.0 {
                return Err(SensitivityError::ZeroEigenvalue);
            }
            Ok((t - lambda) * (lambda * t + 1.0) / (lambda * lambda + 1.0))
        }
    }
}

/// Asymptotic relative-error bounds
/// `(eps^2/|lambda|) {min,max}_{i != target} |p_lambda(lambda_i)|`.
pub fn asymptotic_bounds(
    kind: QuotientKind,
    spectrum: &SpectrumModel,
    eps: f64,
) -> Result<BoundPair, SensitivityError> {
    let lambda = spectrum.target();
    if lambda == 0.0 {
        return Err(SensitivityError::ZeroEigenvalue);
    }
    if spectrum.eigenvalues().len() < 2 {
        return Err(SensitivityError::SingleEigenvalue);
    }
    let mut lo = f64::INFINITY;
    let mut hi = 0.0_f64;
    for (i, &t) in spectrum.eigenvalues().iter().enumerate() {
        if i == spectrum.target_index() {
            continue;
        }
        let v = math::abs(p_lambda(kind, lambda, t)?);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let scale = eps * eps / math::abs(lambda);
    Ok(BoundPair { lower: scale * lo, upper: scale * hi })
}

/// Upper bound for `max_{i != target} |p_lambda(lambda_i)|` from the
/// parabola's candidate extrema: the spectrum endpoints plus the vertex
/// `lambda/2` (harmonic) or `(lambda - 1/lambda)/2` (homogeneous).
/// For the standard kind the polynomial is affine and the endpoints
/// suffice.
pub fn vertex_candidate_bound(
    kind: QuotientKind,
    spectrum: &SpectrumModel,
) -> Result<f64, SensitivityError> {
    let lambda = spectrum.target();
    let lo = spectrum.eigenvalues()[0];
    let hi = *spectrum.eigenvalues().last().expect("nonempty");
    let vertex = match kind {
        QuotientKind::Standard => None,
        QuotientKind::Harmonic => Some(0.5 * lambda),
        QuotientKind::HarmonicWithTarget(tau) => Some(0.5 * (lambda + tau)),
        QuotientKind::Homogeneous => {
            if lambda == 0.0 {
                return Err(SensitivityError::ZeroEigenvalue);
            }
            Some(0.5 * (lambda - 1.0 / lambda))
        }
    };
    let mut best = math::abs(p_lambda(kind, lambda, lo)?).max(math::abs(p_lambda(kind, lambda, hi)?));
    if let Some(v) = vertex {
        best = best.max(math::abs(p_lambda(kind, lambda, v)?));
    }
    Ok(best)
}

/// Unit vector orthogonal to the unit vector `x`, from a seeded Gaussian
/// draw projected onto the orthogonal complement. Deterministic per seed;
/// retries with successor seeds (at most 8) if the projection degenerates.
pub fn make_orthogonal_perturbation(x: &[f64], seed: u64) -> Result<Vec<f64>, SensitivityError> {
    if math::abs(norm(x) - 1.0) > 1e-8 {
        return Err(SensitivityError::NotUnit);
    }
    for attempt in 0..8u64 {
        let mut rng = Rng::new(seed.wrapping_add(attempt));
        let mut e = alloc::vec![0.0; x.len()];
        rng.fill_normal(&mut e);
        let along = dot(&e, x);
        for (ei, xi) in e.iter_mut().zip(x) {
            *ei -= along * xi;
        }
        let len = norm(&e);
        if len > 1e-12 {
            for ei in &mut e {
                *ei /= len;
            }
            return Ok(e);
        }
    }
    Err(SensitivityError::DegeneratePerturbation)
}

/// Second-order prediction of a quotient at `u = x + eps e`, where `x` is
/// the unit eigenvector of `lambda` and `e` a unit vector orthogonal to it:
///
/// * standard:   `lambda (1 + eps^2 e'(A/lambda - I)e)`
/// * harmonic:   `lambda (1 + eps^2 e'(A/lambda)(A/lambda - I)e)`
/// * target tau: `lambda (1 + eps^2 e'(A - tau I)(A/lambda - I)e / (lambda - tau))`
/// * homogeneous: `lambda + eps^2 lambda/(lambda^2+1) e'(A + I/lambda)(A - lambda I)e`
///
/// The residual against the actual quotient is `O(eps^4)`.
pub fn second_order_prediction(
    kind: QuotientKind,
    a: &dyn SymOperator,
    lambda: f64,
    e: &[f64],
    eps: f64,
) -> Result<f64, SensitivityError> {
    if a.dim() != e.len() {
        return Err(SensitivityError::DimensionMismatch);
    }
    let ae = a.apply_vec(e);
    let pe = dot(e, e);
    let we = dot(e, &ae);
    let qe = dot(&ae, &ae);
    let e2 = eps * eps;
    match kind {
        QuotientKind::Standard => {
            if lambda == 0.0 {
                return Err(SensitivityError::ZeroEigenvalue);
            }
            Ok(lambda * (1.0 + e2 * (we / lambda - pe)))
        }
        QuotientKind::Harmonic => {
            if lambda == 0.0 {
                return Err(SensitivityError::ZeroEigenvalue);
            }
            Ok(lambda * (1.0 + e2 * (qe / (lambda * lambda) - we / lambda)))
        }
        QuotientKind::HarmonicWithTarget(tau) => {
            if lambda == 0.0 {
                return Err(SensitivityError::ZeroEigenvalue);
            }
            if lambda == tau {
                return Err(SensitivityError::TargetEqualsEigenvalue);
            }
            let form = (qe / lambda - we - tau * (we / lambda - pe)) / (lambda - tau);
            Ok(lambda * (1.0 + e2 * form))
        }
        QuotientKind::Homogeneous => {
            if lambda == 0.0 {
                return Err(SensitivityError::ZeroEigenvalue);
            }
            let form = qe + (1.0 / lambda - lambda) * we - pe;
            Ok(lambda + e2 * lambda / (lambda * lambda + 1.0) * form)
        }
    }
}

/// Spectrum families of the perturbation experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `lambda_i ~ U(0, 2 sigma)`: positive definite.
    Uniform,
    /// `lambda_i ~ N(0, sigma^2)`: indefinite.
    Gaussian,
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Gaussian => "gaussian",
        }
    }
}

/// Aggregation mode: the per-eigenvalue maximum over many perturbations,
/// or every sample individually.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentMode {
    /// Keep only the worst relative error per (eigenvalue, kind).
    MaxError,
    /// Keep every (eigenvalue, kind, perturbation) sample.
    Scatter,
}

/// Configuration of one experiment cell.
#[derive(Clone, Copy, Debug)]
pub struct ExperimentConfig {
    pub family: Family,
    pub sigma: f64,
    /// Spectrum size; the protocol default is 100.
    pub n: usize,
    /// Perturbation magnitude; the protocol default is 1e-3.
    pub eps: f64,
    /// Perturbations drawn per eigenvalue (100 for max-error curves,
    /// 10 for scatter plots).
    pub perturbations: usize,
    pub mode: ExperimentMode,
    pub seed: u64,
}

impl ExperimentConfig {
    /// Max-error curve protocol: 100 perturbations per eigenvalue.
    pub fn max_error(family: Family, sigma: f64, seed: u64) -> Self {
        ExperimentConfig {
            family,
            sigma,
            n: 100,
            eps: 1e-3,
            perturbations: 100,
            mode: ExperimentMode::MaxError,
            seed,
        }
    }

    /// Scatter protocol: 10 perturbations per eigenvalue, all reported.
    pub fn scatter(family: Family, sigma: f64, seed: u64) -> Self {
        ExperimentConfig {
            family,
            sigma,
            n: 100,
            eps: 1e-3,
            perturbations: 10,
            mode: ExperimentMode::Scatter,
            seed,
        }
    }
}

/// The quotient kinds tabulated by the experiment, in report order.
pub const EXPERIMENT_KINDS: [QuotientKind; 3] =
    [QuotientKind::Standard, QuotientKind::Harmonic, QuotientKind::Homogeneous];

/// One experiment row.
#[derive(Clone, Copy, Debug)]
pub struct SampleRecord {
    pub family: Family,
    pub sigma: f64,
    pub n: usize,
    pub eps: f64,
    /// 0-based index into the sorted spectrum.
    pub eig_index: usize,
    pub lambda: f64,
    pub kind: QuotientKind,
    /// Perturbation id; in max-error mode, the id attaining the maximum.
    pub pert_id: usize,
    /// Quotient value (`f64::INFINITY` for an infinite harmonic quotient).
    pub value: f64,
    pub rel_error: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
}

// seed-splitting tags (part of the reproducibility contract)
const TAG_SPECTRUM: u64 = 0;
const TAG_PERTURBATION: u64 = 1;

/// Draw the spectrum for `cfg`, redrawing (bounded) while any gap is
/// below 1e-12 so every eigenvalue is numerically simple.
pub fn draw_spectrum(cfg: &ExperimentConfig) -> Vec<f64> {
    let root = derive(cfg.seed, TAG_SPECTRUM);
    for attempt in 0..128u64 {
        let mut rng = Rng::new(derive(root, attempt));
        let mut eigs: Vec<f64> = (0..cfg.n)
            .map(|_| match cfg.family {
                Family::Uniform => 2.0 * cfg.sigma * rng.next_f64(),
                Family::Gaussian => cfg.sigma * rng.next_normal(),
            })
            .collect();
        eigs.sort_by(|a, b| a.partial_cmp(b).expect("finite draws"));
        let simple = eigs.windows(2).all(|w| w[1] - w[0] > 1e-12)
            && eigs.iter().all(|&x| x != 0.0);
        if simple {
            return eigs;
        }
    }
    unreachable!("128 consecutive degenerate spectra")
}

/// Run the perturbation experiment for one `(family, sigma)` cell.
///
/// Records are emitted in canonical order (eigenvalue-major, then kind,
/// then perturbation id); every cell derives an independent stream from
/// the master seed, so the output is a pure function of `cfg`.
pub fn run_sensitivity_experiment(cfg: &ExperimentConfig) -> Vec<SampleRecord> {
    assert!(cfg.n >= 2, "the experiment needs at least two eigenvalues");
    assert!(cfg.eps > 0.0 && cfg.perturbations > 0);
    let eigs = draw_spectrum(cfg);
    let operator = Diagonal::new(eigs.clone());
    let pert_root = derive(cfg.seed, TAG_PERTURBATION);

    let mut records = Vec::new();
    let mut x = alloc::vec![0.0; cfg.n];
    for (j, &lambda) in eigs.iter().enumerate() {
        x.fill(0.0);
        x[j] = 1.0;
        let spectrum = SpectrumModel::new(eigs.clone(), j).expect("sorted spectrum");
        let bounds: Vec<BoundPair> = EXPERIMENT_KINDS
            .iter()
            .map(|&kind| asymptotic_bounds(kind, &spectrum, cfg.eps).expect("nonzero target"))
            .collect();

        // (value, rel_error) per kind per perturbation
        let mut samples: [Vec<(f64, f64)>; 3] =
            [Vec::new(), Vec::new(), Vec::new()];
        for pert in 0..cfg.perturbations {
            let seed = derive(derive(pert_root, j as u64), pert as u64);
            let e = make_orthogonal_perturbation(&x, seed).expect("unit basis vector");
            let u: Vec<f64> =
                x.iter().zip(&e).map(|(xi, ei)| xi + cfg.eps * ei).collect();
            let (th, hh, al) = three_quotients(&operator, &u);
            for (slot, value) in [th, hh, al].into_iter().enumerate() {
                let rel = math::abs(value - lambda) / math::abs(lambda);
                samples[slot].push((value, rel));
            }
        }

        for (slot, &kind) in EXPERIMENT_KINDS.iter().enumerate() {
            let bound = bounds[slot];
            match cfg.mode {
                ExperimentMode::Scatter => {
                    for (pert, &(value, rel)) in samples[slot].iter().enumerate() {
                        records.push(SampleRecord {
                            family: cfg.family,
                            sigma: cfg.sigma,
                            n: cfg.n,
                            eps: cfg.eps,
                            eig_index: j,
                            lambda,
                            kind,
                            pert_id: pert,
                            value,
                            rel_error: rel,
                            lower_bound: bound.lower,
                            upper_bound: bound.upper,
                        });
                    }
                }
                ExperimentMode::MaxError => {
                    let (pert, &(value, rel)) = samples[slot]
                        .iter()
                        .enumerate()
                        .max_by(|a, b| {
                            a.1 .1.partial_cmp(&b.1 .1).expect("finite or inf errors")
                        })
                        .expect("at least one perturbation");
                    records.push(SampleRecord {
                        family: cfg.family,
                        sigma: cfg.sigma,
                        n: cfg.n,
                        eps: cfg.eps,
                        eig_index: j,
                        lambda,
                        kind,
                        pert_id: pert,
                        value,
                        rel_error: rel,
                        lower_bound: bound.lower,
                        upper_bound: bound.upper,
                    });
                }
            }
        }
    }
    records
}

/// `(theta, theta~, alpha)` as plain floats (infinities collapsed).
fn three_quotients(a: &Diagonal, u: &[f64]) -> (f64, f64, f64) {
    let au = a.apply_vec(u);
    let g = Gram2 { p: dot(u, u), q: dot(&au, &au), w: dot(u, &au) };
    let theta = g.w / g.p;
    let harmonic = if g.w == 0.0 { f64::INFINITY } else { g.q / g.w };
    let alpha = match g.selected_ratio() {
        ExtendedReal::Finite(v) => v,
        ExtendedReal::Infinity => f64::INFINITY,
    };
    (theta, harmonic, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spectrum123(target: usize) -> SpectrumModel {
        SpectrumModel::new(vec![1.0, 2.0, 3.0], target).unwrap()
    }

    #[test]
    fn polynomial_rows() {
        assert_eq!(p_lambda(QuotientKind::Standard, 2.0, 5.0).unwrap(), 3.0);
        assert_eq!(p_lambda(QuotientKind::Harmonic, 2.0, 4.0).unwrap(), 4.0);
        // homogeneous roots at lambda and -1/lambda
        assert_eq!(p_lambda(QuotientKind::Homogeneous, 2.0, 2.0).unwrap(), 0.0);
        assert!(p_lambda(QuotientKind::Homogeneous, 2.0, -0.5).unwrap().abs() < 1e-15);
        assert_eq!(
            p_lambda(QuotientKind::Harmonic, 0.0, 1.0),
            Err(SensitivityError::ZeroEigenvalue)
        );
    }

    #[test]
    fn homogeneous_polynomial_antireciprocal_symmetry() {
        // p_lambda and p_{-1/lambda} agree up to sign, so the bounds
        // (which take absolute values) coincide
        for lambda in [0.3, -1.7, 2.5] {
            for t in [-2.0, 0.1, 0.9, 4.0] {
                let a = p_lambda(QuotientKind::Homogeneous, lambda, t).unwrap();
                let b = p_lambda(QuotientKind::Homogeneous, -1.0 / lambda, t).unwrap();
                assert!(
                    (a.abs() - b.abs()).abs() <= 1e-14 * a.abs().max(1.0),
                    "lambda {lambda} t {t}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn target_polynomial_matches_bound_form() {
        // (eps^2/|lambda|) |p| must equal eps^2 |(t-tau)(t-lambda)| / |lambda (lambda-tau)|
        let (lambda, tau, t) = (2.0, 0.5, 3.0);
        let p = p_lambda(QuotientKind::HarmonicWithTarget(tau), lambda, t).unwrap();
        let direct = (t - tau) * (t - lambda) / (lambda - tau);
        assert_eq!(p, direct);
    }

    #[test]
    fn bounds_on_three_point_spectrum() {
        let b = asymptotic_bounds(QuotientKind::Standard, &spectrum123(1), 1e-3).unwrap();
        // |p| = 1 at both neighbors: lower = upper = eps^2 / 2
        assert!((b.lower - 5e-7).abs() < 1e-20);
        assert!((b.upper - 5e-7).abs() < 1e-20);
    }

    #[test]
    fn homogeneous_lower_bound_zero_when_antireciprocal_in_spectrum() {
        // lambda = 2 and -1/2 both present: p_2 vanishes at -1/2
        let s = SpectrumModel::new(vec![-0.5, 1.0, 2.0], 2).unwrap();
        let b = asymptotic_bounds(QuotientKind::Homogeneous, &s, 1e-3).unwrap();
        assert_eq!(b.lower, 0.0);
        assert!(b.upper > 0.0);
    }

    #[test]
    fn single_eigenvalue_rejected() {
        let s = SpectrumModel::new(vec![2.0], 0).unwrap();
        assert_eq!(
            asymptotic_bounds(QuotientKind::Standard, &s, 1e-3),
            Err(SensitivityError::SingleEigenvalue)
        );
    }

    #[test]
    fn vertex_candidates_dominate_spectrum_maximum() {
        let eigs: Vec<f64> = (0..40).map(|i| 0.05 + 0.11 * i as f64).collect();
        for target in [0, 17, 39] {
            let s = SpectrumModel::new(eigs.clone(), target).unwrap();
            for kind in [QuotientKind::Standard, QuotientKind::Harmonic, QuotientKind::Homogeneous]
            {
                let cap = vertex_candidate_bound(kind, &s).unwrap();
                let max = s
                    .eigenvalues()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != target)
                    .map(|(_, &t)| p_lambda(kind, s.target(), t).unwrap().abs())
                    .fold(0.0_f64, f64::max);
                assert!(max <= cap + 1e-14, "{kind:?} target {target}: {max} > {cap}");
            }
        }
    }

    #[test]
    fn orthogonal_perturbation_contract() {
        let mut x = vec![0.0; 50];
        x[17] = 1.0;
        let e = make_orthogonal_perturbation(&x, 99).unwrap();
        assert!((norm(&e) - 1.0).abs() < 1e-12);
        assert!(dot(&e, &x).abs() < 1e-12);
        let again = make_orthogonal_perturbation(&x, 99).unwrap();
        assert_eq!(e, again);
        let other = make_orthogonal_perturbation(&x, 100).unwrap();
        assert_ne!(e, other);
    }

    #[test]
    fn orthogonal_perturbation_in_two_dimensions() {
        let e = make_orthogonal_perturbation(&[1.0, 0.0], 5).unwrap();
        assert!(e[0].abs() < 1e-12);
        assert!((e[1].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn perturbation_rejects_non_unit_base() {
        assert_eq!(
            make_orthogonal_perturbation(&[2.0, 0.0], 1),
            Err(SensitivityError::NotUnit)
        );
    }

    #[test]
    fn prediction_for_eigen_direction_perturbation() {
        // e along eigenvector i: standard prediction is lambda + eps^2 (lambda_i - lambda)
        let a = Diagonal::new(vec![1.0, 2.0, 5.0]);
        let lambda = 2.0;
        let e = [1.0, 0.0, 0.0];
        let eps = 1e-2;
        let pred =
            second_order_prediction(QuotientKind::Standard, &a, lambda, &e, eps).unwrap();
        assert!((pred - (lambda + eps * eps * (1.0 - lambda))).abs() < 1e-15);
        // homogeneous with e along the -1/lambda direction returns lambda exactly
        let a = Diagonal::new(vec![-0.5, 2.0, 5.0]);
        let pred =
            second_order_prediction(QuotientKind::Homogeneous, &a, lambda, &e, eps).unwrap();
        assert!((pred - lambda).abs() < 1e-15);
    }

    #[test]
    fn experiment_row_counts_and_determinism() {
        let cfg = ExperimentConfig {
            n: 12,
            perturbations: 4,
            ..ExperimentConfig::scatter(Family::Gaussian, 1.0, 42)
        };
        let records = run_sensitivity_experiment(&cfg);
        assert_eq!(records.len(), 12 * 4 * 3);
        let again = run_sensitivity_experiment(&cfg);
        for (a, b) in records.iter().zip(&again) {
            assert_eq!(a.value.to_bits(), b.value.to_bits());
            assert_eq!(a.rel_error.to_bits(), b.rel_error.to_bits());
        }
        // canonical order: eigenvalue-major, then kind, then perturbation
        assert_eq!(records[0].eig_index, 0);
        assert_eq!(records[0].kind, QuotientKind::Standard);
        assert_eq!(records[1].pert_id, 1);
        assert_eq!(records[4].kind, QuotientKind::Harmonic);
    }

    #[test]
    fn max_mode_emits_one_row_per_kind() {
        let cfg = ExperimentConfig {
            n: 10,
            perturbations: 7,
            ..ExperimentConfig::max_error(Family::Uniform, 0.5, 7)
        };
        let records = run_sensitivity_experiment(&cfg);
        assert_eq!(records.len(), 10 * 3);
        // the reported max dominates a scatter rerun of the same cell
        let scatter = run_sensitivity_experiment(&ExperimentConfig {
            mode: ExperimentMode::Scatter,
            ..cfg
        });
        for rec in &records {
            let all: Vec<f64> = scatter
                .iter()
                .filter(|r| r.eig_index == rec.eig_index && r.kind == rec.kind)
                .map(|r| r.rel_error)
                .collect();
            assert_eq!(all.len(), 7);
            let max = all.iter().copied().fold(0.0_f64, f64::max);
            assert_eq!(max, rec.rel_error);
        }
    }

    #[test]
    fn uniform_family_is_positive_definite() {
        let cfg = ExperimentConfig::scatter(Family::Uniform, 0.5, 3);
        let eigs = draw_spectrum(&cfg);
        assert_eq!(eigs.len(), 100);
        assert!(eigs[0] > 0.0);
        assert!(eigs.windows(2).all(|w| w[1] - w[0] > 1e-12));
    }
}
