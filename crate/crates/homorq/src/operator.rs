//! Matrix-free symmetric operators.
//!
//! Every quotient in this crate needs nothing more than `v -> Av`, so the
//! operator interface is the action alone. Dense and diagonal matrices are
//! provided; implicit operators plug in by implementing [`SymOperator`].

use alloc::vec::Vec;

use crate::linalg::dot;
use crate::rng::Rng;

/// A symmetric linear operator given by its action.
pub trait SymOperator {
    fn dim(&self) -> usize;

    /// `out = A v`. Implementations may assume `v.len() == out.len() == dim`.
    fn apply(&self, v: &[f64], out: &mut [f64]);

    /// `A v` as a fresh vector.
    fn apply_vec(&self, v: &[f64]) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.dim()];
        self.apply(v, &mut out);
        out
    }
}

impl<T: SymOperator + ?Sized> SymOperator for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn apply(&self, v: &[f64], out: &mut [f64]) {
        (**self).apply(v, out)
    }
}

/// Dense symmetric matrix in row-major storage.
#[derive(Clone, Debug)]
pub struct DenseSymmetric {
    n: usize,
    data: Vec<f64>,
}

impl DenseSymmetric {
    /// Build from row-major entries, verifying symmetry.
    ///
    /// Entries must satisfy `|a_ij - a_ji| <= 1e-12 * max|a|`; asymmetric
    /// input is rejected rather than silently symmetrized.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self, OperatorError> {
        if n == 0 || data.len() != n * n {
            return Err(OperatorError::BadShape { dim: n, len: data.len() });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(OperatorError::NonFiniteEntry);
        }
        let scale = data.iter().fold(0.0_f64, |m, x| m.max(crate::math::abs(*x)));
        let tol = 1e-12 * scale;
        for i in 0..n {
            for j in (i + 1)..n {
                if crate::math::abs(data[i * n + j] - data[j * n + i]) > tol {
                    return Err(OperatorError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(DenseSymmetric { n, data })
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }
}

impl SymOperator for DenseSymmetric {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = dot(&self.data[i * self.n..(i + 1) * self.n], v);
        }
    }
}

/// Diagonal operator; the substrate of all spectrum-controlled experiments.
#[derive(Clone, Debug)]
pub struct Diagonal {
    d: Vec<f64>,
}

impl Diagonal {
    pub fn new(d: Vec<f64>) -> Self {
        Diagonal { d }
    }

    pub fn entries(&self) -> &[f64] {
        &self.d
    }
}

impl SymOperator for Diagonal {
    fn dim(&self) -> usize {
        self.d.len()
    }

    fn apply(&self, v: &[f64], out: &mut [f64]) {
        for ((o, di), vi) in out.iter_mut().zip(&self.d).zip(v) {
            *o = di * vi;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OperatorError {
    #[error("dense matrix of dim {dim} needs dim^2 entries, got {len}")]
    BadShape { dim: usize, len: usize },
    #[error("matrix entry ({row}, {col}) breaks symmetry")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix contains a non-finite entry")]
    NonFiniteEntry,
}

/// Spot-check of symmetry on seeded random vectors.
///
/// Returns the largest observed `|<Av, w> - <v, Aw>| / (||Av|| ||w||)`;
/// a faithful symmetric operator stays below ~1e-12.
pub fn symmetry_defect(op: &dyn SymOperator, seed: u64, trials: usize) -> f64 {
    let n = op.dim();
    let mut rng = Rng::new(seed);
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let mut v = alloc::vec![0.0; n];
        let mut w = alloc::vec![0.0; n];
        rng.fill_normal(&mut v);
        rng.fill_normal(&mut w);
        let av = op.apply_vec(&v);
        let aw = op.apply_vec(&w);
        let denom = crate::linalg::norm(&av) * crate::linalg::norm(&w);
        if denom > 0.0 {
            worst = worst.max(crate::math::abs(dot(&av, &w) - dot(&v, &aw)) / denom);
        }
    }
    worst
}

/// Spot-check of positive definiteness on seeded random vectors.
///
/// Returns the smallest observed Rayleigh quotient `v'Bv / v'v`; positive
/// values are consistent with (but do not prove) definiteness.
pub fn definiteness_spot_check(op: &dyn SymOperator, seed: u64, trials: usize) -> f64 {
    let n = op.dim();
    let mut rng = Rng::new(seed);
    let mut least = f64::INFINITY;
    for _ in 0..trials {
        let mut v = alloc::vec![0.0; n];
        rng.fill_normal(&mut v);
        let vv = dot(&v, &v);
        if vv > 0.0 {
            least = least.min(dot(&op.apply_vec(&v), &v) / vv);
        }
    }
    least
}
