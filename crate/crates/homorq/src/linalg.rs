//! Small dense vector kernels shared across the crate.

use alloc::vec::Vec;

use crate::math;

/// Euclidean inner product. Panics if the lengths differ.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Euclidean norm.
#[inline]
pub fn norm(v: &[f64]) -> f64 {
    math::sqrt(dot(v, v))
}

/// `out = a x + y`, elementwise. Panics if the lengths differ.
#[inline]
pub fn axpy(a: f64, x: &[f64], y: &[f64], out: &mut [f64]) {
    assert_eq!(x.len(), y.len(), "axpy: length mismatch");
    assert_eq!(x.len(), out.len(), "axpy: length mismatch");
    for ((o, xi), yi) in out.iter_mut().zip(x).zip(y) {
        *o = a * xi + yi;
    }
}

/// `a x + y` as a fresh vector.
#[inline]
pub fn axpy_vec(a: f64, x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = alloc::vec![0.0; x.len()];
    axpy(a, x, y, &mut out);
    out
}
