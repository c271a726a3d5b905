//! Shared helpers for integration tests: seeded random operators and
//! vectors, and a brute-force singular-direction oracle via nalgebra.

#![allow(dead_code)]

use homorq::operator::DenseSymmetric;
use homorq::rng::Rng;
use nalgebra::DMatrix;

/// Random dense symmetric matrix with entries of size O(1).
pub fn random_symmetric(rng: &mut Rng, n: usize) -> DenseSymmetric {
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let v = rng.next_normal();
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    DenseSymmetric::new(n, data).expect("symmetric by construction")
}

/// Random symmetric positive definite matrix `R'R + 0.1 I`.
pub fn random_spd(rng: &mut Rng, n: usize) -> DenseSymmetric {
    let r = DMatrix::from_fn(n, n, |_, _| rng.next_normal() / (n as f64).sqrt());
    let spd = r.transpose() * &r + DMatrix::identity(n, n) * 0.1;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            // exact symmetry, entry by entry
            data[i * n + j] = 0.5 * (spd[(i, j)] + spd[(j, i)]);
        }
    }
    DenseSymmetric::new(n, data).expect("symmetrized")
}

pub fn random_vector(rng: &mut Rng, n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    rng.fill_normal(&mut v);
    v
}

/// Brute-force minimizer of `||a1 b - a2 c||` over the unit circle:
/// the right singular direction of `C = [b  -c]` for the smallest
/// singular value, computed by nalgebra's dense SVD. Returns
/// `(ratio a1/a2, smallest singular value squared)`; the ratio is
/// `None` when `a2 = 0`.
pub fn svd_minimizer_oracle(b: &[f64], c: &[f64]) -> (Option<f64>, f64) {
    let n = b.len();
    let m = DMatrix::from_fn(n, 2, |i, j| if j == 0 { b[i] } else { -c[i] });
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let (mut idx, mut smallest) = (0usize, f64::INFINITY);
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s < smallest {
            smallest = *s;
            idx = i;
        }
    }
    let a1 = vt[(idx, 0)];
    let a2 = vt[(idx, 1)];
    let ratio = if a2 == 0.0 { None } else { Some(a1 / a2) };
    (ratio, smallest * smallest)
}

/// Smallest root of the characteristic polynomial of
/// `[[p, -w], [-w, q]]`, as an independent route to `mu`.
pub fn charpoly_smallest_eigenvalue(p: f64, q: f64, w: f64) -> f64 {
    let tr = p + q;
    let det = p * q - w * w;
    0.5 * (tr - (tr * tr - 4.0 * det).sqrt())
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}
