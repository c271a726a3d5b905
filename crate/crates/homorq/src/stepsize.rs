//! Spectral steplengths for gradient methods.
//!
//! With `s = x_k - x_{k-1}` and `y = g_k - g_{k-1}`, the mean-value
//! relation `y = H s` holds for an average Hessian `H` that is never
//! formed; every rule here is a function of the three inner products
//! `s's`, `s'y`, `y'y` alone.
//!
//! * `bb1 = s's / s'y` and `bb2 = s'y / y'y` are the Barzilai-Borwein
//!   steps — the inverse Rayleigh and inverse harmonic Rayleigh quotients
//!   of `H` at `s`.
//! * `hbb` is the inverse homogeneous Rayleigh quotient
//!   `[s's - y'y + sqrt((s's - y'y)^2 + 4 (s'y)^2)] / (2 s'y)`;
//!   for `s'y > 0` it lies in `[bb2, bb1]`, and `1/hbb` solves the
//!   homogeneous quadratic for the pair `(s, y)`.
//! * `abb`/`ahbb` switch between `bb1` and the minimum of a short history
//!   of `bb2`/`hbb` values when the ratio test `bb2 < eta * bb1` signals
//!   ill conditioning.
//!
//! Undefined steps (vanishing denominators) return `None`; the recovery
//! policy lives in the solver, which substitutes its uphill fallback.

use alloc::collections::VecDeque;

use crate::linalg::dot;
use crate::math;

/// Barzilai-Borwein step `s's / s'y`; `None` when `s'y = 0`.
pub fn bb1(s: &[f64], y: &[f64]) -> Option<f64> {
    bb1_from_grams(dot(s, s), dot(s, y))
}

/// Barzilai-Borwein step `s'y / y'y`; `None` when `y = 0`.
pub fn bb2(s: &[f64], y: &[f64]) -> Option<f64> {
    bb2_from_grams(dot(s, y), dot(y, y))
}

/// Homogeneous step; `None` when `s'y = 0`.
pub fn hbb(s: &[f64], y: &[f64]) -> Option<f64> {
    hbb_from_grams(dot(s, s), dot(s, y), dot(y, y))
}

/// [`bb1`] from precomputed inner products.
#[inline]
pub fn bb1_from_grams(ss: f64, sy: f64) -> Option<f64> {
    (sy != 0.0).then(|| ss / sy)
}

/// [`bb2`] from precomputed inner products.
#[inline]
pub fn bb2_from_grams(sy: f64, yy: f64) -> Option<f64> {
    (yy != 0.0).then(|| sy / yy)
}

/// [`hbb`] from precomputed inner products.
///
/// The quadratic branch is chosen so no subtraction cancels: with
/// `d = s's - y'y`, the step is `(d + sqrt(d^2 + 4 (s'y)^2)) / (2 s'y)`
/// for `d >= 0` and the algebraically equal
/// `2 s'y / (sqrt(d^2 + 4 (s'y)^2) - d)` otherwise.
#[inline]
pub fn hbb_from_grams(ss: f64, sy: f64, yy: f64) -> Option<f64> {
    if sy == 0.0 {
        return None;
    }
    let d = ss - yy;
    let disc = math::hypot(d, 2.0 * sy);
    Some(if d >= 0.0 { (d + disc) / (2.0 * sy) } else { 2.0 * sy / (disc - d) })
}

/// Histories and parameters for the adaptive rules.
///
/// Each window is a ring buffer of capacity `m + 1`: the values
/// `beta_j` for `j = max(1, k - m), ..., k`, the current step included,
/// oldest evicted first.
#[derive(Clone, Debug)]
pub struct AdaptiveState {
    bb2_history: VecDeque<f64>,
    hbb_history: VecDeque<f64>,
    eta: f64,
    m: usize,
}

impl Default for AdaptiveState {
    /// Default parameters `eta = 0.8`, `m = 5`.
    fn default() -> Self {
        AdaptiveState::new(0.8, 5)
    }
}

impl AdaptiveState {
    /// Panics unless `0 < eta < 1`.
    pub fn new(eta: f64, m: usize) -> Self {
        assert!(eta > 0.0 && eta < 1.0, "eta must be in (0, 1), got {eta}");
        AdaptiveState {
            bb2_history: VecDeque::with_capacity(m + 2),
            hbb_history: VecDeque::with_capacity(m + 2),
            eta,
            m,
        }
    }

    fn push(history: &mut VecDeque<f64>, value: f64, m: usize) {
        history.push_back(value);
        if history.len() > m + 1 {
            history.pop_front();
        }
    }

    /// Adaptive BB step: records `bb2_k`, then returns the window minimum
    /// of BB2 values if `bb2_k < eta * bb1_k`, else `bb1_k`.
    pub fn abb(&mut self, bb1_k: f64, bb2_k: f64) -> f64 {
        Self::push(&mut self.bb2_history, bb2_k, self.m);
        if bb2_k < self.eta * bb1_k {
            self.bb2_history.iter().copied().fold(f64::INFINITY, f64::min)
        } else {
            bb1_k
        }
    }

    /// Adaptive homogeneous step: records `hbb_k`; same trigger as
    /// [`AdaptiveState::abb`] but the minimum runs over the HBB window.
    pub fn ahbb(&mut self, bb1_k: f64, bb2_k: f64, hbb_k: f64) -> f64 {
        Self::push(&mut self.hbb_history, hbb_k, self.m);
        if bb2_k < self.eta * bb1_k {
            self.hbb_history.iter().copied().fold(f64::INFINITY, f64::min)
        } else {
            bb1_k
        }
    }

    pub fn bb2_window(&self) -> impl Iterator<Item = f64> + '_ {
        self.bb2_history.iter().copied()
    }

    pub fn hbb_window(&self) -> impl Iterator<Item = f64> + '_ {
        self.hbb_history.iter().copied()
    }
}
