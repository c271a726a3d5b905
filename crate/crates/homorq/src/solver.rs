//! Gradient method with nonmonotone line search and spectral stepsizes.
//!
//! The iteration is `x_{k+1} = x_k - nu_k g_k`, where `nu_k` starts from
//! the rule's stepsize `beta_k` and backtracks until the nonmonotone
//! sufficient-decrease test
//!
//! ```text
//!   f(x_k - nu g_k) <= max{ f(x_{k-j}) : 0 <= j < min(k+1, M) }
//!                      - c_ls nu ||g_k||^2
//! ```
//!
//! holds. The next stepsize comes from the configured rule (BB1, BB2,
//! HBB, ABB, AHBB); when the secant pair has negative curvature
//! (`s'y < 0`, an uphill direction) or the rule is undefined, the
//! fallback `max(min(1/||g||, 1e5), 1)` is used instead, and the result
//! is always clamped to `[beta_min, beta_max]`. Iteration stops when
//! `||g_k|| <= tol ||g_0||`.
//!
//! On strictly convex quadratics the line search can be disabled: the raw
//! stepsizes already yield convergence, and with the HBB rule the inverse
//! stepsize stays inside the spectrum of the Hessian.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::linalg::{dot, norm};
use crate::problems::Problem;
use crate::stepsize::{bb1_from_grams, bb2_from_grams, hbb_from_grams, AdaptiveState};

/// Stepsize rule selected for line 9 of the iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepRule {
    Bb1,
    Bb2,
    Hbb,
    Abb,
    Ahbb,
}

impl StepRule {
    pub const ALL: [StepRule; 5] = [
        StepRule::Bb1,
        StepRule::Bb2,
        StepRule::Abb,
        StepRule::Hbb,
        StepRule::Ahbb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StepRule::Bb1 => "BB1",
            StepRule::Bb2 => "BB2",
            StepRule::Hbb => "HBB",
            StepRule::Abb => "ABB",
            StepRule::Ahbb => "AHBB",
        }
    }
}

impl core::fmt::Display for StepRule {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for StepRule {
    type Err = &'static str;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "BB1" => Ok(StepRule::Bb1),
            "BB2" => Ok(StepRule::Bb2),
            "HBB" => Ok(StepRule::Hbb),
            "ABB" => Ok(StepRule::Abb),
            "AHBB" => Ok(StepRule::Ahbb),
            _ => Err("expected one of BB1, BB2, HBB, ABB, AHBB"),
        }
    }
}

/// Solver parameters. `Default` gives the standard configuration:
/// `beta0 = 1`, safeguards `[1e-30, 1e30]`, `c_ls = 1e-4`,
/// `sigma_ls = 1/2`, memory `M = 10`, `tol = 1e-6`, `max_iter = 5e4`,
/// adaptive parameters `eta = 0.8`, `m = 5`.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub beta0: f64,
    pub beta_min: f64,
    pub beta_max: f64,
    pub c_ls: f64,
    pub sigma_ls: f64,
    /// Nonmonotone memory `M` (number of stored objective values).
    pub memory: usize,
    /// Relative gradient tolerance.
    pub tol: f64,
    pub max_iter: usize,
    pub rule: StepRule,
    /// Adaptive trigger threshold in `(0, 1)`.
    pub eta: f64,
    /// Adaptive window length parameter (window capacity is `m + 1`).
    pub m: usize,
    /// Disable for strictly convex quadratics; `nu_k = beta_k` then.
    pub line_search: bool,
    /// Record a per-iteration trace in the run record.
    pub trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            beta0: 1.0,
            beta_min: 1e-30,
            beta_max: 1e30,
            c_ls: 1e-4,
            sigma_ls: 0.5,
            memory: 10,
            tol: 1e-6,
            max_iter: 50_000,
            rule: StepRule::Hbb,
            eta: 0.8,
            m: 5,
            line_search: true,
            trace: false,
        }
    }
}

impl SolverConfig {
    pub fn with_rule(rule: StepRule) -> Self {
        SolverConfig { rule, ..SolverConfig::default() }
    }

    fn validate(&self) -> Result<(), SolverError> {
        let ok = self.beta0 > 0.0
            && self.beta0.is_finite()
            && self.beta_min > 0.0
            && self.beta_max > self.beta_min
            && (0.0..1.0).contains(&self.c_ls)
            && self.c_ls > 0.0
            && self.sigma_ls > 0.0
            && self.sigma_ls < 1.0
            && self.memory >= 1
            && self.tol > 0.0
            && self.max_iter >= 1
            && self.eta > 0.0
            && self.eta < 1.0;
        if ok {
            Ok(())
        } else {
            Err(SolverError::InvalidConfig("solver configuration out of range"))
        }
    }
}

/// One trace entry per accepted iteration.
#[derive(Clone, Copy, Debug)]
pub struct TraceRow {
    /// Iteration index (0-based).
    pub k: usize,
    /// Accepted objective value `f(x_{k+1})`; NaN when the line search is
    /// disabled (the objective is then never evaluated in the loop).
    pub f: f64,
    /// New gradient norm `||g_{k+1}||`.
    pub gnorm: f64,
    /// Stepsize `beta_k` offered to iteration `k` (after clamping,
    /// before any backtracking).
    pub beta: f64,
    /// Number of backtracking halvings taken at iteration `k`.
    pub backtracks: usize,
}

/// Telemetry of one solve.
#[derive(Clone, Debug)]
pub struct RunRecord {
    /// Accepted steps taken.
    pub iterations: usize,
    /// Objective evaluations, every line-search trial and the start point
    /// included.
    pub nfe: usize,
    /// Gradient evaluations.
    pub nge: usize,
    pub final_gnorm: f64,
    pub f_final: f64,
    /// True when `||g|| <= tol ||g0||` was reached within `max_iter`.
    pub converged: bool,
    pub x_final: Vec<f64>,
    pub trace: Option<Vec<TraceRow>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("{what} became non-finite at iteration {iteration}")]
    NonFinite { what: &'static str, iteration: usize },
    #[error("line search stalled at iteration {iteration} (60 halvings)")]
    LineSearchStalled { iteration: usize },
}

const BACKTRACK_CAP: usize = 60;
const UPHILL_CAP: f64 = 1e5;

/// Minimize `problem` with the configured gradient method.
pub fn minimize(problem: &Problem, config: &SolverConfig) -> Result<RunRecord, SolverError> {
    config.validate()?;
    let n = problem.dim();

    let mut x = problem.start().to_vec();
    let mut g = problem.grad(&x);
    let mut nge = 1usize;
    let mut nfe = 0usize;
    let g0_norm = norm(&g);
    if !g0_norm.is_finite() {
        return Err(SolverError::NonFinite { what: "initial gradient", iteration: 0 });
    }
    let threshold = config.tol * g0_norm;

    let mut window: VecDeque<f64> = VecDeque::with_capacity(config.memory + 1);
    let mut f_x = f64::NAN;
    if config.line_search {
        f_x = problem.f(&x);
        nfe += 1;
        if !f_x.is_finite() {
            return Err(SolverError::NonFinite { what: "initial objective", iteration: 0 });
        }
        window.push_back(f_x);
    }

    let mut trace: Option<Vec<TraceRow>> = config.trace.then(Vec::new);
    let mut adaptive = AdaptiveState::new(config.eta, config.m);
    let mut beta = config.beta0;
    let mut gnorm = g0_norm;
    let mut converged = gnorm <= threshold;
    let mut iterations = 0usize;

    let mut x_new = alloc::vec![0.0; n];
    let mut g_new = alloc::vec![0.0; n];

    for k in 0..config.max_iter {
        if converged {
            break;
        }
        let mut nu = beta;
        let mut backtracks = 0usize;
        if config.line_search {
            let f_ref = window.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            loop {
                step(&x, nu, &g, &mut x_new);
                let f_trial = problem.f(&x_new);
                nfe += 1;
                if f_trial.is_nan() || f_trial == f64::NEG_INFINITY {
                    return Err(SolverError::NonFinite { what: "objective", iteration: k });
                }
                // an overflowed trial (+inf) fails this test and backtracks
                if f_trial <= f_ref - config.c_ls * nu * gnorm * gnorm {
                    f_x = f_trial;
                    break;
                }
                nu *= config.sigma_ls;
                backtracks += 1;
                if backtracks > BACKTRACK_CAP {
                    return Err(SolverError::LineSearchStalled { iteration: k });
                }
            }
            window.push_back(f_x);
            if window.len() > config.memory {
                window.pop_front();
            }
        } else {
            step(&x, nu, &g, &mut x_new);
        }

        problem.grad_into(&x_new, &mut g_new);
        nge += 1;
        iterations = k + 1;
        let gnorm_new = norm(&g_new);
        if !gnorm_new.is_finite() {
            return Err(SolverError::NonFinite { what: "gradient", iteration: k });
        }

        if let Some(rows) = trace.as_mut() {
            rows.push(TraceRow { k, f: f_x, gnorm: gnorm_new, beta, backtracks });
        }

        if gnorm_new <= threshold {
            converged = true;
        } else {
            // secant pair: s = x_{k+1} - x_k = -nu g_k, y = g_{k+1} - g_k
            let ss = nu * nu * gnorm * gnorm;
            let sy = -nu * (dot(&g, &g_new) - gnorm * gnorm);
            let yy: f64 =
                g.iter().zip(&g_new).map(|(a, b)| (b - a) * (b - a)).sum();

            // s'y < 0 is an uphill direction; s'y = 0 leaves every rule
            // undefined (or zero, for BB2). Both take the fallback.
            let raw = if sy <= 0.0 {
                uphill_fallback(gnorm_new)
            } else {
                let rule_value = match config.rule {
                    StepRule::Bb1 => bb1_from_grams(ss, sy),
                    StepRule::Bb2 => bb2_from_grams(sy, yy),
                    StepRule::Hbb => hbb_from_grams(ss, sy, yy),
                    StepRule::Abb => match (bb1_from_grams(ss, sy), bb2_from_grams(sy, yy)) {
                        (Some(b1), Some(b2)) => Some(adaptive.abb(b1, b2)),
                        _ => None,
                    },
                    StepRule::Ahbb => match (
                        bb1_from_grams(ss, sy),
                        bb2_from_grams(sy, yy),
                        hbb_from_grams(ss, sy, yy),
                    ) {
                        (Some(b1), Some(b2), Some(bh)) => Some(adaptive.ahbb(b1, b2, bh)),
                        _ => None,
                    },
                };
                rule_value.unwrap_or_else(|| uphill_fallback(gnorm_new))
            };
            beta = raw.clamp(config.beta_min, config.beta_max);
        }

        core::mem::swap(&mut x, &mut x_new);
        core::mem::swap(&mut g, &mut g_new);
        gnorm = gnorm_new;
    }

    if !config.line_search {
        // one evaluation for the record; the loop itself never needs f
        f_x = problem.f(&x);
        nfe += 1;
    }

    Ok(RunRecord {
        iterations,
        nfe,
        nge,
        final_gnorm: gnorm,
        f_final: f_x,
        converged,
        x_final: x,
        trace,
    })
}

#[inline]
fn step(x: &[f64], nu: f64, g: &[f64], out: &mut [f64]) {
    for ((o, xi), gi) in out.iter_mut().zip(x).zip(g) {
        *o = xi - nu * gi;
    }
}

/// Replacement stepsize for uphill or undefined secant data.
#[inline]
fn uphill_fallback(gnorm_new: f64) -> f64 {
    (1.0 / gnorm_new).min(UPHILL_CAP).max(1.0)
}

/// Objective-evaluation count reconstructed from a trace: the initial
/// evaluation plus one trial per iteration per backtrack level. Valid for
/// runs with the line search enabled.
pub fn nfe_from_trace(trace: &[TraceRow]) -> usize {
    1 + trace.iter().map(|row| 1 + row.backtracks).sum::<usize>()
}
