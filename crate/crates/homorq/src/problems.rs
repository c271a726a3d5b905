//! Unconstrained test problems with analytic gradients.
//!
//! Fourteen dimension-parametric problems from the classical collections,
//! each with its standard start point. Three of them (Extended Powell,
//! Generalized Rosenbrock, Generalized White & Holst) are normalized by
//! the Euclidean norm of the gradient at the start point, so the scaled
//! problems satisfy `||grad f(x0)|| = 1` exactly.
//!
//! Transcriptions are guarded by [`gradient_check`]: every registered
//! problem must pass a central finite-difference test at the start point
//! and at random points (see the crate tests). The check, not the
//! transcription, is the source of trust.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::linalg::norm;
use crate::math;

type Objective = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type Gradient = Box<dyn Fn(&[f64], &mut [f64]) + Send + Sync>;

/// An unconstrained objective with analytic gradient and start point.
pub struct Problem {
    name: String,
    dim: usize,
    start: Vec<f64>,
    objective: Objective,
    gradient: Gradient,
}

impl Problem {
    /// Panics if `start.len() != dim`.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        start: Vec<f64>,
        objective: Objective,
        gradient: Gradient,
    ) -> Self {
        assert_eq!(start.len(), dim, "start point does not match dim");
        Problem { name: name.into(), dim, start, objective, gradient }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn start(&self) -> &[f64] {
        &self.start
    }

    /// Objective value.
    pub fn f(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    /// Gradient, written into `out`.
    pub fn grad_into(&self, x: &[f64], out: &mut [f64]) {
        (self.gradient)(x, out)
    }

    /// Gradient as a fresh vector.
    pub fn grad(&self, x: &[f64]) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.dim];
        self.grad_into(x, &mut out);
        out
    }

    /// Divide objective and gradient by `||grad f(x0)||` of the unscaled
    /// problem. After scaling, the start gradient has unit norm.
    pub fn scaled_by_start_gradient(self) -> Problem {
        let c = norm(&self.grad(&self.start));
        assert!(c > 0.0 && c.is_finite(), "cannot scale: ||g0|| = {c}");
        let Problem { name, dim, start, objective, gradient } = self;
        Problem {
            name,
            dim,
            start,
            objective: Box::new(move |x| objective(x) / c),
            gradient: Box::new(move |x, out| {
                gradient(x, out);
                for g in out {
                    *g /= c;
                }
            }),
        }
    }
}

impl core::fmt::Debug for Problem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Problem").field("name", &self.name).field("dim", &self.dim).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProblemError {
    #[error("problem {name} needs dim divisible by {block}, got {dim}")]
    UnsupportedDimension { name: &'static str, block: usize, dim: usize },
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
}

/// A constructor entry in the problem registry.
pub struct ProblemSpec {
    /// Canonical collection name.
    pub name: &'static str,
    /// Short names accepted by lookups (benchmark-table style).
    pub aliases: &'static [&'static str],
    /// Dimension must be divisible by this.
    pub block: usize,
    /// Whether the problem is normalized by `||grad f(x0)||`.
    pub scaled: bool,
    build: fn(usize) -> Problem,
}

impl core::fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("block", &self.block)
            .field("scaled", &self.scaled)
            .finish()
    }
}

impl ProblemSpec {
    /// Build the problem at dimension `n`, applying the scaling rule.
    pub fn build(&self, n: usize) -> Result<Problem, ProblemError> {
        if n == 0 || n % self.block != 0 {
            return Err(ProblemError::UnsupportedDimension {
                name: self.name,
                block: self.block,
                dim: n,
            });
        }
        let p = (self.build)(n);
        Ok(if self.scaled { p.scaled_by_start_gradient() } else { p })
    }
}

/// All registered problems, in canonical order.
pub fn registry() -> &'static [ProblemSpec] {
    &REGISTRY
}

/// Look a problem up by name (case-insensitive, punctuation ignored) and
/// build it at dimension `n`.
pub fn by_name(name: &str, n: usize) -> Result<Problem, ProblemError> {
    let wanted = normalize(name);
    for spec in registry() {
        if normalize(spec.name) == wanted || spec.aliases.iter().any(|a| normalize(a) == wanted) {
            return spec.build(n);
        }
    }
    Err(ProblemError::UnknownProblem(String::from(name)))
}

fn normalize(s: &str) -> String {
    s.chars().filter(|c| c.is_ascii_alphanumeric()).map(|c| c.to_ascii_lowercase()).collect()
}

/// Max central-difference discrepancy of the gradient at `x`:
/// `max_i |(f(x + h e_i) - f(x - h e_i)) / 2h - g_i| / (1 + |g_i|)`.
pub fn gradient_check(p: &Problem, x: &[f64], h: f64) -> f64 {
    assert!(h > 0.0);
    let g = p.grad(x);
    let mut xp = x.to_vec();
    let mut worst = 0.0_f64;
    for i in 0..x.len() {
        let xi = xp[i];
        xp[i] = xi + h;
        let fp = p.f(&xp);
        xp[i] = xi - h;
        let fm = p.f(&xp);
        xp[i] = xi;
        let fd = (fp - fm) / (2.0 * h);
        worst = worst.max(math::abs(fd - g[i]) / (1.0 + math::abs(g[i])));
    }
    worst
}

// ---------------------------------------------------------------------
// problem definitions
// ---------------------------------------------------------------------

static REGISTRY: [ProblemSpec; 14] = [
    ProblemSpec { name: "Diagonal 1", aliases: &["diag1"], block: 1, scaled: false, build: diagonal1 },
    ProblemSpec { name: "Diagonal 2", aliases: &["diag2"], block: 1, scaled: false, build: diagonal2 },
    ProblemSpec { name: "Diagonal 3", aliases: &["diag3"], block: 1, scaled: false, build: diagonal3 },
    ProblemSpec { name: "Extended Beale", aliases: &["ext beale"], block: 2, scaled: false, build: ext_beale },
    ProblemSpec { name: "Extended Powell", aliases: &["ext powell"], block: 4, scaled: true, build: ext_powell },
    ProblemSpec { name: "Extended Rosenbrock", aliases: &["ext rosen"], block: 2, scaled: false, build: ext_rosenbrock },
    ProblemSpec { name: "Extended White and Holst", aliases: &["ext wh"], block: 2, scaled: false, build: ext_white_holst },
    ProblemSpec { name: "Full Hessian FH1", aliases: &["fh1"], block: 1, scaled: false, build: fh1 },
    ProblemSpec { name: "Full Hessian FH2", aliases: &["fh2"], block: 1, scaled: false, build: fh2 },
    ProblemSpec { name: "Generalized Rosenbrock", aliases: &["gen rosen"], block: 2, scaled: true, build: gen_rosenbrock },
    ProblemSpec { name: "Generalized White and Holst", aliases: &["gen wh"], block: 2, scaled: true, build: gen_white_holst },
    ProblemSpec { name: "Hager", aliases: &[], block: 1, scaled: false, build: hager },
    ProblemSpec { name: "Perturbed quadratic", aliases: &["pert quad"], block: 1, scaled: false, build: perturbed_quadratic },
    ProblemSpec { name: "Strictly Convex 2", aliases: &["s conv 2", "sconv2"], block: 1, scaled: false, build: strictly_convex2 },
];

/// `sum exp(x_i) - i x_i`, start `(1/n, ..., 1/n)`.
fn diagonal1(n: usize) -> Problem {
    Problem::new(
        "Diagonal 1",
        n,
        alloc::vec![1.0 / n as f64; n],
        Box::new(|x| {
            x.iter().enumerate().map(|(i, &xi)| math::exp(xi) - (i + 1) as f64 * xi).sum()
        }),
        Box::new(|x, out| {
            for (i, (g, &xi)) in out.iter_mut().zip(x).enumerate() {
                *g = math::exp(xi) - (i + 1) as f64;
            }
        }),
    )
}

/// `sum exp(x_i) - x_i / i`, start `(1, 1/2, ..., 1/n)`.
fn diagonal2(n: usize) -> Problem {
    Problem::new(
        "Diagonal 2",
        n,
        (1..=n).map(|i| 1.0 / i as f64).collect(),
        Box::new(|x| {
            x.iter().enumerate().map(|(i, &xi)| math::exp(xi) - xi / (i + 1) as f64).sum()
        }),
        Box::new(|x, out| {
            for (i, (g, &xi)) in out.iter_mut().zip(x).enumerate() {
                *g = math::exp(xi) - 1.0 / (i + 1) as f64;
            }
        }),
    )
}

/// `sum exp(x_i) - i sin(x_i)`, start `(1, ..., 1)`.
fn diagonal3(n: usize) -> Problem {
    Problem::new(
        "Diagonal 3",
        n,
        alloc::vec![1.0; n],
        Box::new(|x| {
            x.iter().enumerate().map(|(i, &xi)| math::exp(xi) - (i + 1) as f64 * math::sin(xi)).sum()
        }),
        Box::new(|x, out| {
            for (i, (g, &xi)) in out.iter_mut().zip(x).enumerate() {
                *g = math::exp(xi) - (i + 1) as f64 * math::cos(xi);
            }
        }),
    )
}

/// Beale's function on independent variable pairs, start `(1, 0.8, ...)`.
fn ext_beale(n: usize) -> Problem {
    Problem::new(
        "Extended Beale",
        n,
        (0..n).map(|i| if i % 2 == 0 { 1.0 } else { 0.8 }).collect(),
        Box::new(|x| {
            x.chunks_exact(2)
                .map(|ab| {
                    let (a, b) = (ab[0], ab[1]);
                    let r1 = 1.5 - a * (1.0 - b);
                    let r2 = 2.25 - a * (1.0 - b * b);
                    let r3 = 2.625 - a * (1.0 - b * b * b);
                    r1 * r1 + r2 * r2 + r3 * r3
                })
                .sum()
        }),
        Box::new(|x, out| {
            for (ab, g) in x.chunks_exact(2).zip(out.chunks_exact_mut(2)) {
                let (a, b) = (ab[0], ab[1]);
                let r1 = 1.5 - a * (1.0 - b);
                let r2 = 2.25 - a * (1.0 - b * b);
                let r3 = 2.625 - a * (1.0 - b * b * b);
                g[0] = -2.0 * (r1 * (1.0 - b) + r2 * (1.0 - b * b) + r3 * (1.0 - b * b * b));
                g[1] = 2.0 * a * (r1 + 2.0 * b * r2 + 3.0 * b * b * r3);
            }
        }),
    )
}

/// Powell's singular function on variable quadruples, start `(3, -1, 0, 1, ...)`.
fn ext_powell(n: usize) -> Problem {
    Problem::new(
        "Extended Powell",
        n,
        (0..n)
            .map(|i| match i % 4 {
                0 => 3.0,
                1 => -1.0,
                2 => 0.0,
                _ => 1.0,
            })
            .collect(),
        Box::new(|x| {
            x.chunks_exact(4)
                .map(|q| {
                    let (x1, x2, x3, x4) = (q[0], q[1], q[2], q[3]);
                    let t1 = x1 + 10.0 * x2;
                    let t2 = x3 - x4;
                    let t3 = x2 - 2.0 * x3;
                    let t4 = x1 - x4;
                    t1 * t1 + 5.0 * t2 * t2 + math::powi(t3, 4) + 10.0 * math::powi(t4, 4)
                })
                .sum()
        }),
        Box::new(|x, out| {
            for (q, g) in x.chunks_exact(4).zip(out.chunks_exact_mut(4)) {
                let (x1, x2, x3, x4) = (q[0], q[1], q[2], q[3]);
                let t1 = x1 + 10.0 * x2;
                let t2 = x3 - x4;
                let t3c = math::powi(x2 - 2.0 * x3, 3);
                let t4c = math::powi(x1 - x4, 3);
                g[0] = 2.0 * t1 + 40.0 * t4c;
                g[1] = 20.0 * t1 + 4.0 * t3c;
                g[2] = 10.0 * t2 - 8.0 * t3c;
                g[3] = -10.0 * t2 - 40.0 * t4c;
            }
        }),
    )
}

/// Rosenbrock on independent pairs, start `(-1.2, 1, ...)`; minimum 0 at
/// the all-ones point.
fn ext_rosenbrock(n: usize) -> Problem {
    Problem::new(
        "Extended Rosenbrock",
        n,
        rosen_start(n),
        Box::new(|x| {
            x.chunks_exact(2)
                .map(|ab| {
                    let d = ab[1] - ab[0] * ab[0];
                    let e = 1.0 - ab[0];
                    100.0 * d * d + e * e
                })
                .sum()
        }),
        Box::new(|x, out| {
            for (ab, g) in x.chunks_exact(2).zip(out.chunks_exact_mut(2)) {
                let d = ab[1] - ab[0] * ab[0];
                g[0] = -400.0 * ab[0] * d - 2.0 * (1.0 - ab[0]);
                g[1] = 200.0 * d;
            }
        }),
    )
}

/// White & Holst (cubic Rosenbrock) on independent pairs.
fn ext_white_holst(n: usize) -> Problem {
    Problem::new(
        "Extended White and Holst",
        n,
        rosen_start(n),
        Box::new(|x| {
            x.chunks_exact(2)
                .map(|ab| {
                    let d = ab[1] - math::powi(ab[0], 3);
                    let e = 1.0 - ab[0];
                    100.0 * d * d + e * e
                })
                .sum()
        }),
        Box::new(|x, out| {
            for (ab, g) in x.chunks_exact(2).zip(out.chunks_exact_mut(2)) {
                let d = ab[1] - math::powi(ab[0], 3);
                g[0] = -600.0 * ab[0] * ab[0] * d - 2.0 * (1.0 - ab[0]);
                g[1] = 200.0 * d;
            }
        }),
    )
}

fn rosen_start(n: usize) -> Vec<f64> {
    (0..n).map(|i| if i % 2 == 0 { -1.2 } else { 1.0 }).collect()
}

/// `(x1 - 3)^2 + sum_{i>=2} (x1 - 3 - 2 (x1 + ... + x_i)^2)^2`,
/// start `(0.01, ..., 0.01)`. The cumulative sums make the Hessian dense.
fn fh1(n: usize) -> Problem {
    Problem::new(
        "Full Hessian FH1",
        n,
        alloc::vec![0.01; n],
        Box::new(|x| {
            let head = x[0] - 3.0;
            let mut total = head * head;
            let mut s = x[0];
            for &xi in &x[1..] {
                s += xi;
                let r = head - 2.0 * s * s;
                total += r * r;
            }
            total
        }),
        Box::new(|x, out| {
            let n = x.len();
            let head = x[0] - 3.0;
            // forward pass: residuals and their cumulative-sum factors
            let mut s = x[0];
            let mut r_sum = 0.0; // sum of residuals, i >= 2
            let mut rs = alloc::vec![0.0; n]; // 8 r_i s_i per index
            for i in 1..n {
                s += x[i];
                let r = head - 2.0 * s * s;
                r_sum += r;
                rs[i] = 8.0 * r * s;
            }
            // suffix sums: each x_k feels every residual with i >= k
            let mut suffix = 0.0;
            for k in (1..n).rev() {
                suffix += rs[k];
                out[k] = -suffix;
            }
            out[0] = 2.0 * head + 2.0 * r_sum - suffix;
        }),
    )
}

/// `(x1 - 5)^2 + sum_{i>=2} (x1 + ... + x_i - 1)^2`, start `(0.01, ...)`.
/// A convex quadratic with a dense, ill-conditioned Hessian.
fn fh2(n: usize) -> Problem {
    Problem::new(
        "Full Hessian FH2",
        n,
        alloc::vec![0.01; n],
        Box::new(|x| {
            let head = x[0] - 5.0;
            let mut total = head * head;
            let mut s = x[0];
            for &xi in &x[1..] {
                s += xi;
                let r = s - 1.0;
                total += r * r;
            }
            total
        }),
        Box::new(|x, out| {
            let n = x.len();
            let mut s = x[0];
            let mut r = alloc::vec![0.0; n];
            for i in 1..n {
                s += x[i];
                r[i] = 2.0 * (s - 1.0);
            }
            let mut suffix = 0.0;
            for k in (1..n).rev() {
                suffix += r[k];
                out[k] = suffix;
            }
            out[0] = 2.0 * (x[0] - 5.0) + suffix;
        }),
    )
}

/// Chained Rosenbrock `sum_{i>=2} 100 (x_i - x_{i-1}^2)^2 + (1 - x_{i-1})^2`.
fn gen_rosenbrock(n: usize) -> Problem {
    Problem::new(
        "Generalized Rosenbrock",
        n,
        rosen_start(n),
        Box::new(|x| {
            x.windows(2)
                .map(|wn| {
                    let d = wn[1] - wn[0] * wn[0];
                    let e = 1.0 - wn[0];
                    100.0 * d * d + e * e
                })
                .sum()
        }),
        Box::new(|x, out| {
            out.fill(0.0);
            for i in 1..x.len() {
                let d = x[i] - x[i - 1] * x[i - 1];
                out[i] += 200.0 * d;
                out[i - 1] += -400.0 * x[i - 1] * d - 2.0 * (1.0 - x[i - 1]);
            }
        }),
    )
}

/// Chained White & Holst `sum_{i>=2} 100 (x_i - x_{i-1}^3)^2 + (1 - x_{i-1})^2`.
fn gen_white_holst(n: usize) -> Problem {
    Problem::new(
        "Generalized White and Holst",
        n,
        rosen_start(n),
        Box::new(|x| {
            x.windows(2)
                .map(|wn| {
                    let d = wn[1] - math::powi(wn[0], 3);
                    let e = 1.0 - wn[0];
                    100.0 * d * d + e * e
                })
                .sum()
        }),
        Box::new(|x, out| {
            out.fill(0.0);
            for i in 1..x.len() {
                let d = x[i] - math::powi(x[i - 1], 3);
                out[i] += 200.0 * d;
                out[i - 1] += -600.0 * x[i - 1] * x[i - 1] * d - 2.0 * (1.0 - x[i - 1]);
            }
        }),
    )
}

/// `sum exp(x_i) - sqrt(i) x_i`, start `(1, ..., 1)`.
fn hager(n: usize) -> Problem {
    Problem::new(
        "Hager",
        n,
        alloc::vec![1.0; n],
        Box::new(|x| {
            x.iter()
                .enumerate()
                .map(|(i, &xi)| math::exp(xi) - math::sqrt((i + 1) as f64) * xi)
                .sum()
        }),
        Box::new(|x, out| {
            for (i, (g, &xi)) in out.iter_mut().zip(x).enumerate() {
                *g = math::exp(xi) - math::sqrt((i + 1) as f64);
            }
        }),
    )
}

/// `sum i x_i^2 + (sum x_i)^2 / 100`, start `(0.5, ..., 0.5)`.
fn perturbed_quadratic(n: usize) -> Problem {
    Problem::new(
        "Perturbed quadratic",
        n,
        alloc::vec![0.5; n],
        Box::new(|x| {
            let s: f64 = x.iter().sum();
            let quad: f64 = x.iter().enumerate().map(|(i, &xi)| (i + 1) as f64 * xi * xi).sum();
            quad + s * s / 100.0
        }),
        Box::new(|x, out| {
            let s: f64 = x.iter().sum();
            for (i, (g, &xi)) in out.iter_mut().zip(x).enumerate() {
                *g = 2.0 * (i + 1) as f64 * xi + 2.0 * s / 100.0;
            }
        }),
    )
}

/// `sum (i/10) (exp(x_i) - x_i)`, start `(1, ..., 1)`; strictly convex.
fn strictly_convex2(n: usize) -> Problem {
    Problem::new(
        "Strictly Convex 2",
        n,
        alloc::vec![1.0; n],
        Box::new(|x| {
            x.iter()
                .enumerate()
                .map(|(i, &xi)| (i + 1) as f64 / 10.0 * (math::exp(xi) - xi))
                .sum()
        }),
        Box::new(|x, out| {
            for (i, (g, &xi)) in out.iter_mut().zip(x).enumerate() {
                *g = (i + 1) as f64 / 10.0 * (math::exp(xi) - 1.0);
            }
        }),
    )
}
