//! Rayleigh-quotient estimates on the projective line, and the gradient
//! methods they induce.
//!
//! Given a symmetric operator and an approximate eigenvector, this crate
//! evaluates the standard, harmonic, and homogeneous Rayleigh quotients
//! side by side ([`quotients`]), extends all three to symmetric-definite
//! pencils ([`gep`]), quantifies their sensitivity to eigenvector
//! perturbations ([`sensitivity`]), and uses the inverse homogeneous
//! quotient of secant data as a steplength (HBB) in a nonmonotone
//! gradient method ([`stepsize`], [`solver`]) benchmarked on a classical
//! unconstrained test set ([`problems`]).
//!
//! The crate is `no_std`-compatible (`alloc` required): disable default
//! features and enable `libm`. Everything is deterministic; experiment
//! randomness comes from explicit seeds ([`rng`]).

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod extended;
pub mod gep;
pub mod linalg;
mod math;
pub mod operator;
pub mod problems;
pub mod projective;
pub mod quotients;
pub mod rng;
pub mod sensitivity;
pub mod solver;
pub mod stepsize;

pub use extended::ExtendedReal;
pub use operator::{DenseSymmetric, Diagonal, SymOperator};
pub use problems::Problem;
pub use projective::HomogeneousPair;
pub use quotients::{QuotientError, QuotientReport};
pub use solver::{RunRecord, SolverConfig, StepRule};
