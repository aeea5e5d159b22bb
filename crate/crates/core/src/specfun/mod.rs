//! Real-valued special functions backing the closed-form metrics: log-gamma,
//! lower incomplete gamma, digamma, modified Bessel functions of the second
//! kind with integer order, and the principal branch of the Lambert W
//! function.
//!
//! All routines work on `f64`, reject arguments outside their mathematical
//! domain, and are pure (no global state), so they may be called from any
//! number of threads concurrently.

mod bessel;
mod gamma;
mod lambert;

pub use bessel::{bessel_k, bessel_k_scaled, ln_bessel_k, BesselK};
pub use gamma::{
    digamma, ln_gamma, lower_incomplete_gamma, lower_incomplete_gamma_with,
    regularized_lower_gamma, regularized_lower_gamma_with,
};
pub use lambert::lambert_w0;

use core::fmt;

/// Errors reported by the special-function routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecFunError {
    /// An argument lies outside the mathematical domain of the function.
    Domain(&'static str),
    /// An iterative scheme exhausted its term budget before reaching the
    /// requested tolerance.
    NoConvergence(&'static str),
}

impl fmt::Display for SpecFunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecFunError::Domain(what) => write!(f, "domain error: {what}"),
            SpecFunError::NoConvergence(what) => write!(f, "failed to converge: {what}"),
        }
    }
}

impl core::error::Error for SpecFunError {}

/// Convergence controls for the series and continued-fraction evaluations.
///
/// `rel_tol` is the relative size at which a series term is considered
/// negligible; `max_terms` caps the number of terms before the evaluation
/// gives up with [`SpecFunError::NoConvergence`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    rel_tol: f64,
    max_terms: u32,
}

impl Accuracy {
    /// Builds an accuracy spec, rejecting tolerances that are nonsensical
    /// (non-positive or looser than 1e-3) and term caps below 16.
    pub fn new(rel_tol: f64, max_terms: u32) -> Result<Self, SpecFunError> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
            return Err(SpecFunError::Domain("rel_tol must lie in (0, 1e-3]"));
        }
        if max_terms < 16 {
            return Err(SpecFunError::Domain("max_terms must be at least 16"));
        }
        Ok(Accuracy { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> u32 {
        self.max_terms
    }
}

impl Default for Accuracy {
    fn default() -> Self {
        Accuracy {
            rel_tol: 1e-10,
            max_terms: 512,
        }
    }
}

/// Euler-Mascheroni constant, rounded to nearest f64.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
