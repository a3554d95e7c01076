//! Self-contained special-function kernel.
//!
//! Everything the closed forms and moment initial values require: the real
//! Gamma function, complex upper/lower incomplete gammas, the complex
//! exponential integral E₁, sine/cosine integrals, Bessel J/Y/K of orders
//! 0 and 1, and Struve functions. Arguments are restricted to the closed
//! right half-plane plus the imaginary axis — the only arguments the
//! transform formulas generate.

mod bessel;
mod expint;
mod gamma;
mod incgamma;
mod struve;

pub use bessel::{bessel_jyk, k0_scaled, k1_scaled};
pub use expint::{expint_e1, sine_cosine_integrals};
pub use gamma::gamma_real;
pub use incgamma::{lower_incomplete_gamma, upper_incomplete_gamma};
pub use struve::{struve_h, struve_h_neg1};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = expint::EULER_GAMMA;

use num_complex::Complex64;

/// A special-function value with an internal accuracy estimate.
#[derive(Debug, Clone, Copy)]
pub struct SpecFunResult {
    pub value: Complex64,
    /// Estimated absolute error (≥ 0), from series tails or continued-fraction
    /// convergence deltas.
    pub est_err: f64,
}

impl SpecFunResult {
    pub(crate) fn new(value: Complex64, est_err: f64) -> Self {
        Self { value, est_err: est_err.abs() }
    }
}
