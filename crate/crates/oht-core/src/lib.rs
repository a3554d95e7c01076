//! Numerical evaluation of one-sided oscillatory Hilbert transforms
//!
//!   H⁺(f(t)e^{iωt})(x) = ⨍₀^∞ e^{iωt} f(t)/(t−x) dt,   ω > 0, x ≥ 0,
//!
//! where the bar denotes the Cauchy principal value and, at x = 0, the
//! Hadamard finite part. The oscilland f is analytic in the first quadrant
//! except for an algebraic branch point t^{−α} (0 ≤ α < 1) at the origin.
//!
//! The evaluator dispatches on the position of x:
//!
//! * `x ≥ x_split` — contour rotation onto the positive imaginary axis plus
//!   a generalized Gauss–Laguerre rule ([`transform::eval_away`]);
//! * `0 < x < x_split` — split at a point `a > x` into a finite Hilbert
//!   transform (Chebyshev interpolation, oscillatory Chebyshev moments, and a
//!   closed-form singular kernel) plus a rotated remainder
//!   ([`transform::eval_near`]);
//! * `x = 0` — finite-part kernel in closed form plus a rotated quadrature of
//!   the regularized integrand ([`transform::eval_origin`]).
//!
//! Large-ω asymptotic expansions live in [`asymptotic`], transforms with
//! Bessel-function oscillators in [`bessel`], and slow self-validating
//! reference evaluations in [`oracle`]. All public operations are pure and
//! safe to call concurrently.

pub mod asymptotic;
pub mod bessel;
pub mod cheb;
pub mod cli;
pub mod error;
pub mod gauss;
pub mod moments;
pub mod oracle;
pub mod oscilland;
pub(crate) mod quad;
pub mod specfun;
pub mod transform;

pub use error::{OhtError, Result};
pub use num_complex::Complex64;
pub use oscilland::{classify, registry_get, HilbertResult, Oscilland, Regime};
pub use transform::{eval_auto, eval_away, eval_near, eval_origin, EvalParams};
