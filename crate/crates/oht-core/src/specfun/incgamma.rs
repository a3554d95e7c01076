//! Complex incomplete gamma functions γ(a, z) and Γ(a, z) for real a > 0.
//!
//! Power series below |z| = 1 + a, modified Lentz continued fraction above;
//! the continued fraction converges on the whole cut plane |arg z| < π,
//! including the imaginary axis where all the transform formulas live.

use num_complex::Complex64;

use super::gamma_real;
use super::SpecFunResult;
use crate::error::{OhtError, Result};

const MAX_ITER: usize = 20_000;
const EPS: f64 = 1e-16;

/// Lower incomplete gamma γ(a, z) = ∫₀^z t^{a−1} e^{−t} dt along the
/// principal (straight) path, for real a > 0.
pub fn lower_incomplete_gamma(a: f64, z: Complex64) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(OhtError::Domain(format!(
            "lower_incomplete_gamma requires a > 0, got a = {a}"
        )));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if z.norm() < a + 1.0 {
        Ok(lower_series(a, z).value)
    } else {
        let gamma_a = gamma_real(a)?;
        Ok(Complex64::new(gamma_a, 0.0) - upper_cf(a, z).value)
    }
}

/// Upper (complementary) incomplete gamma Γ(a, z), for real a > 0 with
/// Re z ≥ 0 or z on the imaginary axis. Γ(a, 0) = Γ(a).
pub fn upper_incomplete_gamma(a: f64, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        if a <= 0.0 {
            return Err(OhtError::Domain(
                "upper_incomplete_gamma diverges at z = 0 for a <= 0".into(),
            ));
        }
        return Ok(Complex64::new(gamma_real(a)?, 0.0));
    }
    if !(a > 0.0) {
        return Err(OhtError::Domain(format!(
            "upper_incomplete_gamma requires a > 0, got a = {a}"
        )));
    }
    if z.norm() < a + 1.0 {
        let gamma_a = gamma_real(a)?;
        Ok(Complex64::new(gamma_a, 0.0) - lower_series(a, z).value)
    } else {
        Ok(upper_cf(a, z).value)
    }
}

/// γ(a, z) by the standard series z^a e^{−z} Σ z^n / (a (a+1) ⋯ (a+n)).
fn lower_series(a: f64, z: Complex64) -> SpecFunResult {
    let mut denom = a;
    let mut term = Complex64::new(1.0 / a, 0.0);
    let mut sum = term;
    let mut last = term.norm();
    for _ in 0..MAX_ITER {
        denom += 1.0;
        term *= z / denom;
        sum += term;
        last = term.norm();
        if last < sum.norm() * EPS {
            break;
        }
    }
    let prefactor = z.powf(a) * (-z).exp();
    SpecFunResult::new(prefactor * sum, last * prefactor.norm())
}

/// Γ(a, z) by the modified Lentz continued fraction
/// e^{−z} z^a / (z + (1−a)/(1 + 1/(z + (2−a)/(1 + ⋯)))).
fn upper_cf(a: f64, z: Complex64) -> SpecFunResult {
    let tiny = Complex64::new(1e-300, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut b = z + (1.0 - a);
    let mut c = Complex64::new(1e300, 0.0);
    let mut d = b.inv();
    let mut h = d;
    let mut delta = 1.0;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.norm() < 1e-300 {
            d = tiny;
        }
        c = b + an / c;
        if c.norm() < 1e-300 {
            c = tiny;
        }
        d = d.inv();
        let del = d * c;
        h *= del;
        delta = (del - one).norm();
        if delta < EPS {
            break;
        }
    }
    let prefactor = (-z).exp() * z.powf(a);
    SpecFunResult::new(prefactor * h, delta * (prefactor * h).norm())
}
