//! Complex exponential integral E₁ and the sine/cosine integrals.

use num_complex::Complex64;

use super::SpecFunResult;
use crate::error::{OhtError, Result};

/// Euler–Mascheroni constant.
pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const MAX_ITER: usize = 100_000;
const EPS: f64 = 1e-16;
const SERIES_RADIUS: f64 = 4.0;

/// E₁(z) = ∫₁^∞ t^{−1} e^{−zt} dt for z ≠ 0, |arg z| < π.
pub fn expint_e1(z: Complex64) -> Result<Complex64> {
    Ok(expint_e1_est(z)?.value)
}

/// E₁ together with an internal convergence estimate.
pub fn expint_e1_est(z: Complex64) -> Result<SpecFunResult> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(OhtError::Domain("expint_e1 diverges at z = 0".into()));
    }
    if z.re < 0.0 && z.im == 0.0 {
        return Err(OhtError::Domain(
            "expint_e1 is not defined on the branch cut arg z = pi".into(),
        ));
    }
    if z.norm() <= SERIES_RADIUS {
        Ok(e1_series(z))
    } else {
        Ok(e1_continued_fraction(z))
    }
}

/// E₁(z) = −γ − ln z + Σ_{k≥1} (−1)^{k+1} z^k / (k·k!), compensated.
fn e1_series(z: Complex64) -> SpecFunResult {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    for k in 1..MAX_ITER {
        term *= -z / k as f64;
        let contribution = -term / k as f64;
        // Kahan step.
        let y = contribution - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        tail = contribution.norm();
        if tail < EPS * sum.norm().max(1e-30) {
            break;
        }
    }
    let value = -Complex64::new(EULER_GAMMA, 0.0) - z.ln() + sum;
    SpecFunResult::new(value, tail)
}

/// Modified Lentz evaluation of E₁(z) = e^{−z} / (z + 1/(1 + 1/(z + 2/(1 + ⋯)))),
/// in the equivalent even-contracted form b₀ = z + 1, aₖ = −k².
fn e1_continued_fraction(z: Complex64) -> SpecFunResult {
    let one = Complex64::new(1.0, 0.0);
    let mut b = z + 1.0;
    let mut c = Complex64::new(1e300, 0.0);
    let mut d = b.inv();
    let mut h = d;
    let mut delta = 1.0;
    for i in 1..MAX_ITER {
        let a = -((i * i) as f64);
        b += 2.0;
        d = a * d + b;
        if d.norm() < 1e-300 {
            d = Complex64::new(1e-300, 0.0);
        }
        c = b + a / c;
        if c.norm() < 1e-300 {
            c = Complex64::new(1e-300, 0.0);
        }
        d = d.inv();
        let del = d * c;
        h *= del;
        delta = (del - one).norm();
        if delta < EPS {
            break;
        }
    }
    let value = (-z).exp() * h;
    SpecFunResult::new(value, delta * value.norm())
}

/// Returns (Si(x), Ci(x)) for x > 0, with Si(x) = ∫₀^x sin t / t dt and
/// Ci(x) = −∫ₓ^∞ cos t / t dt.
pub fn sine_cosine_integrals(x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) {
        return Err(OhtError::Domain(format!(
            "sine_cosine_integrals requires x > 0, got {x}"
        )));
    }
    if x <= SERIES_RADIUS {
        // Power series for both integrals.
        let x2 = x * x;
        let mut si = x;
        let mut term_si = x;
        let mut k = 1usize;
        loop {
            // term ratio: -(x^2) * (2k-1) / ((2k)(2k+1)^2) relative bookkeeping
            let m = 2 * k as u64;
            term_si *= -x2 / ((m * (m + 1)) as f64);
            let contribution = term_si / (m + 1) as f64;
            si += contribution;
            if contribution.abs() < EPS * si.abs() || k > 200 {
                break;
            }
            k += 1;
        }
        let mut ci = EULER_GAMMA + x.ln();
        let mut term_ci = 1.0;
        let mut k = 1usize;
        loop {
            let m = 2 * k as u64;
            term_ci *= -x2 / (((m - 1) * m) as f64);
            let contribution = term_ci / m as f64;
            ci += contribution;
            if contribution.abs() < EPS * ci.abs().max(1e-3) || k > 200 {
                break;
            }
            k += 1;
        }
        Ok((si, ci))
    } else {
        // E1 on the imaginary axis: E1(ix) = -Ci(x) + i(Si(x) - pi/2).
        let e1 = e1_continued_fraction(Complex64::new(0.0, x)).value;
        Ok((std::f64::consts::FRAC_PI_2 + e1.im, -e1.re))
    }
}
