//! Slow, self-validating reference evaluations used to check every fast
//! method: the rotated-contour representation integrated by refining
//! double-exponential panels, direct principal-value evaluation with
//! symmetric excision and Richardson extrapolation, the closed form for
//! exponential oscillands, and a real-axis finite-part evaluation.

use num_complex::Complex64;

use crate::error::{OhtError, Result};
use crate::oscilland::Oscilland;
use crate::quad::{gl_panel, oscillatory_tail, tanh_sinh_refine};
use crate::specfun::{expint_e1, gamma_real, sine_cosine_integrals, EULER_GAMMA};

/// Which reference route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    RotatedContour,
    DirectCpv,
    ClosedForm,
}

/// A reference value with an honest convergence-based error estimate.
#[derive(Debug, Clone, Copy)]
pub struct OracleValue {
    pub value: Complex64,
    pub method: OracleMethod,
    pub est_err: f64,
}

fn i_pi() -> Complex64 {
    Complex64::new(0.0, std::f64::consts::PI)
}

/// Rotated-contour reference for x > 0:
///
///   iπ e^{iωx} f(x) + (1/ω) ∫₀^∞ e^{−q} f(iq/ω) / (q/ω + ix) dq,
///
/// the integral by refining tanh-sinh panels on (0, Q] with Q chosen so the
/// discarded tail is ≲ e^{−40}.
pub fn oracle_rotated(spec: &Oscilland, omega: f64, x: f64) -> Result<OracleValue> {
    oracle_rotated_effort(spec, omega, x, 12)
}

pub(crate) fn oracle_rotated_effort(
    spec: &Oscilland,
    omega: f64,
    x: f64,
    max_level: u32,
) -> Result<OracleValue> {
    if !(omega > 0.0) || !(x > 0.0) {
        return Err(OhtError::Domain(format!(
            "oracle_rotated requires omega > 0 and x > 0, got ({omega}, {x})"
        )));
    }
    let d = spec.growth_d().unwrap_or(0.0);
    if d >= omega {
        return Err(OhtError::Domain(format!(
            "growth rate d = {d} requires omega > d, got omega = {omega}"
        )));
    }
    // e^{-q} f(iq/omega) picks up e^{d q / omega}; push the cutoff out so the
    // effective decay still reaches e^{-40}.
    let q_max = 40.0 * omega / (omega - d);
    let integrand = |q: f64| -> Complex64 {
        let t = q / omega;
        let f = spec
            .eval(Complex64::new(0.0, t))
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        (-q).exp() * f / Complex64::new(t, x)
    };
    let quad = tanh_sinh_refine(&integrand, q_max, 1e-13, max_level);
    if !quad.converged && quad.est_err > 1e-10 {
        return Err(OhtError::Oracle(format!(
            "rotated-contour integral stalled at est_err = {:.3e}",
            quad.est_err
        )));
    }
    let fx = spec.eval(Complex64::new(x, 0.0))?;
    let value = i_pi() * Complex64::from_polar(1.0, omega * x) * fx + quad.value / omega;
    let tail_bound = (-40.0_f64).exp() / x;
    Ok(OracleValue {
        value,
        method: OracleMethod::RotatedContour,
        est_err: quad.est_err + tail_bound,
    })
}

/// The symmetric-excision approximation ∫₀^{x−ε} + ∫_{x+ε}^∞ of the
/// principal value, evaluated entirely on the real axis.
#[cfg(test)]
pub(crate) fn excised_transform(
    spec: &Oscilland,
    omega: f64,
    x: f64,
    eps: f64,
) -> Result<Complex64> {
    let shared = excision_shared_parts(spec, omega, x)?;
    Ok(shared.assemble(spec, omega, x, eps)?.0)
}

/// ε-independent pieces of the excised integral, reused across the ε sweep.
struct SharedParts {
    /// ∫ over (0, x/2].
    left_head: Complex64,
    left_head_err: f64,
    /// Cut distance C where dyadic panels hand over to the periodic walker.
    cut: f64,
    /// ∫ over [x + C, ∞).
    tail: Complex64,
    tail_err: f64,
}

impl SharedParts {
    /// Adds the ε-dependent dyadic panels on both sides of the pole.
    fn assemble(
        &self,
        spec: &Oscilland,
        omega: f64,
        x: f64,
        eps: f64,
    ) -> Result<(Complex64, f64)> {
        let f = |t: f64| -> Result<Complex64> {
            Ok(spec.eval(Complex64::new(t, 0.0))? * Complex64::from_polar(1.0, omega * t)
                / (t - x))
        };
        let mut value = self.left_head + self.tail;
        // Left side: x/2 up to x - eps, halving the pole distance each panel.
        let mut d = 0.5 * x;
        while d > 2.0 * eps {
            value += gl_panel_checked(&f, x - d, x - 0.5 * d)?;
            d *= 0.5;
        }
        value += gl_panel_checked(&f, x - d, x - eps)?;
        // Right side: x + eps out to x + cut, doubling the distance.
        let mut e = eps;
        while 2.0 * e < self.cut {
            value += gl_panel_checked(&f, x + e, x + 2.0 * e)?;
            e *= 2.0;
        }
        value += gl_panel_checked(&f, x + e, x + self.cut)?;
        Ok((value, self.left_head_err + self.tail_err))
    }
}

fn gl_panel_checked<F>(f: &F, a: f64, b: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mut failed = false;
    let v = gl_panel(
        &|t: f64| match f(t) {
            Ok(v) => v,
            Err(_) => {
                // Propagated after the panel completes.
                Complex64::new(f64::NAN, f64::NAN)
            }
        },
        a,
        b,
    );
    if !v.re.is_finite() || !v.im.is_finite() {
        failed = true;
    }
    if failed {
        Err(OhtError::Eval(format!("integrand failed on panel [{a}, {b}]")))
    } else {
        Ok(v)
    }
}

fn excision_shared_parts(spec: &Oscilland, omega: f64, x: f64) -> Result<SharedParts> {
    let osc = |t: f64| -> Complex64 {
        match spec.eval(Complex64::new(t, 0.0)) {
            Ok(v) => v * Complex64::from_polar(1.0, omega * t) / (t - x),
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    };
    let head = tanh_sinh_refine(&osc, 0.5 * x, 1e-13, 11);
    let cut = (std::f64::consts::PI / omega).max(0.1);
    let tail = oscillatory_tail(&osc, x + cut, std::f64::consts::PI / omega, 400, 1e-11);
    if !tail.converged {
        return Err(OhtError::Oracle(format!(
            "oscillatory tail stalled at est_err = {:.3e}",
            tail.est_err
        )));
    }
    Ok(SharedParts {
        left_head: head.value,
        left_head_err: head.est_err,
        cut,
        tail: tail.value,
        tail_err: tail.est_err,
    })
}

/// Direct principal-value reference: symmetric excision with
/// ε ∈ {1e−2, 1e−3, 1e−4} and two-stage Richardson extrapolation (the
/// excision error is A ε + B ε³; even powers cancel by symmetry).
///
/// Low frequencies only — the point of this route is independence from the
/// rotated-contour representation, not speed.
pub fn oracle_cpv_direct(spec: &Oscilland, omega: f64, x: f64) -> Result<OracleValue> {
    if !(omega > 0.0) || omega > 50.0 {
        return Err(OhtError::Param(format!(
            "oracle_cpv_direct is restricted to 0 < omega <= 50, got {omega}"
        )));
    }
    if !(x > 0.05) {
        return Err(OhtError::Param(format!(
            "oracle_cpv_direct requires x > 0.05 (excision widths), got {x}"
        )));
    }
    let shared = excision_shared_parts(spec, omega, x)?;
    let mut excised = [Complex64::new(0.0, 0.0); 3];
    let mut quad_err = 0.0;
    for (i, eps) in [1e-2, 1e-3, 1e-4].into_iter().enumerate() {
        let (v, e) = shared.assemble(spec, omega, x, eps)?;
        excised[i] = v;
        quad_err = e;
    }
    // First stage kills the epsilon term (ratio 10), second the cubic one.
    let f1 = (10.0 * excised[1] - excised[0]) / 9.0;
    let f2 = (10.0 * excised[2] - excised[1]) / 9.0;
    let value = (1000.0 * f2 - f1) / 999.0;
    let est_err = (value - f2).norm() * 1e-3 + quad_err;
    Ok(OracleValue { value, method: OracleMethod::DirectCpv, est_err })
}

/// Closed form for f = e^{−ct}: the series-in-c representation built on E₁,
/// Si and trigonometric phase cycling. For c = 0 this collapses to
/// e^{iωx}(iπ + E₁(iωx)).
pub fn closed_form_exp(c: f64, omega: f64, x: f64) -> Result<OracleValue> {
    if !(c >= 0.0) || !(omega > 0.0) || !(x > 0.0) {
        return Err(OhtError::Domain(format!(
            "closed_form_exp requires c >= 0, omega > 0, x > 0, got ({c}, {omega}, {x})"
        )));
    }
    if c == 0.0 {
        let e1 = expint_e1(Complex64::new(0.0, omega * x))?;
        let value = Complex64::from_polar(1.0, omega * x) * (i_pi() + e1);
        return Ok(OracleValue { value, method: OracleMethod::ClosedForm, est_err: 5e-16 * value.norm() });
    }
    let theta = omega * x;
    let (sin_t, cos_t) = (theta.sin(), theta.cos());
    // sin(theta + k pi/2) and cos(theta + k pi/2) cycle with period 4.
    let sin_cycle = [sin_t, cos_t, -sin_t, -cos_t];
    let cos_cycle = [cos_t, -sin_t, -cos_t, sin_t];
    let inner = |big_l: usize, cycle: &[f64; 4]| -> f64 {
        let mut p = x.powi(big_l as i32) / omega;
        let mut acc = p * cycle[0];
        for k in 0..big_l {
            p *= (big_l - k) as f64 / (x * omega);
            acc += p * cycle[(k + 1) % 4];
        }
        acc
    };
    let mut s_sin = 0.0;
    let mut s_cos = 0.0;
    let mut outer_odd = c; // c^{2l+1}/(2l+1)!
    let mut outer_even; // c^{2l+2}/(2l+2)!
    let mut converged = false;
    for ell in 0..150 {
        outer_even = outer_odd * c / (2.0 * ell as f64 + 2.0);
        let t_sin = outer_odd * inner(2 * ell, &sin_cycle);
        let t_cos = outer_even * inner(2 * ell + 1, &cos_cycle);
        s_sin += t_sin;
        s_cos += t_cos;
        let scale = s_sin.abs().max(s_cos.abs()).max(1.0);
        if t_sin.abs() < 1e-18 * scale && t_cos.abs() < 1e-18 * scale {
            converged = true;
            break;
        }
        outer_odd = outer_even * c / (2.0 * ell as f64 + 3.0);
    }
    if !converged {
        return Err(OhtError::Param(format!(
            "closed-form series for c = {c}, x = {x} did not decay within 150 terms"
        )));
    }
    let (si, _) = sine_cosine_integrals(theta)?;
    let e1 = expint_e1(Complex64::new(c * x, -theta))?;
    let bracket = e1 - 2.0 * s_sin + Complex64::new(0.0, 2.0 * si - 2.0 * s_cos);
    let value = (Complex64::new(-c, omega) * x).exp() * bracket;
    Ok(OracleValue { value, method: OracleMethod::ClosedForm, est_err: 1e-15 * (1.0 + value.norm()) })
}

/// Finite-part reference at x = 0: the closed-form kernel contribution plus
/// the regularized integral ∫₀^∞ e^{iωt} (f(t) − a₀ t^{−α})/t dt evaluated
/// on the real axis (singular head by tanh-sinh, periodic tail with epsilon
/// acceleration).
pub fn oracle_hadamard(spec: &Oscilland, omega: f64) -> Result<OracleValue> {
    oracle_hadamard_effort(spec, omega, 11, 600)
}

pub(crate) fn oracle_hadamard_effort(
    spec: &Oscilland,
    omega: f64,
    max_level: u32,
    max_panels: usize,
) -> Result<OracleValue> {
    if !(omega > 0.0) {
        return Err(OhtError::Domain(format!("oracle_hadamard requires omega > 0, got {omega}")));
    }
    if spec.series().is_empty() {
        return Err(OhtError::Param("oscilland carries no origin series".into()));
    }
    let alpha = spec.alpha();
    let a0 = spec.series()[0];
    let kernel = if alpha > 0.0 {
        Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_2 * (2.0 - alpha))
            * omega.powf(alpha)
            * gamma_real(1.0 - alpha)?
            / alpha
    } else {
        Complex64::new(-EULER_GAMMA - omega.ln(), std::f64::consts::FRAC_PI_2)
    };
    // Direct evaluation of (f(t) − a0 t^{−α})/t is catastrophically unstable
    // as t → 0 (a last-bit mismatch between the two power evaluations gets
    // divided by t), so below the switch point the difference comes from the
    // origin series, where it is Σ_{j≥1} a_j t^{j−1−α} to machine accuracy.
    let series_switch = 1e-4;
    let regularized = |t: f64| -> Complex64 {
        let osc = Complex64::from_polar(1.0, omega * t);
        if t < series_switch {
            let mut acc = 0.0;
            for (j, &aj) in spec.series().iter().enumerate().skip(1) {
                acc += aj * t.powf(j as f64 - 1.0 - alpha);
            }
            return acc * osc;
        }
        let f = match spec.eval(Complex64::new(t, 0.0)) {
            Ok(v) => v,
            Err(_) => return Complex64::new(f64::NAN, f64::NAN),
        };
        (f - a0 * t.powf(-alpha)) / t * osc
    };
    let head_len = (std::f64::consts::PI / omega).min(1.0);
    let head = tanh_sinh_refine(&regularized, head_len, 1e-13, max_level);
    let tail = oscillatory_tail(
        &regularized,
        head_len,
        std::f64::consts::PI / omega,
        max_panels,
        1e-12,
    );
    if !tail.converged && tail.est_err > 1e-10 {
        return Err(OhtError::Oracle(format!(
            "regularized tail stalled at est_err = {:.3e}",
            tail.est_err
        )));
    }
    Ok(OracleValue {
        value: kernel * a0 + head.value + tail.value,
        method: OracleMethod::RotatedContour,
        est_err: head.est_err + tail.est_err,
    })
}
