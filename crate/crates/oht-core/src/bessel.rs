//! Hilbert transforms with Bessel-function oscillators J_ν(ωt), Y_ν(ωt),
//! ν ∈ {0, 1}, via the rotated representation
//!
//!   H⁺(f J_ν)(x) = −π f(x) Y_ν(ωx) − (1/π) ∫₀^∞ K_ν(ωy) g₁(y)/(y²+x²) dy
//!   H⁺(f Y_ν)(x) =  π f(x) J_ν(ωx) + (i/π) ∫₀^∞ K_ν(ωy) g₂(y)/(y²+x²) dy
//!
//! with g_j(y) = (x+iy) e^{−iνπ/2} f(iy) + (−1)^{j+1} (x−iy) e^{iνπ/2} f(−iy).
//!
//! K₀ has a logarithmic singularity at 0 and K₁ a 1/y pole; for ν = 1 the
//! transform only exists when the two g-terms cancel at y = 0, which is
//! checked from the oscilland's origin data before integrating.

use num_complex::Complex64;

use crate::error::{OhtError, Result};
use crate::gauss::{apply_rule, laguerre_rule};
use crate::oscilland::{classify, HilbertResult, Oscilland, UsedParams};
use crate::quad::tanh_sinh_refine;
use crate::specfun::{bessel_jyk, k0_scaled, k1_scaled};

/// Which Bessel family multiplies the oscilland.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselFamily {
    J,
    Y,
}

/// Oscillator kind: family plus order (0 or 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BesselKind {
    pub family: BesselFamily,
    pub nu: u32,
}

/// Order of the plain Laguerre rule on the decaying tail.
const TAIL_ORDER: usize = 48;

/// Evaluates ⨍₀^∞ f(t) B_ν(ωt)/(t−x) dt for B = J or Y.
///
/// Requires f analytic in the right half-plane (evaluable on both imaginary
/// half-axes).
pub fn eval_bessel_hilbert(
    spec: &Oscilland,
    omega: f64,
    x: f64,
    bk: BesselKind,
) -> Result<HilbertResult> {
    if bk.nu > 1 {
        return Err(OhtError::Param(format!(
            "Bessel oscillators implemented for nu in {{0,1}}, got {}",
            bk.nu
        )));
    }
    if !(omega > 0.0) || !(x > 0.0) {
        return Err(OhtError::Domain(format!(
            "eval_bessel_hilbert requires omega > 0 and x > 0, got ({omega}, {x})"
        )));
    }
    if let Some(d) = spec.growth_d() {
        if d >= omega {
            return Err(OhtError::Domain(format!(
                "growth rate d = {d} requires omega > d, got omega = {omega}"
            )));
        }
    }
    // Integrability at y = 0: K_1 ~ 1/(omega y) must meet a vanishing g_j.
    // Near 0, g_j(y) ~ c y^{-alpha} with c proportional to a_0 sin(alpha pi/2)
    // (J family) or a_0 cos(alpha pi/2) (Y family; = a_0 at alpha = 0).
    if bk.nu == 1 {
        let alpha = spec.alpha();
        let a0 = spec.series()[0];
        let pairing = match bk.family {
            BesselFamily::J => a0 * (alpha * std::f64::consts::FRAC_PI_2).sin(),
            BesselFamily::Y => a0 * (alpha * std::f64::consts::FRAC_PI_2).cos(),
        };
        if pairing.abs() > 0.0 {
            return Err(OhtError::Eval(format!(
                "K_1 kernel is non-integrable for `{}` with this {:?}-family transform \
                 (origin coefficient a_0 = {a0} does not cancel)",
                spec.label(),
                bk.family
            )));
        }
    }

    let sign = match bk.family {
        BesselFamily::J => 1.0,
        BesselFamily::Y => -1.0,
    };
    let nu_phase = Complex64::from_polar(1.0, -(bk.nu as f64) * std::f64::consts::FRAC_PI_2);
    let g = |y: f64| -> Complex64 {
        let f_up = match spec.eval(Complex64::new(0.0, y)) {
            Ok(v) => v,
            Err(_) => return Complex64::new(f64::NAN, f64::NAN),
        };
        let f_down = match spec.eval(Complex64::new(0.0, -y)) {
            Ok(v) => v,
            Err(_) => return Complex64::new(f64::NAN, f64::NAN),
        };
        Complex64::new(x, y) * nu_phase * f_up
            + sign * Complex64::new(x, -y) * nu_phase.conj() * f_down
    };
    let k_small = |s: f64| -> f64 {
        match bk.nu {
            0 => k0_scaled(s) * (-s).exp(),
            _ => k1_scaled(s) * (-s).exp(),
        }
    };
    let k_scaled = |s: f64| -> f64 {
        match bk.nu {
            0 => k0_scaled(s),
            _ => k1_scaled(s),
        }
    };

    // Head: (0, 1/omega], double-exponential panels absorb the K singularity.
    let head_integrand = |y: f64| k_small(omega * y) * g(y) / (y * y + x * x);
    let head = tanh_sinh_refine(&head_integrand, 1.0 / omega, 1e-12, 11);

    // Tail: y = (1+u)/omega turns e^{-omega y} into the Laguerre weight.
    let tail_at = |order: usize| -> Result<Complex64> {
        let rule = laguerre_rule(0.0, order)?;
        let sum = apply_rule(&rule, |u| {
            let y = (1.0 + u) / omega;
            k_scaled(1.0 + u) * g(y) / (y * y + x * x)
        })?;
        Ok(sum * (-1.0_f64).exp() / omega)
    };
    let tail = tail_at(TAIL_ORDER)?;
    let tail_ref = tail_at(TAIL_ORDER - 8)?;

    let k_integral = head.value + tail;
    let est = head.est_err + (tail - tail_ref).norm();

    let fx = spec.eval(Complex64::new(x, 0.0))?;
    let (j, y_val, _) = bessel_jyk(bk.nu, omega * x)?;
    let value = match bk.family {
        BesselFamily::J => {
            -std::f64::consts::PI * fx * y_val - k_integral / std::f64::consts::PI
        }
        BesselFamily::Y => {
            std::f64::consts::PI * fx * j
                + Complex64::new(0.0, 1.0) * k_integral / std::f64::consts::PI
        }
    };
    Ok(HilbertResult {
        value,
        regime: classify(x, 0.5)?,
        params: UsedParams::away(TAIL_ORDER, 0.5),
        err_estimate: est,
        notes: vec![format!("{:?}-family oscillator, nu = {}", bk.family, bk.nu)],
    })
}
