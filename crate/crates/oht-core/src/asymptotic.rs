//! Large-ω asymptotic expansions of the transform, and the closed-form
//! principal-value integral with a pure power kernel.
//!
//! The expansions are evaluated exactly as written, as finite sums: they are
//! typically divergent in m, so optimal truncation is the caller's policy,
//! guided by the magnitude of the last included term.

use num_complex::Complex64;

use crate::error::{OhtError, Result};
use crate::oscilland::Oscilland;
use crate::specfun::{expint_e1, gamma_real, upper_incomplete_gamma, EULER_GAMMA};

/// A truncated asymptotic expansion value.
#[derive(Debug, Clone, Copy)]
pub struct ExpansionResult {
    pub value: Complex64,
    /// Number of correction terms included (the m of the truncation).
    pub terms_used: usize,
    /// Magnitude of the final included term; a divergence-aware error proxy.
    pub last_term_mag: f64,
}

fn unit_phase(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// Large-ω expansion for x > 0:
///
///   iπ e^{iωx} f(x) − Σ_{ℓ=0}^{m} Γ(ℓ+1−α)/ω^{ℓ+1−α} · e^{iπ(ℓ+1−α)/2}
///                      · Σ_{j+k=ℓ} a_j / x^{k+1}.
pub fn expand_positive_x(
    spec: &Oscilland,
    omega: f64,
    x: f64,
    m: usize,
) -> Result<ExpansionResult> {
    if !(omega > 0.0) || !(x > 0.0) {
        return Err(OhtError::Domain(format!(
            "expand_positive_x requires omega > 0 and x > 0, got ({omega}, {x})"
        )));
    }
    if spec.series().len() < m + 1 {
        return Err(OhtError::Param(format!(
            "expansion order m = {m} needs {} series coefficients, have {}",
            m + 1,
            spec.series().len()
        )));
    }
    let alpha = spec.alpha();
    let fx = spec.eval(Complex64::new(x, 0.0))?;
    let lead = Complex64::new(0.0, std::f64::consts::PI) * Complex64::from_polar(1.0, omega * x) * fx;

    let mut sum = Complex64::new(0.0, 0.0);
    let mut last_term_mag = 0.0;
    for ell in 0..=m {
        let ellf = ell as f64;
        // Convolution of series coefficients against inverse powers of x.
        let mut conv = 0.0;
        for j in 0..=ell {
            let k = ell - j;
            conv += spec.series()[j] / x.powi(k as i32 + 1);
        }
        let order = ellf + 1.0 - alpha;
        let term = gamma_real(order)? / omega.powf(order)
            * unit_phase(std::f64::consts::FRAC_PI_2 * order)
            * conv;
        sum += term;
        last_term_mag = term.norm();
    }
    Ok(ExpansionResult { value: lead - sum, terms_used: m, last_term_mag })
}

/// Large-ω expansion of the finite-part transform at x = 0:
///
///   α > 0: e^{iπ(2−α)/2} ω^α Γ(1−α) a₀/α + Σ_{ℓ=1}^{m} a_ℓ e^{iπ(ℓ−α)/2} Γ(ℓ−α)/ω^{ℓ−α}
///   α = 0: (iπ/2 − γ − log ω) a₀ + Σ_{ℓ=1}^{m} a_ℓ e^{iπℓ/2} (ℓ−1)!/ω^ℓ.
pub fn expand_origin(spec: &Oscilland, omega: f64, m: usize) -> Result<ExpansionResult> {
    if !(omega > 0.0) {
        return Err(OhtError::Domain(format!("expand_origin requires omega > 0, got {omega}")));
    }
    if m < 1 {
        return Err(OhtError::Param("expand_origin requires m >= 1".into()));
    }
    if spec.series().len() < m + 1 {
        return Err(OhtError::Param(format!(
            "expansion order m = {m} needs {} series coefficients, have {}",
            m + 1,
            spec.series().len()
        )));
    }
    let alpha = spec.alpha();
    let a0 = spec.series()[0];
    let lead = if alpha > 0.0 {
        unit_phase(std::f64::consts::FRAC_PI_2 * (2.0 - alpha)) * omega.powf(alpha)
            * gamma_real(1.0 - alpha)?
            * a0
            / alpha
    } else {
        Complex64::new(-EULER_GAMMA - omega.ln(), std::f64::consts::FRAC_PI_2) * a0
    };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last_term_mag = 0.0;
    for ell in 1..=m {
        let ellf = ell as f64;
        let order = ellf - alpha;
        let term = spec.series()[ell] * unit_phase(std::f64::consts::FRAC_PI_2 * order)
            * gamma_real(order)?
            / omega.powf(order);
        sum += term;
        last_term_mag = term.norm();
    }
    Ok(ExpansionResult { value: lead + sum, terms_used: m, last_term_mag })
}

/// Principal-value transform of a pure power oscilland,
/// ⨍₀^∞ e^{iωt} / (t^α (t−x)) dt for x > 0:
///
///   α > 0: (e^{iωx}/x^α) [e^{−iαπ} Γ(1−α) Γ(α, iωx) + iπ]
///   α = 0: e^{iωx} [E₁(iωx) + iπ].
pub fn cpv_power_kernel(alpha: f64, omega: f64, x: f64) -> Result<Complex64> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(OhtError::Domain(format!("alpha must lie in [0,1), got {alpha}")));
    }
    if !(omega > 0.0) || !(x > 0.0) {
        return Err(OhtError::Domain(format!(
            "cpv_power_kernel requires omega > 0 and x > 0, got ({omega}, {x})"
        )));
    }
    let i_pi = Complex64::new(0.0, std::f64::consts::PI);
    let osc = unit_phase(omega * x);
    if alpha == 0.0 {
        let e1 = expint_e1(Complex64::new(0.0, omega * x))?;
        Ok(osc * (e1 + i_pi))
    } else {
        let upper = upper_incomplete_gamma(alpha, Complex64::new(0.0, omega * x))?;
        let bracket =
            unit_phase(-alpha * std::f64::consts::PI) * gamma_real(1.0 - alpha)? * upper + i_pi;
        Ok(osc / x.powf(alpha) * bracket)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscilland::registry_get;

    #[test]
    fn constant_oscilland_single_term() {
        // For f = 1 the m = 0 truncation is i*pi*e^{i w x} - i/(w x); its gap
        // to the closed form is bounded by the next term 1/(w x)^2 (times 2).
        let spec = registry_get("one").unwrap();
        let (omega, x) = (100.0, 1.0);
        let r = expand_positive_x(&spec, omega, x, 0).unwrap();
        let closed = unit_phase(omega * x)
            * (Complex64::new(0.0, std::f64::consts::PI)
                + expint_e1(Complex64::new(0.0, omega * x)).unwrap());
        assert!((r.value - closed).norm() <= 2.0 / (omega * x).powi(2));
        assert!((r.last_term_mag - 1.0 / (omega * x)).abs() < 1e-15);
    }

    #[test]
    fn exp_expansion_term_by_term() {
        // Explicit display for f = e^{-ct}: the convolution is
        // sum_{j+k=l} (-c)^j / (j! x^{k+1}).
        let spec = registry_get("exp:1").unwrap();
        let (omega, x, m) = (10.0, 1.0, 2);
        let r = expand_positive_x(&spec, omega, x, m).unwrap();
        let fx = (-x_f(x)).exp();
        let mut expected = Complex64::new(0.0, std::f64::consts::PI) * unit_phase(omega * x) * fx;
        for ell in 0..=m {
            let mut conv = 0.0;
            let mut fact = 1.0;
            for j in 0..=ell {
                if j > 0 {
                    fact *= j as f64;
                }
                conv += (-1.0_f64).powi(j as i32) / fact / x.powi((ell - j) as i32 + 1);
            }
            let order = ell as f64 + 1.0;
            expected -= gamma_real(order).unwrap() / omega.powf(order)
                * unit_phase(std::f64::consts::FRAC_PI_2 * order)
                * conv;
        }
        assert!((r.value - expected).norm() < 1e-14);
    }

    fn x_f(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn origin_expansion_constant() {
        // All correction terms vanish for f = 1.
        let spec = registry_get("one").unwrap();
        let omega = 10.0;
        let r = expand_origin(&spec, omega, 3).unwrap();
        let expected = Complex64::new(
            -EULER_GAMMA - omega.ln(),
            std::f64::consts::FRAC_PI_2,
        );
        assert!((r.value - expected).norm() < 1e-15);
        assert!((r.value.re - (-2.879_800_757_895_578_5)).abs() < 1e-14);
    }

    #[test]
    fn origin_expansion_exp_display() {
        // For f = e^{-ct}: sum_l ((-c)^l / l) e^{i pi l/2} / w^l.
        let spec = registry_get("exp:1").unwrap();
        let (omega, m) = (20.0, 3);
        let r = expand_origin(&spec, omega, m).unwrap();
        let mut expected =
            Complex64::new(-EULER_GAMMA - omega.ln(), std::f64::consts::FRAC_PI_2);
        for ell in 1..=m {
            let ellf = ell as f64;
            expected += (-1.0_f64).powi(ell as i32) / ellf
                * unit_phase(std::f64::consts::FRAC_PI_2 * ellf)
                / omega.powf(ellf);
        }
        assert!((r.value - expected).norm() < 1e-15);
    }

    #[test]
    fn origin_expansion_sqrt_display() {
        // For f = sqrt(t)/(1+t): sum_l (-1)^{l+1} e^{i pi (l-1/2)/2}
        //                        Gamma(l-1/2) / w^{l-1/2}.
        let spec = registry_get("sqrt_over_1p").unwrap();
        let (omega, m) = (15.0, 2);
        let r = expand_origin(&spec, omega, m).unwrap();
        let mut expected = Complex64::new(0.0, 0.0);
        for ell in 1..=m {
            let order = ell as f64 - 0.5;
            expected += (-1.0_f64).powi(ell as i32 + 1)
                * unit_phase(std::f64::consts::FRAC_PI_2 * order)
                * gamma_real(order).unwrap()
                / omega.powf(order);
        }
        assert!((r.value - expected).norm() < 1e-15);
    }

    #[test]
    fn power_kernel_plain_matches_e1_form() {
        let (omega, x) = (1.0, 1.0);
        let v = cpv_power_kernel(0.0, omega, x).unwrap();
        let expected = unit_phase(1.0)
            * (expint_e1(Complex64::new(0.0, 1.0)).unwrap()
                + Complex64::new(0.0, std::f64::consts::PI));
        assert!((v - expected).norm() < 1e-15);
    }

    #[test]
    fn power_kernel_tail_vanishes() {
        // value - i pi e^{iwx} = e^{iwx} E1(iwx) -> 0 like 1/(wx).
        let (omega, x) = (100.0, 1.0);
        let v = cpv_power_kernel(0.0, omega, x).unwrap();
        let lead = Complex64::new(0.0, std::f64::consts::PI) * unit_phase(omega * x);
        assert!((v - lead).norm() <= 0.011);
    }

    #[test]
    fn sqrt_truncation_converges_at_claimed_order_or_better() {
        // Generic order for m = 1 is omega^{-5/2}; at x = 1 the l = 2
        // coefficient telescopes to zero, so the measured decay is at least
        // that fast (in fact one order faster).
        let spec = registry_get("sqrt_over_1p").unwrap();
        let omegas = [80.0, 160.0, 320.0, 640.0];
        let errs: Vec<f64> = omegas
            .iter()
            .map(|&w| {
                let truth = crate::oracle::oracle_rotated(&spec, w, 1.0).unwrap().value;
                (expand_positive_x(&spec, w, 1.0, 1).unwrap().value - truth).norm()
            })
            .collect();
        let slope = (errs[3] / errs[0]).log10() / (omegas[3] / omegas[0]).log10();
        assert!(slope <= -2.25, "slope {slope} too shallow: {errs:?}");
    }

    #[test]
    fn power_kernel_half_matches_direct_cpv() {
        // t^{-1/2}/(t - x) evaluated by the closed form against the direct
        // excision oracle, via a custom pure-power oscilland.
        let spec = crate::oscilland::Oscilland::new("pow_half", 0.5, vec![1.0], Some(0.0), |z| {
            z.powf(-0.5)
        })
        .unwrap();
        let (omega, x) = (10.0, 2.0);
        let direct = crate::oracle::oracle_cpv_direct(&spec, omega, x).unwrap().value;
        let closed = cpv_power_kernel(0.5, omega, x).unwrap();
        assert!(
            (closed - direct).norm() <= 1e-9,
            "{closed} vs {direct}"
        );
    }

    #[test]
    fn divergence_shows_in_term_magnitudes() {
        // At fixed omega the term magnitudes eventually grow; a minimum
        // exists within the available series length.
        let mut series = Vec::new();
        let mut c = 1.0;
        for j in 0..36 {
            series.push(c);
            c *= -1.0 / (j as f64 + 1.0);
        }
        let spec = crate::oscilland::Oscilland::new("exp-long", 0.0, series, Some(0.0), |z| {
            (-z).exp()
        })
        .unwrap();
        let omega = 10.0;
        let mags: Vec<f64> = (0..=30)
            .map(|m| expand_positive_x(&spec, omega, 1.0, m).unwrap().last_term_mag)
            .collect();
        let min_at = mags
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        assert!(min_at > 0 && min_at < 30, "no interior minimum: {min_at}");
        assert!(mags[30] > mags[min_at] * 10.0);
    }

    #[test]
    fn errors() {
        let spec = registry_get("one").unwrap();
        assert!(expand_positive_x(&spec, 10.0, 1.0, 40).is_err());
        assert!(expand_positive_x(&spec, -1.0, 1.0, 2).is_err());
        assert!(expand_origin(&spec, 10.0, 0).is_err());
        assert!(cpv_power_kernel(0.5, 10.0, 0.0).is_err());
        assert!(cpv_power_kernel(1.0, 10.0, 1.0).is_err());
    }
}
