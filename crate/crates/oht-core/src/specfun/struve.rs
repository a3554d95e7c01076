//! Struve functions H₀ and H₁ (plus H₋₁ by reflection).

use crate::error::{OhtError, Result};

use super::bessel_jyk;
use super::gamma_real;

const SERIES_CUTOFF: f64 = 20.0;

/// Struve function H_ν(x) for ν ∈ {0, 1}, x > 0.
///
/// Power series up to x = 20, then the asymptotic expansion of H_ν − Y_ν
/// truncated at its smallest term.
pub fn struve_h(nu: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(OhtError::Domain(format!("struve_h requires x > 0, got {x}")));
    }
    if nu > 1 {
        return Err(OhtError::Param(format!("struve_h implemented for nu in {{0,1}}, got {nu}")));
    }
    if x <= SERIES_CUTOFF {
        struve_series(nu, x)
    } else {
        struve_asymptotic(nu, x)
    }
}

/// H₋₁(x) = 2/π − H₁(x).
pub fn struve_h_neg1(x: f64) -> Result<f64> {
    Ok(2.0 / std::f64::consts::PI - struve_h(1, x)?)
}

/// Σ_k (−1)^k (x/2)^{2k+ν+1} / (Γ(k+3/2) Γ(k+ν+3/2)), compensated.
fn struve_series(nu: u32, x: f64) -> Result<f64> {
    let half = x / 2.0;
    let q = half * half;
    let nuf = nu as f64;
    let mut term = half.powi(nu as i32 + 1)
        / (gamma_real(1.5)? * gamma_real(nuf + 1.5)?);
    let mut sum = term;
    let mut comp = 0.0;
    for k in 0..300 {
        let kf = k as f64;
        term *= -q / ((kf + 1.5) * (kf + nuf + 1.5));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() < 1e-17 * sum.abs().max(1e-30) {
            break;
        }
    }
    Ok(sum)
}

/// H_ν(x) = Y_ν(x) + (1/π) Σ_k Γ(k+1/2) (x/2)^{ν−2k−1} / Γ(ν+1/2−k),
/// summed to the smallest term.
fn struve_asymptotic(nu: u32, x: f64) -> Result<f64> {
    let (_, y, _) = bessel_jyk(nu, x)?;
    let half = x / 2.0;
    let nuf = nu as f64;
    // k = 0 term: Gamma(1/2)/Gamma(nu+1/2) * (x/2)^{nu-1}.
    let mut term = half.powf(nuf - 1.0) * gamma_real(0.5)? / gamma_real(nuf + 0.5)?;
    let mut sum = term;
    let mut prev_mag = term.abs();
    for k in 0..60 {
        let kf = k as f64;
        term *= (kf + 0.5) * (nuf - 0.5 - kf) / (half * half);
        if term.abs() >= prev_mag {
            break; // optimal truncation
        }
        sum += term;
        prev_mag = term.abs();
    }
    Ok(y + sum / std::f64::consts::PI)
}
