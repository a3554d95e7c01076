//! Chebyshev interpolation at the extrema y_j = cos(jπ/N) and the
//! difference-quotient expansion used by the near-regime algorithm.
//!
//! Coefficient conventions are a classic silent-bug source here, so they are
//! carried explicitly: interpolant coefficients belong to a sum with first
//! AND last terms halved, difference-quotient coefficients to a sum with
//! only the first term halved.

use num_complex::Complex64;

use crate::error::{OhtError, Result};

/// Which end terms of a Chebyshev sum Σ c_k T_k are halved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndHalving {
    /// Σ″: first and last terms halved (interpolant coefficients).
    FirstAndLast,
    /// Σ′: first term halved (difference-quotient coefficients).
    FirstOnly,
}

/// Degree-N interpolant through samples at y_j = cos(jπ/N), j = 0..N.
#[derive(Debug, Clone)]
pub struct ChebInterpolant {
    degree: usize,
    samples: Vec<Complex64>,
    coeffs: Vec<Complex64>,
    halving: EndHalving,
}

impl ChebInterpolant {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Sample values h(y_j), j = 0..N.
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Coefficients a_0..a_N of p_N = Σ″ a_k T_k.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Halving convention the coefficients belong to.
    pub fn halving(&self) -> EndHalving {
        self.halving
    }

    /// Evaluates p_N(τ) by the barycentric formula for the extrema grid
    /// (weights (−1)^j, halved at the endpoints). A τ that coincides with a
    /// node returns the stored sample exactly.
    pub fn eval_barycentric(&self, tau: f64) -> Complex64 {
        let n = self.degree;
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for j in 0..=n {
            let y = node(j, n);
            if tau == y {
                return self.samples[j];
            }
            let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == n {
                w *= 0.5;
            }
            let q = w / (tau - y);
            num += self.samples[j] * q;
            den += q;
        }
        num / den
    }

    /// Coefficients b_0..b_{N−1} of (p_N(y) − p_N(τ))/(y − τ) = Σ′ b_k T_k(y),
    /// from the backward recurrence b_{k−1} = 2 a_k + 2τ b_k − b_{k+1} with
    /// b_N = 0 and b_{N−1} = a_N.
    pub fn difference_quotient_coeffs(&self, tau: f64) -> Vec<Complex64> {
        let n = self.degree;
        let mut b = vec![Complex64::new(0.0, 0.0); n + 1]; // b[n] stays 0
        b[n - 1] = self.coeffs[n];
        for k in (1..n).rev() {
            b[k - 1] = 2.0 * self.coeffs[k] + 2.0 * tau * b[k] - b[k + 1];
        }
        b.truncate(n.max(1));
        b
    }
}

/// y_j = cos(jπ/N). Endpoints are exact.
pub(crate) fn node(j: usize, n: usize) -> f64 {
    if j == 0 {
        1.0
    } else if 2 * j == n {
        0.0
    } else if j == n {
        -1.0
    } else {
        (j as f64 * std::f64::consts::PI / n as f64).cos()
    }
}

/// Interpolates h at the N+1 extrema points and computes the Chebyshev
/// coefficients a_k = (2/N) Σ″_j h(y_j) cos(jkπ/N) by a type-I discrete
/// cosine transform (an FFT of the even extension when N is a power of two,
/// direct summation otherwise).
pub fn fit<F>(h: F, n: usize) -> Result<ChebInterpolant>
where
    F: Fn(f64) -> Complex64,
{
    if n < 1 {
        return Err(OhtError::Param(format!(
            "interpolation degree must be >= 1, got {n}"
        )));
    }
    let mut samples = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let v = h(node(j, n));
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(OhtError::EvalAtNode { index: j });
        }
        samples.push(v);
    }
    let coeffs = dct_type1(&samples);
    Ok(ChebInterpolant { degree: n, samples, coeffs, halving: EndHalving::FirstAndLast })
}

/// a_k = (2/N) Σ″_j s_j cos(jkπ/N) for k = 0..N.
fn dct_type1(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len() - 1;
    if n >= 4 && n.is_power_of_two() {
        // Even extension of length 2N; its DFT collapses to the double-prime
        // cosine sum: A_k = 2 Σ″_j s_j cos(jkπ/N), so a_k = A_k / N.
        let mut ext = vec![Complex64::new(0.0, 0.0); 2 * n];
        ext[..=n].copy_from_slice(samples);
        for j in 1..n {
            ext[2 * n - j] = samples[j];
        }
        fft_radix2(&mut ext);
        ext.truncate(n + 1);
        for a in ext.iter_mut() {
            *a /= n as f64;
        }
        ext
    } else {
        let two_n = 2 * n;
        let cos_table: Vec<f64> = (0..two_n)
            .map(|m| (m as f64 * std::f64::consts::PI / n as f64).cos())
            .collect();
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = 0.5 * (samples[0] + if k % 2 == 0 { samples[n] } else { -samples[n] });
            for (j, s) in samples.iter().enumerate().take(n).skip(1) {
                acc += s * cos_table[(j * k) % two_n];
            }
            coeffs.push(acc * 2.0 / n as f64);
        }
        coeffs
    }
}

/// In-place iterative radix-2 FFT (forward, unnormalized).
fn fft_radix2(buf: &mut [Complex64]) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            buf.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let ang = -2.0 * std::f64::consts::PI / len as f64;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let w = Complex64::from_polar(1.0, ang * k as f64);
                let u = buf[start + k];
                let v = buf[start + k + len / 2] * w;
                buf[start + k] = u + v;
                buf[start + k + len / 2] = u - v;
            }
        }
        len <<= 1;
    }
}

/// Clenshaw evaluation of Σ′ or Σ″ c_k T_k(y).
pub fn eval_cheb_series(coeffs: &[Complex64], halving: EndHalving, y: f64) -> Complex64 {
    let n = coeffs.len();
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let mut b1 = Complex64::new(0.0, 0.0);
    let mut b2 = Complex64::new(0.0, 0.0);
    for k in (1..n).rev() {
        let scale = if k == n - 1 && halving == EndHalving::FirstAndLast && n >= 2 {
            0.5
        } else {
            1.0
        };
        let b0 = 2.0 * y * b1 - b2 + coeffs[k] * scale;
        b2 = b1;
        b1 = b0;
    }
    y * b1 - b2 + 0.5 * coeffs[0]
}
