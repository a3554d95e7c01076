//! Oscillatory Chebyshev moments
//!
//!   Z_k^{(α)}(ω̃) = ∫_{−1}^{1} (y+1)^{−α} T_k(y) e^{iω̃y} dy
//!
//! and the second-kind moments M_k = ∫ U_k(y) e^{iω̃y} dy used when α = 0.
//!
//! Z_0..Z_2 come from closed forms in the lower incomplete gamma. Higher
//! indices satisfy a four-term recurrence that is stable forward only up to
//! k ≈ 2ω̃; beyond that the recurrence is solved as a banded boundary-value
//! problem with the far value Z_{N₁+1} set to zero (moment decay), Oliver
//! style, here with partial pivoting.

use num_complex::Complex64;

use crate::error::{OhtError, Result};
use crate::specfun::lower_incomplete_gamma;

/// How a moment entry was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMethod {
    /// Closed-form initial value or forward recurrence.
    Forward,
    /// Boundary-value (banded) solve.
    Bvp,
}

/// A table of moments Z_0..Z_{N−1} (or M_0..M_{N−1}) with per-entry
/// provenance.
#[derive(Debug, Clone)]
pub struct MomentTable {
    alpha: f64,
    omega_tilde: f64,
    values: Vec<Complex64>,
    tags: Vec<MomentMethod>,
    /// BVP truncation index, 0 when no boundary solve ran.
    n1: usize,
}

impl MomentTable {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn omega_tilde(&self) -> f64 {
        self.omega_tilde
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn tags(&self) -> &[MomentMethod] {
        &self.tags
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Coefficients of the four-term recurrence instance for index n:
/// cp(n) Z_{n+1} + c0(n) Z_n + cm(n) Z_{n−1} + cmm(n) Z_{n−2} = rhs.
pub(crate) struct ZRecurrence {
    alpha: f64,
    iwt: Complex64,
    pub(crate) rhs: Complex64,
}

impl ZRecurrence {
    pub(crate) fn new(alpha: f64, omega_tilde: f64) -> Self {
        let iwt = Complex64::new(0.0, omega_tilde);
        let rhs = -(2.0_f64.powf(2.0 - alpha)) * iwt.exp();
        Self { alpha, iwt, rhs }
    }

    pub(crate) fn cp(&self, n: f64) -> Complex64 {
        self.iwt * (n - 1.0)
    }

    pub(crate) fn c0(&self, n: f64) -> Complex64 {
        Complex64::new(2.0 * (n - self.alpha + 1.0) * (n - 1.0), 0.0) + self.iwt * (n - 2.0)
    }

    pub(crate) fn cm(&self, n: f64) -> Complex64 {
        Complex64::new(2.0 * n * (n + self.alpha - 2.0), 0.0) - self.iwt * (n + 1.0)
    }

    pub(crate) fn cmm(&self, n: f64) -> Complex64 {
        -self.iwt * n
    }
}

/// Closed forms for Z_0, Z_1, Z_2 in terms of γ(a, −2iω̃).
fn z_initial(alpha: f64, omega_tilde: f64) -> Result<[Complex64; 3]> {
    let z_arg = Complex64::new(0.0, -2.0 * omega_tilde);
    let e_m = Complex64::new(0.0, -omega_tilde).exp();
    let phase = |a: f64| Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_2 * a);
    let g1 = lower_incomplete_gamma(1.0 - alpha, z_arg)?;
    let g2 = lower_incomplete_gamma(2.0 - alpha, z_arg)?;
    let g3 = lower_incomplete_gamma(3.0 - alpha, z_arg)?;
    let z0 = e_m / omega_tilde.powf(1.0 - alpha) * phase(1.0 - alpha) * g1;
    let z1 = e_m / omega_tilde.powf(2.0 - alpha) * phase(2.0 - alpha) * g2 - z0;
    let z2 =
        2.0 * e_m / omega_tilde.powf(3.0 - alpha) * phase(3.0 - alpha) * g3 - 4.0 * z1 - 3.0 * z0;
    Ok([z0, z1, z2])
}

/// Computes Z_0..Z_{count−1} for weight exponent α and scaled frequency ω̃.
///
/// Forward recurrence runs while the index stays at or below n₀ = ⌊2ω̃⌋;
/// higher indices come from the boundary-value solve truncated at `n1`
/// (default 2·count). When the boundary solve is needed, `n1` must be at
/// least max(n₀, count).
pub fn moments_z(
    alpha: f64,
    omega_tilde: f64,
    count: usize,
    n1: Option<usize>,
) -> Result<MomentTable> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(OhtError::Domain(format!("alpha must lie in [0,1), got {alpha}")));
    }
    if !(omega_tilde > 0.0) {
        return Err(OhtError::Domain(format!(
            "omega_tilde must be > 0, got {omega_tilde}"
        )));
    }
    if count < 1 {
        return Err(OhtError::Param("moment count must be >= 1".into()));
    }

    let n0 = (2.0 * omega_tilde).floor() as usize;
    let rec = ZRecurrence::new(alpha, omega_tilde);
    let init = z_initial(alpha, omega_tilde)?;

    let mut values: Vec<Complex64> = init[..count.min(3)].to_vec();
    let mut tags = vec![MomentMethod::Forward; values.len()];

    // Highest index the forward recurrence is allowed to produce. The
    // recurrence admits a parasitic solution growing like 2n/ω̃ once
    // n > ω̃/2, so although the wanted solution stays dominant up to 2ω̃,
    // in double precision the march loses ~8 digits by then; handing over
    // to the boundary solve at ⌊ω̃⌋ keeps the starting values clean.
    let forward_limit = (omega_tilde.floor() as usize).max(2).min(count - 1);
    while values.len() <= forward_limit {
        let k = values.len();
        let n = (k - 1) as f64; // recurrence instance producing Z_{n+1} = Z_k
        let next = (rec.rhs
            - rec.c0(n) * values[k - 1]
            - rec.cm(n) * values[k - 2]
            - rec.cmm(n) * values[k - 3])
            / rec.cp(n);
        values.push(next);
        tags.push(MomentMethod::Forward);
    }

    if values.len() >= count {
        values.truncate(count);
        tags.truncate(count);
        return Ok(MomentTable { alpha, omega_tilde, values, tags, n1: 0 });
    }

    // Boundary-value solve for the remaining indices s..count-1. The far
    // boundary Z_{n1+1} = 0 must sit well past the decay onset at 2 omega_tilde
    // for its error to damp away, so the default pushes beyond that when
    // 2*count alone would not.
    let s = values.len(); // >= 3
    let n1 = n1.unwrap_or_else(|| (2 * count).max((2.0 * omega_tilde).ceil() as usize + 8));
    if n1 < n0.max(count) {
        return Err(OhtError::Param(format!(
            "BVP truncation n1 = {n1} must be >= max(n0 = {n0}, count = {count})"
        )));
    }
    let dim = n1 - s + 1;
    let mut matrix = BandedMatrix::new(dim, 2, 1);
    let mut rhs = vec![Complex64::new(0.0, 0.0); dim];
    for row in 0..dim {
        let index = s + row; // this row is the recurrence instance n = index
        let n = index as f64;
        rhs[row] = rec.rhs;
        // Columns hold Z_{s+col}; Z_{n1+1} is the decay boundary, zero.
        if index + 1 <= n1 {
            matrix.set(row, index + 1 - s, rec.cp(n));
        }
        matrix.set(row, index - s, rec.c0(n));
        if index >= s + 1 {
            matrix.set(row, index - 1 - s, rec.cm(n));
        } else {
            rhs[row] -= rec.cm(n) * values[index - 1];
        }
        if index >= s + 2 {
            matrix.set(row, index - 2 - s, rec.cmm(n));
        } else {
            rhs[row] -= rec.cmm(n) * values[index - 2];
        }
    }
    let solution = matrix.solve(rhs)?;
    for value in solution.iter().take(count - s) {
        values.push(*value);
        tags.push(MomentMethod::Bvp);
    }
    Ok(MomentTable { alpha, omega_tilde, values, tags, n1 })
}

/// Computes M_0..M_{count−1}, M_k = ∫ U_k(y) e^{iω̃y} dy, by the three-term
/// recurrence (stable forward for k ≤ ω̃) with a tridiagonal boundary-value
/// solve truncated at N₁ = 2·count beyond.
pub fn moments_m(omega_tilde: f64, count: usize) -> Result<MomentTable> {
    if !(omega_tilde > 0.0) {
        return Err(OhtError::Domain(format!(
            "omega_tilde must be > 0, got {omega_tilde}"
        )));
    }
    if count < 1 {
        return Err(OhtError::Param("moment count must be >= 1".into()));
    }
    let iwt = Complex64::new(0.0, omega_tilde);
    let e_p = iwt.exp();
    let e_m = (-iwt).exp();
    let rhs = |l: usize| -> Complex64 {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        2.0 * (e_p - sign * e_m) / iwt
    };
    let m0 = Complex64::new(2.0 * omega_tilde.sin() / omega_tilde, 0.0);
    let m1 = Complex64::new(0.0, 4.0)
        * (omega_tilde.sin() / (omega_tilde * omega_tilde) - omega_tilde.cos() / omega_tilde);

    let mut values = vec![m0, m1];
    values.truncate(count);
    let mut tags = vec![MomentMethod::Forward; values.len()];

    let forward_limit = (omega_tilde.floor() as usize).max(1).min(count - 1);
    while values.len() <= forward_limit {
        let l = values.len();
        let next = rhs(l) - 2.0 * l as f64 / iwt * values[l - 1] + values[l - 2];
        values.push(next);
        tags.push(MomentMethod::Forward);
    }
    if values.len() >= count {
        values.truncate(count);
        tags.truncate(count);
        return Ok(MomentTable { alpha: 0.0, omega_tilde, values, tags, n1: 0 });
    }

    // Tridiagonal boundary solve for M_s..M_{n1}; the equation for l couples
    // M_l + (2l/iω̃) M_{l−1} − M_{l−2}, taken for l = s+1 .. n1+1 with
    // M_{n1+1} = 0.
    let s = values.len();
    let n1 = (2 * count).max((2.0 * omega_tilde).ceil() as usize + 8);
    let dim = n1 - s + 1;
    let mut matrix = BandedMatrix::new(dim, 1, 1);
    let mut rhs_vec = vec![Complex64::new(0.0, 0.0); dim];
    for row in 0..dim {
        let l = s + 1 + row;
        rhs_vec[row] = rhs(l);
        if l <= n1 {
            matrix.set(row, l - s, Complex64::new(1.0, 0.0));
        }
        matrix.set(row, l - 1 - s, 2.0 * l as f64 / iwt);
        if l >= s + 2 {
            matrix.set(row, l - 2 - s, Complex64::new(-1.0, 0.0));
        } else {
            rhs_vec[row] += values[l - 2];
        }
    }
    let solution = matrix.solve(rhs_vec)?;
    for value in solution.iter().take(count - s) {
        values.push(*value);
        tags.push(MomentMethod::Bvp);
    }
    Ok(MomentTable { alpha: 0.0, omega_tilde, values, tags, n1 })
}

/// Converts second-kind moments into Z_k^{(0)}:
/// Z_0 = M_0 and Z_k = (e^{iω̃} − (−1)^k e^{−iω̃})/(iω̃) − (k/(iω̃)) M_{k−1}.
pub fn z_from_m(table: &MomentTable, count: usize) -> Result<Vec<Complex64>> {
    if count < 1 || count > table.len() + 1 {
        return Err(OhtError::Param(format!(
            "cannot produce {count} first-kind moments from {} second-kind entries",
            table.len()
        )));
    }
    let omega_tilde = table.omega_tilde();
    let iwt = Complex64::new(0.0, omega_tilde);
    let e_p = iwt.exp();
    let e_m = (-iwt).exp();
    let mut out = Vec::with_capacity(count);
    out.push(table.values()[0]);
    for k in 1..count {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out.push((e_p - sign * e_m) / iwt - k as f64 / iwt * table.values()[k - 1]);
    }
    Ok(out)
}

/// Band-limited complex matrix with partial-pivoting Gaussian elimination.
/// Rows are stored dense so pivot swaps are O(1), but elimination touches
/// only the band (lower width `kl`, upper width `ku`, fill-in to `ku + kl`).
struct BandedMatrix {
    dim: usize,
    kl: usize,
    ku: usize,
    rows: Vec<Vec<Complex64>>,
}

impl BandedMatrix {
    fn new(dim: usize, kl: usize, ku: usize) -> Self {
        Self {
            dim,
            kl,
            ku,
            rows: vec![vec![Complex64::new(0.0, 0.0); dim]; dim],
        }
    }

    fn set(&mut self, row: usize, col: usize, value: Complex64) {
        debug_assert!(col + self.kl >= row && col <= row + self.ku);
        self.rows[row][col] = value;
    }

    /// Solves A x = b, consuming the matrix.
    fn solve(mut self, mut b: Vec<Complex64>) -> Result<Vec<Complex64>> {
        let n = self.dim;
        let band = self.ku + self.kl; // upper fill-in width after pivoting
        for k in 0..n {
            let last_row = (k + self.kl).min(n - 1);
            let pivot_row = (k..=last_row)
                .max_by(|&a, &b| {
                    self.rows[a][k]
                        .norm_sqr()
                        .partial_cmp(&self.rows[b][k].norm_sqr())
                        .unwrap()
                })
                .unwrap();
            if self.rows[pivot_row][k].norm_sqr() == 0.0 {
                return Err(OhtError::Solve(format!(
                    "singular banded system at elimination step {k}"
                )));
            }
            if pivot_row != k {
                self.rows.swap(pivot_row, k);
                b.swap(pivot_row, k);
            }
            let last_col = (k + band).min(n - 1);
            for r in (k + 1)..=last_row {
                let factor = self.rows[r][k] / self.rows[k][k];
                if factor.norm_sqr() == 0.0 {
                    continue;
                }
                for c in k..=last_col {
                    let sub = factor * self.rows[k][c];
                    self.rows[r][c] -= sub;
                }
                let sub_b = factor * b[k];
                b[r] -= sub_b;
            }
        }
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for k in (0..n).rev() {
            let last_col = (k + band).min(n - 1);
            let mut acc = b[k];
            for c in (k + 1)..=last_col {
                acc -= self.rows[k][c] * x[c];
            }
            x[k] = acc / self.rows[k][k];
        }
        Ok(x)
    }
}
