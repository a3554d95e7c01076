//! Oscilland descriptions, the built-in registry, and regime classification.
//!
//! An [`Oscilland`] bundles the evaluator f(z) with the data the quadrature
//! methods need: the branch exponent α of the origin behaviour
//! f(t) ~ Σ_j a_j t^{j−α} and the leading series coefficients a_j.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{OhtError, Result};

/// Number of stored origin-series coefficients (a_0 .. a_J) for built-ins.
pub const SERIES_LEN: usize = 21;

type EvalFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// An oscilland f: analytic on the closed right half-plane except for an
/// algebraic branch point of exponent α ∈ [0, 1) at the origin, together
/// with its origin-series coefficients.
///
/// Immutable after construction; cloning is cheap (the evaluator is shared).
#[derive(Clone)]
pub struct Oscilland {
    label: String,
    alpha: f64,
    series: Vec<f64>,
    growth_d: Option<f64>,
    domain_note: String,
    eval: EvalFn,
}

impl fmt::Debug for Oscilland {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oscilland")
            .field("label", &self.label)
            .field("alpha", &self.alpha)
            .field("series", &self.series)
            .field("growth_d", &self.growth_d)
            .finish_non_exhaustive()
    }
}

impl Oscilland {
    /// Builds an oscilland from a user-supplied evaluator and origin data.
    ///
    /// `series` holds a_0, a_1, … of f(t) ~ Σ a_j t^{j−α} as t → 0⁺.
    /// `growth_d` is the exponential growth rate of |f| along the imaginary
    /// direction, when known; ω must exceed it for the rotated integrals to
    /// converge.
    pub fn new<F>(
        label: impl Into<String>,
        alpha: f64,
        series: Vec<f64>,
        growth_d: Option<f64>,
        eval: F,
    ) -> Result<Self>
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        if !(0.0..1.0).contains(&alpha) {
            return Err(OhtError::Domain(format!(
                "branch exponent alpha must lie in [0,1), got {alpha}"
            )));
        }
        if series.is_empty() {
            return Err(OhtError::Param("origin series must be non-empty".into()));
        }
        if let Some(d) = growth_d {
            if d < 0.0 {
                return Err(OhtError::Param("growth rate d must be >= 0".into()));
            }
        }
        Ok(Self {
            label: label.into(),
            alpha,
            series,
            growth_d,
            domain_note: String::new(),
            eval: Arc::new(eval),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Branch exponent α of the origin singularity.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Origin-series coefficients a_0, a_1, …
    pub fn series(&self) -> &[f64] {
        &self.series
    }

    /// Exponential growth rate d with |f(z)| ≲ |z|^δ e^{d·Im z}, when known.
    pub fn growth_d(&self) -> Option<f64> {
        self.growth_d
    }

    /// Free-text note about the evaluation domain of f.
    pub fn domain_note(&self) -> &str {
        &self.domain_note
    }

    /// Attaches a free-text note about where f may be evaluated.
    pub fn with_domain_note(mut self, note: impl Into<String>) -> Self {
        self.domain_note = note.into();
        self
    }

    /// Evaluates f(z). Errors if the evaluator returns a non-finite value.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let v = (self.eval)(z);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(OhtError::Eval(format!(
                "oscilland `{}` returned a non-finite value at z = {z}",
                self.label
            )))
        }
    }

    /// Evaluates f_α(t) = t^α f(t) for real t ≥ 0. At t = 0 this is the
    /// series limit a_0.
    pub fn eval_alpha_real(&self, t: f64) -> Result<Complex64> {
        if t == 0.0 {
            return Ok(Complex64::new(self.series[0], 0.0));
        }
        Ok(self.eval(Complex64::new(t, 0.0))? * t.powf(self.alpha))
    }

    /// Evaluates f_α(it) = (it)^α f(it) for real t > 0 on the principal
    /// branch, (it)^α = t^α e^{iαπ/2}.
    pub fn eval_alpha_imag(&self, t: f64) -> Result<Complex64> {
        if t == 0.0 {
            return Ok(Complex64::new(self.series[0], 0.0));
        }
        let phase = Complex64::from_polar(t.powf(self.alpha), self.alpha * std::f64::consts::FRAC_PI_2);
        Ok(self.eval(Complex64::new(0.0, t))? * phase)
    }
}

/// Looks up a built-in oscilland.
///
/// Known labels: `one`, `exp:<c>` (f = e^{−ct}, c ≥ 0), `sqrt_over_1p`
/// (f = √t/(1+t)), and `cos_over_cbrt` (f = cos t / t^{1/3}).
pub fn registry_get(label: &str) -> Result<Oscilland> {
    if label == "one" {
        let mut series = vec![0.0; SERIES_LEN];
        series[0] = 1.0;
        return Oscilland::new("one", 0.0, series, Some(0.0), |_z| Complex64::new(1.0, 0.0))
            .map(|s| s.with_domain_note("entire"));
    }
    if let Some(arg) = label.strip_prefix("exp:") {
        let c: f64 = arg
            .parse()
            .map_err(|_| OhtError::NotRegistered(label.to_string()))?;
        if !c.is_finite() || c < 0.0 {
            return Err(OhtError::NotRegistered(label.to_string()));
        }
        let mut series = Vec::with_capacity(SERIES_LEN);
        let mut coeff = 1.0;
        for j in 0..SERIES_LEN {
            series.push(coeff);
            coeff *= -c / (j as f64 + 1.0);
        }
        return Oscilland::new(label, 0.0, series, Some(0.0), move |z| (-c * z).exp())
            .map(|s| s.with_domain_note("entire"));
    }
    if label == "sqrt_over_1p" {
        let mut series = vec![0.0; SERIES_LEN];
        for (j, a) in series.iter_mut().enumerate().skip(1) {
            *a = if j % 2 == 1 { 1.0 } else { -1.0 };
        }
        return Oscilland::new(label, 0.5, series, Some(0.0), |z| {
            z.sqrt() / (Complex64::new(1.0, 0.0) + z)
        })
        .map(|s| s.with_domain_note("pole at z = -1, branch cut on the negative real axis"));
    }
    if label == "cos_over_cbrt" {
        let mut series = vec![0.0; SERIES_LEN];
        let mut coeff = 1.0;
        for k in 0..(SERIES_LEN + 1) / 2 {
            series[2 * k] = coeff;
            let m = (2 * k + 1) as f64;
            coeff *= -1.0 / (m * (m + 1.0));
        }
        return Oscilland::new(label, 1.0 / 3.0, series, Some(1.0), |z| {
            z.cos() / z.powf(1.0 / 3.0)
        })
        .map(|s| {
            s.with_domain_note("branch cut on the negative real axis; grows like e^{|Im z|}")
        });
    }
    Err(OhtError::NotRegistered(label.to_string()))
}

/// Position of the singularity x relative to the method-dispatch threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// x ≥ x_split: rotated-contour Gauss–Laguerre rule.
    Away,
    /// 0 < x < x_split: interval splitting with Chebyshev moments.
    Near,
    /// x = 0: Hadamard finite-part evaluation.
    Origin,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Away => write!(f, "away"),
            Regime::Near => write!(f, "near"),
            Regime::Origin => write!(f, "origin"),
        }
    }
}

/// Classifies x into its evaluation regime.
pub fn classify(x: f64, x_split: f64) -> Result<Regime> {
    if !x.is_finite() || x < 0.0 {
        return Err(OhtError::Domain(format!("x must be finite and >= 0, got {x}")));
    }
    if !(x_split > 0.0) {
        return Err(OhtError::Domain(format!("x_split must be > 0, got {x_split}")));
    }
    Ok(if x == 0.0 {
        Regime::Origin
    } else if x < x_split {
        Regime::Near
    } else {
        Regime::Away
    })
}

/// Parameters a transform evaluation actually used, echoed in the result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UsedParams {
    /// Gauss–Laguerre order n.
    pub laguerre_n: usize,
    /// Chebyshev interpolation degree N (near regime only).
    pub cheb_n: Option<usize>,
    /// Split point a of the near-regime decomposition.
    pub a: Option<f64>,
    /// Moment truncation index N₁ of the boundary-value solve, if one ran.
    pub moment_n1: Option<usize>,
    /// Regime-dispatch threshold.
    pub x_split: f64,
}

impl UsedParams {
    pub(crate) fn away(n: usize, x_split: f64) -> Self {
        Self { laguerre_n: n, cheb_n: None, a: None, moment_n1: None, x_split }
    }
}

/// Result of a transform evaluation.
#[derive(Debug, Clone)]
pub struct HilbertResult {
    /// Value of the transform.
    pub value: Complex64,
    /// Regime the value was computed in.
    pub regime: Regime,
    /// Parameters exactly as used.
    pub params: UsedParams,
    /// Heuristic error estimate from parameter halving (≥ 0).
    pub err_estimate: f64,
    /// Diagnostics and warnings accumulated during evaluation.
    pub notes: Vec<String>,
}
