//! Internal quadrature machinery for the oracles and the Bessel transforms:
//! double-exponential panels for endpoint singularities, fixed-order
//! Gauss–Legendre panels, and Wynn epsilon extrapolation of oscillatory
//! partial sums. Deliberately different machinery from the production
//! methods (fixed Gaussian rules), so cross-checks carry evidence.

use std::sync::OnceLock;

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Tanh-sinh quadrature of f over (0, b], robust to an integrable algebraic
/// or logarithmic singularity at 0. `level` sets the mesh h = 2^{−level}.
///
/// The abscissa is computed as x = b·σ(π sinh t) through the logistic σ in
/// a form that stays accurate when x is within ulps of 0.
pub(crate) fn tanh_sinh_zero_left<F>(f: &F, b: f64, level: u32) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let h = 0.5_f64.powi(level as i32);
    let t_max = 6.5;
    let kmax = (t_max / h).floor() as i64;
    let mut sum = ZERO;
    let mut comp = ZERO;
    for k in -kmax..=kmax {
        let t = k as f64 * h;
        let v = std::f64::consts::PI * t.sinh(); // = 2u
        let (sig, sig_c) = if v >= 0.0 {
            let e = (-v).exp();
            (1.0 / (1.0 + e), e / (1.0 + e))
        } else {
            let e = v.exp();
            (e / (1.0 + e), 1.0 / (1.0 + e))
        };
        let x = b * sig;
        if x <= 0.0 || x >= b {
            continue;
        }
        let w = b * std::f64::consts::PI * t.cosh() * sig * sig_c;
        if w < 1e-280 {
            continue;
        }
        let y = w * f(x) - comp;
        let t_acc = sum + y;
        comp = (t_acc - sum) - y;
        sum = t_acc;
    }
    sum * h
}

/// Result of a self-refining quadrature.
#[derive(Debug, Clone, Copy)]
pub(crate) struct QuadEstimate {
    pub value: Complex64,
    pub est_err: f64,
    pub converged: bool,
}

/// Refines `tanh_sinh_zero_left` over increasing levels until two successive
/// values differ by at most `target_abs` (or `max_level` is reached).
pub(crate) fn tanh_sinh_refine<F>(f: &F, b: f64, target_abs: f64, max_level: u32) -> QuadEstimate
where
    F: Fn(f64) -> Complex64,
{
    let mut prev = tanh_sinh_zero_left(f, b, 5);
    let mut est = f64::INFINITY;
    for level in 6..=max_level {
        let value = tanh_sinh_zero_left(f, b, level);
        est = (value - prev).norm();
        prev = value;
        if est <= target_abs {
            return QuadEstimate { value, est_err: est, converged: true };
        }
    }
    QuadEstimate { value: prev, est_err: est, converged: false }
}

/// Nodes and weights of the 16-point Gauss–Legendre rule on [−1, 1],
/// computed once by Newton iteration on P₁₆.
fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(16))
}

fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// 16-point Gauss–Legendre integral of f over [a, b].
pub(crate) fn gl_panel<F>(f: &F, a: f64, b: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (nodes, weights) = gl16();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = ZERO;
    for (&x, &w) in nodes.iter().zip(weights) {
        sum += w * f(mid + half * x);
    }
    sum * half
}

/// Wynn epsilon extrapolation of a sequence of partial sums. Returns the
/// best even-column estimate and the distance between the last two such
/// estimates as an error proxy.
pub(crate) fn wynn_epsilon(seq: &[Complex64]) -> (Complex64, f64) {
    if seq.is_empty() {
        return (ZERO, f64::INFINITY);
    }
    if seq.len() == 1 {
        return (seq[0], f64::INFINITY);
    }
    let scale = seq.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    let mut prev = vec![ZERO; seq.len() + 1];
    let mut curr = seq.to_vec();
    let mut best = *curr.last().unwrap();
    let mut est = f64::INFINITY;
    let mut column = 0usize;
    // Deep tables amplify rounding noise; stop as soon as an entry stops
    // being finite and cap the depth.
    'columns: while curr.len() > 1 && column < 30 {
        let mut next = Vec::with_capacity(curr.len() - 1);
        for i in 0..curr.len() - 1 {
            let den = curr[i + 1] - curr[i];
            if den.norm() < 1e-15 * scale {
                if column % 2 == 0 {
                    // An even column holds approximants; it has converged
                    // to machine level.
                    return (curr[i + 1], den.norm().max(1e-16 * scale));
                }
                // Odd columns hold reciprocal differences; a vanishing
                // denominator there just means the table is exhausted.
                break 'columns;
            }
            let entry = prev[i + 1] + den.inv();
            if !entry.re.is_finite() || !entry.im.is_finite() {
                break 'columns;
            }
            next.push(entry);
        }
        prev = curr;
        curr = next;
        column += 1;
        if column % 2 == 0 {
            let cand = *curr.last().unwrap();
            est = (cand - best).norm();
            best = cand;
        }
    }
    (best, est)
}

/// Integrates f over [start, ∞) where f oscillates with the given panel
/// length (typically a half period): fixed panels are summed and the
/// partial-sum sequence is accelerated with the epsilon algorithm.
pub(crate) fn oscillatory_tail<F>(
    f: &F,
    start: f64,
    panel_len: f64,
    max_panels: usize,
    tol_abs: f64,
) -> QuadEstimate
where
    F: Fn(f64) -> Complex64,
{
    let mut partials: Vec<Complex64> = Vec::with_capacity(max_panels);
    let mut acc = ZERO;
    let mut small_streak = 0usize;
    let mut best = QuadEstimate { value: ZERO, est_err: f64::INFINITY, converged: false };
    for k in 0..max_panels {
        let a = start + k as f64 * panel_len;
        let c = gl_panel(f, a, a + panel_len);
        acc += c;
        partials.push(acc);
        // Absolutely convergent tails need no acceleration.
        if c.norm() <= 0.01 * tol_abs {
            small_streak += 1;
            if small_streak >= 2 {
                return QuadEstimate { value: acc, est_err: c.norm(), converged: true };
            }
        } else {
            small_streak = 0;
        }
        if partials.len() >= 12 && partials.len() % 4 == 0 {
            let window = &partials[partials.len().saturating_sub(48)..];
            let (value, est) = wynn_epsilon(window);
            if est <= tol_abs && est <= best.est_err {
                return QuadEstimate { value, est_err: est, converged: true };
            }
            if est < best.est_err {
                best = QuadEstimate { value, est_err: est, converged: false };
            }
        }
    }
    best
}
