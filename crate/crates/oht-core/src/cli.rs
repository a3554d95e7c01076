//! Implementations behind the `oht` binary: single evaluations, error-table
//! reproduction against published reference values, grid sweeps, and the
//! Bessel identity checks. All output is byte-deterministic for identical
//! inputs (fixed column order, shortest round-trip floats, errors in
//! three-significant-digit scientific notation).

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::asymptotic::{expand_origin, expand_positive_x};
use crate::bessel::{eval_bessel_hilbert, BesselFamily, BesselKind};
use crate::error::{OhtError, Result};
use crate::oracle::{closed_form_exp, oracle_hadamard, oracle_rotated, OracleValue};
use crate::oscilland::{registry_get, Oscilland, Regime};
use crate::specfun::{bessel_jyk, struve_h, struve_h_neg1};
use crate::transform::{eval_auto, eval_away, eval_near, eval_origin, EvalParams};

/// Which evaluation path `cmd_eval` should take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Auto,
    Away,
    Near,
    Origin,
    Asymptotic,
}

impl std::str::FromStr for Method {
    type Err = OhtError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "away" => Ok(Method::Away),
            "near" => Ok(Method::Near),
            "origin" => Ok(Method::Origin),
            "asymptotic" => Ok(Method::Asymptotic),
            other => Err(OhtError::Param(format!(
                "unknown method `{other}` (expected auto|away|near|origin|asymptotic)"
            ))),
        }
    }
}

/// A single-point evaluation request.
#[derive(Debug, Clone)]
pub struct EvalRequest {
    pub label: String,
    pub omega: f64,
    pub x: f64,
    pub method: Method,
    pub laguerre_n: Option<usize>,
    pub cheb_n: Option<usize>,
    pub a: Option<f64>,
    pub check: bool,
}

/// Best available reference for a given oscilland and point.
fn reference_value(spec: &Oscilland, label: &str, omega: f64, x: f64) -> Result<OracleValue> {
    if x == 0.0 {
        return oracle_hadamard(spec, omega);
    }
    if label == "one" {
        return closed_form_exp(0.0, omega, x);
    }
    if let Some(arg) = label.strip_prefix("exp:") {
        if let Ok(c) = arg.parse::<f64>() {
            return closed_form_exp(c, omega, x);
        }
    }
    oracle_rotated(spec, omega, x)
}

/// Evaluates one point and renders the JSON object the CLI prints.
pub fn cmd_eval(req: &EvalRequest) -> Result<String> {
    let spec = registry_get(&req.label)?;
    let mut params = EvalParams::default();
    if let Some(n) = req.laguerre_n {
        params.laguerre_n = n;
    }
    if let Some(n) = req.cheb_n {
        params.cheb_n = n;
    }
    params.a = req.a;

    let (value, regime, used_n, used_cheb, used_a, est) = match req.method {
        Method::Auto => {
            let r = eval_auto(&spec, req.omega, req.x, &params)?;
            (r.value, r.regime, r.params.laguerre_n, r.params.cheb_n, r.params.a, r.err_estimate)
        }
        Method::Away => {
            let r = eval_away(&spec, req.omega, req.x, params.laguerre_n)?;
            (r.value, r.regime, r.params.laguerre_n, None, None, r.err_estimate)
        }
        Method::Near => {
            let r = eval_near(&spec, req.omega, req.x, &params)?;
            (r.value, r.regime, r.params.laguerre_n, r.params.cheb_n, r.params.a, r.err_estimate)
        }
        Method::Origin => {
            let r = eval_origin(&spec, req.omega, params.laguerre_n)?;
            (r.value, r.regime, r.params.laguerre_n, None, None, r.err_estimate)
        }
        Method::Asymptotic => {
            // Optimal truncation: smallest last term over the series length.
            let max_m = spec.series().len() - 1;
            let mut best: Option<crate::asymptotic::ExpansionResult> = None;
            for m in 1..=max_m.min(20) {
                let e = if req.x == 0.0 {
                    expand_origin(&spec, req.omega, m)?
                } else {
                    expand_positive_x(&spec, req.omega, req.x, m)?
                };
                if best.as_ref().map_or(true, |b| e.last_term_mag < b.last_term_mag) {
                    best = Some(e);
                }
            }
            let e = best.expect("series is non-empty");
            let regime = if req.x == 0.0 { Regime::Origin } else { Regime::Away };
            (e.value, regime, e.terms_used, None, None, e.last_term_mag)
        }
    };

    let mut obj = serde_json::Map::new();
    obj.insert("re".into(), serde_json::json!(value.re));
    obj.insert("im".into(), serde_json::json!(value.im));
    obj.insert("regime".into(), serde_json::json!(regime.to_string()));
    obj.insert("n".into(), serde_json::json!(used_n));
    obj.insert("N".into(), serde_json::json!(used_cheb));
    obj.insert("a".into(), serde_json::json!(used_a));
    obj.insert("err_estimate".into(), serde_json::json!(est));
    if req.check {
        let oracle = reference_value(&spec, &req.label, req.omega, req.x)?;
        obj.insert("oracle_re".into(), serde_json::json!(oracle.value.re));
        obj.insert("oracle_im".into(), serde_json::json!(oracle.value.im));
        obj.insert("abs_error".into(), serde_json::json!((value - oracle.value).norm()));
    }
    Ok(serde_json::Value::Object(obj).to_string())
}

/// Column parameterization of a reference error table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableColumns {
    /// Columns sweep x = 10^{−δ} at fixed ω = 10.
    Delta,
    /// Columns sweep ω at fixed x = 0.02.
    Omega,
}

/// A published reference error table: grid layout plus cell values.
pub struct ReferenceTable {
    pub id: u8,
    pub label: &'static str,
    /// Exponential rate for the closed-form reference; negative means the
    /// rotated-contour oracle supplies ground truth instead.
    pub exp_rate: f64,
    pub a: f64,
    pub rows: &'static [(usize, usize)],
    pub columns: TableColumns,
    pub col_values: &'static [f64],
    /// Published reference absolute errors, row-major.
    pub cells: &'static [[f64; 4]],
    /// Cells whose published values were evidently computed with a different
    /// split point than the caption states: (row, col, actual a). The table
    /// command stays caption-faithful and flags these; regressions may
    /// check them at the split point that reproduces the published digits.
    pub split_overrides: &'static [(usize, usize, f64)],
}

const ROWS_T123: &[(usize, usize)] = &[
    (4, 4),
    (4, 8),
    (4, 16),
    (8, 4),
    (8, 8),
    (8, 16),
    (16, 4),
    (16, 8),
    (16, 16),
];

const ROWS_T4: &[(usize, usize)] = &[
    (4, 8),
    (4, 16),
    (4, 32),
    (8, 8),
    (8, 16),
    (8, 32),
    (16, 8),
    (16, 16),
    (16, 32),
];

pub const TABLE_1: ReferenceTable = ReferenceTable {
    split_overrides: &[],
    id: 1,
    label: "exp:1",
    exp_rate: 1.0,
    a: 1.0,
    rows: ROWS_T123,
    columns: TableColumns::Delta,
    col_values: &[1.0, 2.0, 3.0, 4.0],
    cells: &[
        [1.22e-5, 3.80e-5, 3.52e-5, 3.42e-5],
        [3.30e-7, 1.83e-7, 1.73e-7, 1.72e-7],
        [3.30e-7, 1.83e-7, 1.73e-7, 1.72e-7],
        [1.19e-5, 3.80e-5, 3.52e-5, 3.41e-5],
        [2.69e-10, 1.09e-10, 1.04e-10, 1.03e-10],
        [2.86e-10, 1.09e-10, 9.96e-11, 9.87e-11],
        [1.19e-5, 3.80e-5, 3.52e-5, 3.41e-5],
        [2.37e-11, 2.65e-12, 9.36e-12, 8.00e-12],
        [1.30e-14, 2.97e-15, 2.58e-15, 2.54e-15],
    ],
};

pub const TABLE_2: ReferenceTable = ReferenceTable {
    id: 2,
    // The published (n=8, omega=5) entries match a = 2 to three significant
    // digits and are unreachable at a = 1 (the remainder rule's own
    // truncation there is 1.1e-7); rows 4 and 5 are (8,8) and (8,16).
    split_overrides: &[(4, 0, 2.0), (5, 0, 2.0)],
    label: "exp:1",
    exp_rate: 1.0,
    a: 1.0,
    rows: ROWS_T123,
    columns: TableColumns::Omega,
    col_values: &[5.0, 20.0, 80.0, 320.0],
    cells: &[
        [2.84e-5, 2.30e-5, 1.56e-5, 1.73e-5],
        [1.81e-5, 8.92e-10, 1.28e-11, 1.81e-11],
        [1.81e-5, 8.69e-10, 4.89e-15, 1.92e-20],
        [1.65e-5, 2.30e-5, 1.56e-5, 1.73e-5],
        [8.16e-10, 3.12e-11, 1.28e-11, 1.81e-11],
        [1.08e-10, 2.00e-14, 8.08e-24, 3.65e-25],
        [1.66e-5, 2.30e-5, 1.56e-5, 1.73e-5],
        [8.69e-11, 3.12e-11, 1.28e-11, 1.81e-11],
        [7.49e-11, 5.44e-21, 2.78e-25, 3.65e-25],
    ],
};

pub const TABLE_3: ReferenceTable = ReferenceTable {
    split_overrides: &[],
    id: 3,
    label: "sqrt_over_1p",
    exp_rate: -1.0,
    a: 1.0,
    rows: ROWS_T123,
    columns: TableColumns::Delta,
    col_values: &[1.0, 2.0, 3.0, 4.0],
    cells: &[
        [1.53e-3, 3.56e-3, 4.56e-3, 4.67e-3],
        [1.31e-6, 1.63e-7, 2.87e-6, 3.25e-6],
        [1.16e-7, 4.51e-8, 4.08e-8, 4.03e-8],
        [1.53e-3, 3.56e-3, 4.56e-3, 4.67e-3],
        [1.23e-6, 1.29e-7, 2.89e-6, 3.27e-6],
        [9.20e-11, 2.22e-11, 1.62e-11, 1.51e-11],
        [1.53e-3, 3.56e-3, 4.56e-3, 4.67e-3],
        [1.22e-6, 1.29e-7, 2.89e-6, 3.27e-6],
        [1.39e-12, 2.46e-12, 1.33e-12, 2.38e-12],
    ],
};

pub const TABLE_4: ReferenceTable = ReferenceTable {
    split_overrides: &[],
    id: 4,
    label: "sqrt_over_1p",
    exp_rate: -1.0,
    a: 1.0,
    rows: ROWS_T4,
    columns: TableColumns::Omega,
    col_values: &[5.0, 20.0, 80.0, 320.0],
    cells: &[
        [5.50e-6, 2.02e-6, 2.04e-6, 2.38e-6],
        [5.08e-6, 2.15e-10, 1.23e-12, 2.60e-12],
        [5.08e-6, 2.15e-10, 1.19e-15, 4.65e-21],
        [2.06e-6, 2.02e-6, 2.04e-6, 2.38e-6],
        [2.41e-8, 4.17e-13, 1.23e-12, 2.60e-12],
        [2.41e-8, 3.86e-15, 2.59e-24, 6.75e-25],
        [2.08e-6, 2.02e-6, 2.04e-6, 2.38e-6],
        [1.37e-11, 4.13e-13, 1.23e-12, 2.60e-12],
        [1.39e-11, 9.01e-22, 1.11e-24, 6.75e-25],
    ],
};

pub fn reference_table(id: u8) -> Result<&'static ReferenceTable> {
    match id {
        1 => Ok(&TABLE_1),
        2 => Ok(&TABLE_2),
        3 => Ok(&TABLE_3),
        4 => Ok(&TABLE_4),
        other => Err(OhtError::Param(format!("table id must be 1..=4, got {other}"))),
    }
}

/// Acceptance threshold for a cell given its published reference error:
/// max(5 × reference, 1e-11), floored at 5e-12 for sub-1e-13 references that
/// standard precision cannot reproduce.
pub fn cell_threshold(reference: f64) -> f64 {
    if reference < 1e-13 {
        5e-12
    } else {
        (5.0 * reference).max(1e-11)
    }
}

/// The (ω, x) pair a table column refers to.
pub fn table_point(table: &ReferenceTable, col: usize) -> (f64, f64) {
    match table.columns {
        TableColumns::Delta => (10.0, 10.0_f64.powf(-table.col_values[col])),
        TableColumns::Omega => (table.col_values[col], 0.02),
    }
}

/// Computes every cell of a reference table: |near-method value − truth|.
/// Always uses the caption's split point.
pub fn compute_table_errors(table: &ReferenceTable) -> Result<Vec<[f64; 4]>> {
    compute_table_errors_at(table, false)
}

/// As `compute_table_errors`, optionally substituting the split points that
/// reproduce the published digits for the cells listed in `split_overrides`.
pub fn compute_table_errors_at(table: &ReferenceTable, apply_overrides: bool) -> Result<Vec<[f64; 4]>> {
    let spec = registry_get(table.label)?;
    let mut truths = Vec::new();
    for col in 0..table.col_values.len() {
        let (omega, x) = table_point(table, col);
        let truth = if table.exp_rate >= 0.0 {
            closed_form_exp(table.exp_rate, omega, x)?
        } else {
            oracle_rotated(&spec, omega, x)?
        };
        truths.push(truth.value);
    }
    table
        .rows
        .par_iter()
        .enumerate()
        .map(|(row_idx, &(n, big_n))| {
            let mut row = [0.0; 4];
            for (col, truth) in truths.iter().enumerate() {
                let (omega, x) = table_point(table, col);
                let mut a = table.a;
                if apply_overrides {
                    if let Some(&(_, _, actual)) = table
                        .split_overrides
                        .iter()
                        .find(|&&(r, c, _)| r == row_idx && c == col)
                    {
                        a = actual;
                    }
                }
                let params = EvalParams {
                    laguerre_n: n,
                    cheb_n: big_n,
                    a: Some(a),
                    ..EvalParams::default()
                };
                let value = eval_near(&spec, omega, x, &params)?.value;
                row[col] = (value - truth).norm();
            }
            Ok(row)
        })
        .collect()
}

/// Renders the CSV for `oht table --id <id>`: the published grid structure,
/// one cell per (n, N, column), and a footer row counting threshold
/// exceedances per column.
pub fn cmd_table(id: u8) -> Result<String> {
    let table = reference_table(id)?;
    let errors = compute_table_errors(table)?;
    let mut out = String::new();
    let col_name = match table.columns {
        TableColumns::Delta => "delta",
        TableColumns::Omega => "omega",
    };
    out.push_str("n,N");
    for v in table.col_values {
        out.push_str(&format!(",{col_name}={v}"));
    }
    out.push('\n');
    let mut exceed = [0usize; 4];
    for (row_idx, &(n, big_n)) in table.rows.iter().enumerate() {
        out.push_str(&format!("{n},{big_n}"));
        for col in 0..4 {
            let err = errors[row_idx][col];
            out.push_str(&format!(",{err:.2e}"));
            if err > cell_threshold(table.cells[row_idx][col]) {
                exceed[col] += 1;
            }
        }
        out.push('\n');
    }
    out.push_str("flagged,");
    for count in exceed {
        out.push_str(&format!(",{count}"));
    }
    out.push('\n');
    Ok(out)
}

/// Output format for sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFormat {
    Csv,
    Json,
}

impl std::str::FromStr for SweepFormat {
    type Err = OhtError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(SweepFormat::Csv),
            "json" => Ok(SweepFormat::Json),
            other => Err(OhtError::Param(format!("unknown format `{other}` (csv|json)"))),
        }
    }
}

/// A grid sweep request: the data behind one error-vs-parameters figure.
#[derive(Debug, Clone)]
pub struct SweepRequest {
    pub label: String,
    pub omega_grid: Vec<f64>,
    pub x_grid: Vec<f64>,
    pub n_grid: Vec<usize>,
    pub cheb_grid: Vec<usize>,
    /// Near-regime split points; empty means the default choice.
    pub a_grid: Vec<f64>,
    pub format: SweepFormat,
}

impl SweepRequest {
    fn validate(&self) -> Result<()> {
        if self.omega_grid.is_empty()
            || self.x_grid.is_empty()
            || self.n_grid.is_empty()
            || self.cheb_grid.is_empty()
        {
            return Err(OhtError::Param("sweep grids must be non-empty".into()));
        }
        if self.omega_grid.iter().any(|&w| !(w > 0.0)) {
            return Err(OhtError::Param("sweep requires omega > 0".into()));
        }
        if self.x_grid.iter().any(|&x| !(x >= 0.0)) {
            return Err(OhtError::Param("sweep requires x >= 0".into()));
        }
        Ok(())
    }
}

/// Sweep output plus the number of failed cells.
pub struct SweepOutput {
    pub text: String,
    pub failures: usize,
}

struct SweepCell {
    omega: f64,
    x: f64,
    n: usize,
    cheb_n: usize,
    a: Option<f64>,
}

/// Runs a sweep: each record carries the method value, the reference value,
/// and the absolute error. Cells are evaluated concurrently; output order is
/// the lexicographic grid order regardless of completion order.
pub fn cmd_sweep(req: &SweepRequest) -> Result<SweepOutput> {
    req.validate()?;
    let spec = registry_get(&req.label)?;

    // References once per (omega, x).
    let mut truths: HashMap<(u64, u64), std::result::Result<Complex64, String>> = HashMap::new();
    for &omega in &req.omega_grid {
        for &x in &req.x_grid {
            truths.entry((omega.to_bits(), x.to_bits())).or_insert_with(|| {
                reference_value(&spec, &req.label, omega, x)
                    .map(|o| o.value)
                    .map_err(|e| e.to_string())
            });
        }
    }

    let mut cells = Vec::new();
    for &omega in &req.omega_grid {
        for &x in &req.x_grid {
            for &n in &req.n_grid {
                for &cheb_n in &req.cheb_grid {
                    if req.a_grid.is_empty() {
                        cells.push(SweepCell { omega, x, n, cheb_n, a: None });
                    } else {
                        for &a in &req.a_grid {
                            cells.push(SweepCell { omega, x, n, cheb_n, a: Some(a) });
                        }
                    }
                }
            }
        }
    }

    type CellOutcome = std::result::Result<(Complex64, Complex64, f64, Option<f64>), String>;
    let results: Vec<CellOutcome> = cells
        .par_iter()
        .map(|cell| {
            let params = EvalParams {
                laguerre_n: cell.n,
                cheb_n: cell.cheb_n,
                a: cell.a,
                ..EvalParams::default()
            };
            let truth = truths[&(cell.omega.to_bits(), cell.x.to_bits())]
                .clone()
                .map_err(|e| format!("reference failed: {e}"))?;
            let r = eval_auto(&spec, cell.omega, cell.x, &params).map_err(|e| e.to_string())?;
            Ok((r.value, truth, (r.value - truth).norm(), r.params.a))
        })
        .collect();

    let mut failures = 0usize;
    let mut text = String::new();
    match req.format {
        SweepFormat::Csv => {
            text.push_str(
                "label,omega,x,n,N,a,value_re,value_im,oracle_re,oracle_im,abs_error,error\n",
            );
            for (cell, result) in cells.iter().zip(&results) {
                match result {
                    Ok((v, t, err, used_a)) => {
                        let a_out =
                            cell.a.or(*used_a).map(|a| a.to_string()).unwrap_or_default();
                        text.push_str(&format!(
                            "{},{},{},{},{},{},{},{},{},{},{:.2e},\n",
                            req.label,
                            cell.omega,
                            cell.x,
                            cell.n,
                            cell.cheb_n,
                            a_out,
                            v.re,
                            v.im,
                            t.re,
                            t.im,
                            err
                        ));
                    }
                    Err(msg) => {
                        failures += 1;
                        let a_str = cell.a.map(|a| a.to_string()).unwrap_or_default();
                        text.push_str(&format!(
                            "{},{},{},{},{},{},,,,,,\"{}\"\n",
                            req.label, cell.omega, cell.x, cell.n, cell.cheb_n, a_str, msg
                        ));
                    }
                }
            }
        }
        SweepFormat::Json => {
            let mut records = Vec::new();
            for (cell, result) in cells.iter().zip(&results) {
                let mut obj = serde_json::Map::new();
                obj.insert("label".into(), serde_json::json!(req.label));
                obj.insert("omega".into(), serde_json::json!(cell.omega));
                obj.insert("x".into(), serde_json::json!(cell.x));
                obj.insert("n".into(), serde_json::json!(cell.n));
                obj.insert("N".into(), serde_json::json!(cell.cheb_n));
                obj.insert("a".into(), serde_json::json!(cell.a));
                match result {
                    Ok((v, t, err, _)) => {
                        obj.insert("value_re".into(), serde_json::json!(v.re));
                        obj.insert("value_im".into(), serde_json::json!(v.im));
                        obj.insert("oracle_re".into(), serde_json::json!(t.re));
                        obj.insert("oracle_im".into(), serde_json::json!(t.im));
                        obj.insert("abs_error".into(), serde_json::json!(err));
                    }
                    Err(msg) => {
                        failures += 1;
                        obj.insert("error".into(), serde_json::json!(msg));
                    }
                }
                records.push(serde_json::Value::Object(obj));
            }
            text = serde_json::Value::Array(records).to_string();
            text.push('\n');
        }
    }
    Ok(SweepOutput { text, failures })
}

/// Bessel identity check output plus the number of residuals over tolerance.
pub struct BesselCheckOutput {
    pub text: String,
    pub failures: usize,
}

/// Verifies the closed-form identities for ⨍ J_ν(ωt)/(t−x) dt on a grid:
/// ν = 0 against −(π/2)(H₀ + Y₀), ν = 1 against (π/2)(H₋₁ − Y₁).
pub fn cmd_bessel_check(omega_grid: &[f64], x_grid: &[f64]) -> Result<BesselCheckOutput> {
    if omega_grid.is_empty() || x_grid.is_empty() {
        return Err(OhtError::Param("bessel-check grids must be non-empty".into()));
    }
    let spec = registry_get("one")?;
    let mut text = String::from("family,nu,omega,x,value_re,value_im,reference,residual,tol\n");
    let mut failures = 0usize;
    for &nu in &[0u32, 1u32] {
        let tol = if nu == 0 { 1e-8 } else { 1e-7 };
        for &omega in omega_grid {
            for &x in x_grid {
                let r = eval_bessel_hilbert(
                    &spec,
                    omega,
                    x,
                    BesselKind { family: BesselFamily::J, nu },
                )?;
                let s = omega * x;
                let reference = if nu == 0 {
                    -std::f64::consts::FRAC_PI_2 * (struve_h(0, s)? + bessel_jyk(0, s)?.1)
                } else {
                    std::f64::consts::FRAC_PI_2 * (struve_h_neg1(s)? - bessel_jyk(1, s)?.1)
                };
                let residual = (r.value - Complex64::new(reference, 0.0)).norm();
                if residual > tol {
                    failures += 1;
                }
                text.push_str(&format!(
                    "J,{nu},{omega},{x},{},{},{},{residual:.2e},{tol:.0e}\n",
                    r.value.re, r.value.im, reference
                ));
            }
        }
    }
    Ok(BesselCheckOutput { text, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_origin_constant_json() {
        let req = EvalRequest {
            label: "one".into(),
            omega: 10.0,
            x: 0.0,
            method: Method::Origin,
            laguerre_n: None,
            cheb_n: None,
            a: None,
            check: false,
        };
        let json = cmd_eval(&req).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!((v["re"].as_f64().unwrap() - (-2.879_800_757_895_578_5)).abs() < 1e-12);
        assert!((v["im"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
        assert_eq!(v["regime"], "origin");
    }

    #[test]
    fn eval_check_reports_small_error() {
        let req = EvalRequest {
            label: "exp:1".into(),
            omega: 10.0,
            x: 0.1,
            method: Method::Auto,
            laguerre_n: None,
            cheb_n: None,
            a: None,
            check: true,
        };
        let json = cmd_eval(&req).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v["abs_error"].as_f64().unwrap() <= 1e-11);
        assert_eq!(v["regime"], "near");
    }

    #[test]
    fn eval_constant_away_matches_closed_form() {
        let req = EvalRequest {
            label: "one".into(),
            omega: 50.0,
            x: 1.0,
            method: Method::Auto,
            laguerre_n: None,
            cheb_n: None,
            a: None,
            check: true,
        };
        let json = cmd_eval(&req).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v["abs_error"].as_f64().unwrap() <= 1e-12);
    }

    #[test]
    fn eval_asymptotic_method_works() {
        let req = EvalRequest {
            label: "exp:1".into(),
            omega: 100.0,
            x: 1.0,
            method: Method::Asymptotic,
            laguerre_n: None,
            cheb_n: None,
            a: None,
            check: true,
        };
        let json = cmd_eval(&req).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        // Optimal truncation at omega = 100 does far better than 1e-6.
        assert!(v["abs_error"].as_f64().unwrap() <= 1e-6);
    }

    #[test]
    fn sweep_rejects_empty_grid() {
        let req = SweepRequest {
            label: "one".into(),
            omega_grid: vec![],
            x_grid: vec![1.0],
            n_grid: vec![4],
            cheb_grid: vec![8],
            a_grid: vec![],
            format: SweepFormat::Csv,
        };
        assert!(matches!(cmd_sweep(&req), Err(OhtError::Param(_))));
    }

    #[test]
    fn sweep_is_deterministic_and_ordered() {
        let req = SweepRequest {
            label: "exp:1".into(),
            omega_grid: vec![10.0, 50.0],
            x_grid: vec![1.0],
            n_grid: vec![2, 4],
            cheb_grid: vec![8],
            a_grid: vec![],
            format: SweepFormat::Csv,
        };
        let a = cmd_sweep(&req).unwrap();
        let b = cmd_sweep(&req).unwrap();
        assert_eq!(a.text, b.text);
        assert_eq!(a.failures, 0);
        let lines: Vec<&str> = a.text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("exp:1,10,1,2,8"));
        assert!(lines[4].starts_with("exp:1,50,1,4,8"));
    }

    #[test]
    fn sweep_error_decays_with_order() {
        // The data behind an error-vs-n panel: errors fall as n grows.
        let req = SweepRequest {
            label: "exp:1".into(),
            omega_grid: vec![50.0],
            x_grid: vec![1.0],
            n_grid: (2..=10).collect(),
            cheb_grid: vec![16],
            a_grid: vec![],
            format: SweepFormat::Json,
        };
        let out = cmd_sweep(&req).unwrap();
        let rows: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        let errs: Vec<f64> = rows
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["abs_error"].as_f64().unwrap())
            .collect();
        for w in errs.windows(2) {
            assert!(w[1] <= 10.0 * w[0] + 1e-15, "{errs:?}");
        }
        assert!(errs.last().unwrap() < &(errs[0] / 1e4), "{errs:?}");
    }

    #[test]
    fn split_point_sweep_improves_with_a() {
        // Error falls as the split point grows, at fixed n.
        let req = SweepRequest {
            label: "sqrt_over_1p".into(),
            omega_grid: vec![20.0],
            x_grid: vec![0.02],
            n_grid: vec![6],
            cheb_grid: vec![32],
            a_grid: vec![1.0, 2.0, 4.0],
            format: SweepFormat::Json,
        };
        let out = cmd_sweep(&req).unwrap();
        let rows: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        let errs: Vec<f64> = rows
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["abs_error"].as_f64().unwrap())
            .collect();
        assert_eq!(errs.len(), 3);
        assert!(errs[2] < errs[0], "larger a should help: {errs:?}");
    }

    #[test]
    fn table_structure_is_as_published() {
        let csv = cmd_table(1).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 11); // header + 9 rows + footer
        assert_eq!(lines[0], "n,N,delta=1,delta=2,delta=3,delta=4");
        assert!(lines[1].starts_with("4,4,"));
        assert!(lines[9].starts_with("16,16,"));
        assert!(lines[10].starts_with("flagged,"));
    }

    #[test]
    fn bessel_check_grid_passes() {
        let out = cmd_bessel_check(&[2.0, 5.0], &[1.0]).unwrap();
        assert_eq!(out.failures, 0, "{}", out.text);
    }
}
