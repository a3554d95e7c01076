//! `oht` — one-sided oscillatory Hilbert transforms from the command line.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use oht_core::cli::{
    cmd_bessel_check, cmd_eval, cmd_sweep, cmd_table, EvalRequest, Method, SweepFormat,
    SweepRequest,
};
use oht_core::OhtError;

#[derive(Parser)]
#[command(
    name = "oht",
    about = "Compute one-sided oscillatory Hilbert transforms \
             H+(f(t) e^{i w t})(x) with regime-dispatched quadrature",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutArg {
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the transform at one point; prints a JSON object.
    Eval {
        /// Oscilland label: one | exp:`<c>` | sqrt_over_1p | cos_over_cbrt.
        #[arg(long = "f")]
        label: String,
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        x: f64,
        /// auto | away | near | origin | asymptotic.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Gauss-Laguerre order.
        #[arg(long)]
        n: Option<usize>,
        /// Chebyshev degree (near regime).
        #[arg(long = "N")]
        cheb_n: Option<usize>,
        /// Near-regime split point (> x).
        #[arg(long)]
        a: Option<f64>,
        /// Also evaluate the reference oracle and report the error.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Reproduce a published error table (CSV with threshold flags).
    Table {
        /// Table id, 1..=4.
        #[arg(long)]
        id: u8,
        #[command(flatten)]
        out: OutArg,
    },
    /// Emit error-vs-parameter sweep data (the material behind the figures).
    Sweep {
        /// Oscilland label.
        #[arg(long = "f")]
        label: String,
        /// Comma list of frequencies, e.g. 10,50,100,500.
        #[arg(long, default_value = "10,50,100,500")]
        omega: String,
        /// Comma list of singularity positions (x >= 0).
        #[arg(long, default_value = "1")]
        x: String,
        /// Laguerre orders: comma list and lo:hi ranges, e.g. 2:10.
        #[arg(long, default_value = "2:10")]
        n: String,
        /// Chebyshev degrees.
        #[arg(long = "N", default_value = "32")]
        cheb_n: String,
        /// Optional comma list of near-regime split points.
        #[arg(long)]
        a: Option<String>,
        /// csv | json.
        #[arg(long, default_value = "csv")]
        format: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check the closed-form Bessel-oscillator identities on a grid.
    BesselCheck {
        #[arg(long, default_value = "2,5,10")]
        omega: String,
        #[arg(long, default_value = "0.5,1,2")]
        x: String,
        #[command(flatten)]
        out: OutArg,
    },
}

fn parse_f64_grid(text: &str) -> Result<Vec<f64>, OhtError> {
    text.split(',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| OhtError::Param(format!("bad grid entry `{s}`")))
        })
        .collect()
}

fn parse_usize_grid(text: &str) -> Result<Vec<usize>, OhtError> {
    let mut out = Vec::new();
    for item in text.split(',').filter(|s| !s.is_empty()) {
        let item = item.trim();
        if let Some((lo, hi)) = item.split_once(':') {
            let lo: usize = lo
                .parse()
                .map_err(|_| OhtError::Param(format!("bad range start `{lo}`")))?;
            let hi: usize = hi
                .parse()
                .map_err(|_| OhtError::Param(format!("bad range end `{hi}`")))?;
            if hi < lo {
                return Err(OhtError::Param(format!("empty range `{item}`")));
            }
            out.extend(lo..=hi);
        } else {
            out.push(
                item.parse()
                    .map_err(|_| OhtError::Param(format!("bad grid entry `{item}`")))?,
            );
        }
    }
    Ok(out)
}

fn emit(out: &OutArg, text: &str) -> Result<(), OhtError> {
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| OhtError::Eval(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| {
                    if !text.ends_with('\n') {
                        stdout.write_all(b"\n")
                    } else {
                        Ok(())
                    }
                })
                .map_err(|e| OhtError::Eval(format!("cannot write stdout: {e}")))
        }
    }
}

fn exit_code_for(err: &OhtError) -> u8 {
    match err {
        OhtError::NotRegistered(_) | OhtError::Param(_) | OhtError::Domain(_) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<u8, OhtError> {
    match cli.command {
        Command::Eval { label, omega, x, method, n, cheb_n, a, check, out } => {
            let req = EvalRequest {
                label,
                omega,
                x,
                method: method.parse::<Method>()?,
                laguerre_n: n,
                cheb_n,
                a,
                check,
            };
            emit(&out, &cmd_eval(&req)?)?;
            Ok(0)
        }
        Command::Table { id, out } => {
            emit(&out, &cmd_table(id)?)?;
            Ok(0)
        }
        Command::Sweep { label, omega, x, n, cheb_n, a, format, out } => {
            let req = SweepRequest {
                label,
                omega_grid: parse_f64_grid(&omega)?,
                x_grid: parse_f64_grid(&x)?,
                n_grid: parse_usize_grid(&n)?,
                cheb_grid: parse_usize_grid(&cheb_n)?,
                a_grid: a.as_deref().map(parse_f64_grid).transpose()?.unwrap_or_default(),
                format: format.parse::<SweepFormat>()?,
            };
            let result = cmd_sweep(&req)?;
            emit(&out, &result.text)?;
            Ok(if result.failures > 0 { 1 } else { 0 })
        }
        Command::BesselCheck { omega, x, out } => {
            let result = cmd_bessel_check(&parse_f64_grid(&omega)?, &parse_f64_grid(&x)?)?;
            emit(&out, &result.text)?;
            Ok(if result.failures > 0 { 1 } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
