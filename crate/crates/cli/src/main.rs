//! Command-line surface: build intelligent states, run the verification
//! suite, scan α, and emit CSV tables and SVG plots.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or IO error.

mod csvfmt;
mod svg;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use su3int::analysis::{alpha_grid, scan_alpha};
use su3int::coupling::{intelligent_state_coupled, CouplingTriple};
use su3int::{alpha_is_regular, LAMBDA_CAP};

#[derive(Parser)]
#[command(
    name = "su3int",
    version,
    about = "su(3) intelligent states of the symmetric irreps: construction, verification, and alpha scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Run the saturation / eigenvalue / variance / MUB / isotropy /
    /// rank / oracle checks for one irrep.
    Verify {
        /// Irrep label λ of (λ,0).
        #[arg(long)]
        lambda: u32,
        /// Comma-separated α values to test at.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true,
              default_values_t = [0.5, -0.5])]
        alpha: Vec<f64>,
        /// Residual tolerance for the pass/fail verdicts.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Scan α for one coupling triple and write CSV and/or SVG.
    Scan {
        #[arg(long)]
        lambda1: u32,
        #[arg(long)]
        lambda2: u32,
        #[arg(long)]
        lambda3: u32,
        #[arg(long, allow_negative_numbers = true, default_value_t = -5.0)]
        alpha_min: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 5.0)]
        alpha_max: f64,
        /// Approximate number of grid points (densified near α = ±1).
        #[arg(long, default_value_t = 400)]
        points: usize,
        /// Half-width of the excluded bands around α = ±1.
        #[arg(long, default_value_t = 1e-6)]
        guard_band: f64,
        /// Output path; the extension is adjusted per format.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Write the amplitudes of one intelligent state as CSV.
    State {
        #[arg(long)]
        lambda1: u32,
        #[arg(long)]
        lambda2: u32,
        #[arg(long)]
        lambda3: u32,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn write_file(path: &Path, contents: &str) -> Result<(), ExitCode> {
    std::fs::write(path, contents).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn check_triple(l1: u32, l2: u32, l3: u32) -> Result<CouplingTriple, ExitCode> {
    let triple = CouplingTriple::new(l1, l2, l3);
    if triple.lambda() > LAMBDA_CAP {
        return Err(usage_error(&format!(
            "lambda1+lambda2+lambda3 = {} exceeds the cap of {LAMBDA_CAP}",
            triple.lambda()
        )));
    }
    Ok(triple)
}

fn cmd_verify(lambda: u32, alphas: &[f64], tol: f64) -> ExitCode {
    if lambda > LAMBDA_CAP {
        return usage_error(&format!("lambda = {lambda} exceeds the cap of {LAMBDA_CAP}"));
    }
    if !(tol > 0.0) {
        return usage_error("tol must be positive");
    }
    for &a in alphas {
        if !alpha_is_regular(a) {
            return usage_error(&format!(
                "alpha = {a} lies inside the guard band around |alpha| = 1"
            ));
        }
    }

    let results = match verify::run_checks(lambda, alphas, tol) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };

    println!("verify lambda = {lambda}, alpha = {alphas:?}, tol = {tol:e}");
    let mut all_pass = true;
    for r in &results {
        let cmp = match r.sense {
            verify::Sense::AtMost => "<=",
            verify::Sense::AtLeast => ">=",
        };
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        all_pass &= r.passed();
        println!(
            "{:<24} {:>13.6e}  {} {:>8.1e}  {}",
            r.name, r.metric, cmp, r.threshold, verdict
        );
    }
    if all_pass {
        println!("all checks passed");
        ExitCode::SUCCESS
    } else {
        println!("verification FAILED");
        ExitCode::from(1)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    triple: CouplingTriple,
    alpha_min: f64,
    alpha_max: f64,
    points: usize,
    guard_band: f64,
    out: &Path,
    format: Format,
) -> ExitCode {
    if alpha_min >= alpha_max {
        return usage_error("alpha-min must be below alpha-max");
    }
    if points < 2 {
        return usage_error("points must be at least 2");
    }
    if !(guard_band > 0.0) {
        return usage_error("guard-band must be positive");
    }

    let grid = alpha_grid(alpha_min, alpha_max, points, guard_band);
    if grid.is_empty() {
        return usage_error("the requested range contains no admissible alpha");
    }
    let records = match scan_alpha(&triple, &grid) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };

    if matches!(format, Format::Csv | Format::Both) {
        let path = out.with_extension("csv");
        if let Err(code) = write_file(&path, &csvfmt::scan_csv(&records)) {
            return code;
        }
        println!("wrote {} ({} rows)", path.display(), records.len());
    }
    if matches!(format, Format::Svg | Format::Both) {
        let path = out.with_extension("svg");
        if let Err(code) = write_file(&path, &svg::render_scan(&records, &triple)) {
            return code;
        }
        println!("wrote {}", path.display());
    }
    ExitCode::SUCCESS
}

fn cmd_state(triple: CouplingTriple, alpha: f64, out: &Path) -> ExitCode {
    let state = match intelligent_state_coupled(&triple, alpha) {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    if let Err(code) = write_file(out, &csvfmt::state_csv(&state)) {
        return code;
    }
    println!(
        "wrote {} (dim {}, kappa = {} + {}i)",
        out.display(),
        state.vector.len(),
        state.kappa.re,
        state.kappa.im
    );
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { lambda, alpha, tol } => cmd_verify(lambda, &alpha, tol),
        Command::Scan {
            lambda1,
            lambda2,
            lambda3,
            alpha_min,
            alpha_max,
            points,
            guard_band,
            out,
            format,
        } => match check_triple(lambda1, lambda2, lambda3) {
            Ok(t) => cmd_scan(t, alpha_min, alpha_max, points, guard_band, &out, format),
            Err(code) => code,
        },
        Command::State {
            lambda1,
            lambda2,
            lambda3,
            alpha,
            out,
        } => match check_triple(lambda1, lambda2, lambda3) {
            Ok(t) => cmd_state(t, alpha, &out),
            Err(code) => code,
        },
    }
}
