//! Command-line front end.
//!
//! Stdout carries only the requested artifact; banners and diagnostics go to
//! stderr. Exit status: 0 on success, 1 when a check fails or a computation
//! hits a domain error, 2 on a usage error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::combinat::{alpha_table, gamma_table};
use crate::direct::{k_poly, p_from_r, r_direct};
use crate::eval::{relative_difference, MFunction, MFunctionParams};
use crate::laurent::{Format, LambdaPoly};
use crate::realform::r_real;
use crate::verify::{cross_check, VerificationReport, DEFAULT_MAX_ELL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "titchweyl", version, about = "Exact m-function polynomials for the radial hydrogen problem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Real,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Latex,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Latex => Format::Latex,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    Original,
    Simplified,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute r_ℓ/(2ℓ+1) and p_ℓ.
    Compute {
        #[arg(long)]
        ell: u32,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, value_enum, env = "TITCHWEYL_FORMAT", default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Write the artifact here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cross-check both routes and all identities over a range of ℓ.
    Verify {
        #[arg(long, default_value_t = DEFAULT_MAX_ELL)]
        max_ell: u32,
        #[arg(long, default_value_t = 0)]
        min_ell: u32,
        #[arg(long)]
        json: bool,
    },
    /// Dump the α and γ coefficient tables for one ℓ.
    Tables {
        #[arg(long)]
        ell: u32,
        #[arg(long, value_enum, env = "TITCHWEYL_FORMAT", default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate m_ℓ(λ) numerically.
    Eval {
        #[arg(long)]
        ell: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        /// Complex λ as "RE,IM".
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        lambda: Complex64,
        #[arg(long, value_enum, default_value_t = Formula::Both)]
        formula: Formula,
    },
    /// Time both routes for ℓ = 1..=max-ell.
    Bench {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_ell: u32,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected \"RE,IM\", got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("bad real part: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("bad imaginary part: {e}"))?;
    Ok(Complex64::new(re, im))
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {}", msg.replace('\n', "; "));
            EXIT_FAILURE
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

enum Failure {
    Usage(String),
    Runtime(String),
}

fn runtime<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Runtime(e.to_string())
}

fn emit(artifact: &str, output: Option<PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(&path, artifact)
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => out.write_all(artifact.as_bytes()).map_err(runtime),
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Compute { ell, method, format, output } => compute(ell, method, format.into(), output, out, err),
        Command::Verify { max_ell, min_ell, json } => {
            if min_ell > max_ell {
                return Err(Failure::Usage(format!("--min-ell {min_ell} exceeds --max-ell {max_ell}")));
            }
            let report = cross_check(min_ell, max_ell).map_err(runtime)?;
            let body = if json {
                let mut s = serde_json::to_string_pretty(&report).map_err(runtime)?;
                s.push('\n');
                s
            } else {
                verify_table(&report)
            };
            emit(&body, None, out)?;
            let verdict = if report.overall { "PASS" } else { "FAIL" };
            let _ = writeln!(err, "{verdict}: ℓ = {}..={}", report.ell_min, report.ell_max);
            Ok(if report.overall { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Tables { ell, format, output } => {
            let body = match format {
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&tables_json(ell)).map_err(runtime)?;
                    s.push('\n');
                    s
                }
                other => tables_text(ell, other.into()),
            };
            emit(&body, output, out)?;
            Ok(EXIT_OK)
        }
        Command::Eval { ell, a, lambda, formula } => {
            let m = MFunction::new(MFunctionParams::new(ell, a)).map_err(runtime)?;
            let mut body = String::new();
            let orig = match formula {
                Formula::Original | Formula::Both => Some(m.m_original(lambda).map_err(runtime)?),
                Formula::Simplified => None,
            };
            let simp = match formula {
                Formula::Simplified | Formula::Both => Some(m.m_simplified(lambda).map_err(runtime)?),
                Formula::Original => None,
            };
            if let Some(v) = orig {
                body.push_str(&format!("original:   {}\n", fmt_complex(v)));
            }
            if let Some(v) = simp {
                body.push_str(&format!("simplified: {}\n", fmt_complex(v)));
            }
            if let (Some(o), Some(s)) = (orig, simp) {
                body.push_str(&format!("relative difference: {:.3e}\n", relative_difference(s, o)));
            }
            emit(&body, None, out)?;
            Ok(EXIT_OK)
        }
        Command::Bench { max_ell } => {
            emit(&bench(max_ell), None, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn fmt_complex(z: Complex64) -> String {
    format!("{:.16e} {} {:.16e}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
}

fn compute(
    ell: u32,
    method: Method,
    format: Format,
    output: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let direct = match method {
        Method::Direct | Method::Both => Some(r_direct(ell).map_err(runtime)?.r_over),
        Method::Real => None,
    };
    let real = match method {
        Method::Real | Method::Both => Some(r_real(ell).r_over),
        Method::Direct => None,
    };
    let mut code = EXIT_OK;
    if let (Some(d), Some(r)) = (&direct, &real) {
        if d == r {
            let _ = writeln!(err, "AGREE: direct and real-form routes match for ℓ = {ell}");
        } else {
            let _ = writeln!(err, "DISAGREE: direct and real-form routes differ for ℓ = {ell}");
            code = EXIT_FAILURE;
        }
    }
    let r_over = direct.clone().or_else(|| real.clone()).expect("at least one route ran");
    let p = p_from_r(ell, &r_over);

    let body = match format {
        Format::Json => {
            let mut doc = json!({
                "ell": ell,
                "method": format!("{method:?}").to_lowercase(),
                "r_over": r_over.to_json_value(),
                "p": p.to_json_value(),
                "k": k_poly(ell).to_json_value(),
            });
            if code != EXIT_OK {
                doc["r_over_real"] = real.as_ref().expect("both routes ran").to_json_value();
            }
            let mut s = serde_json::to_string_pretty(&doc).map_err(runtime)?;
            s.push('\n');
            s
        }
        _ => {
            let mut lines: Vec<String> = Vec::new();
            lines.extend(direct.iter().map(|d| d.render(format)));
            lines.extend(real.iter().map(|r| r.render(format)));
            lines.push(p.render(format));
            lines.join("\n") + "\n"
        }
    };
    emit(&body, output, out)?;
    Ok(code)
}

fn verify_table(report: &VerificationReport) -> String {
    let mut s = String::from("ell  agree  imag_zero  imag_identity  a_zero  structure  ms_direct  ms_real\n");
    for c in &report.per_ell {
        s.push_str(&format!(
            "{:>3}  {:>5}  {:>9}  {:>13}  {:>6}  {:>9}  {:>9.2}  {:>7.2}\n",
            c.ell, c.agree, c.imag_zero, c.imag_identity, c.vanishes_at_a_zero, c.structure, c.millis_direct, c.millis_real
        ));
        if let Some(d) = &c.diff {
            for line in d.lines() {
                s.push_str(&format!("     {line}\n"));
            }
        }
    }
    s.push_str(&format!("overall: {}\n", report.overall));
    s
}

fn scalar_json(q: &crate::exactnum::Rational) -> serde_json::Value {
    json!({"num": q.numer().to_string(), "den": q.denom().to_string()})
}

/// `{"ell", "alpha": [[{num,den}..]..], "gamma": [{"m", "coeffs": [poly..]}..]}`
pub fn tables_json(ell: u32) -> serde_json::Value {
    let alpha = alpha_table(ell);
    let rows: Vec<_> = (0..=alpha.max_k())
        .map(|k| alpha.row(k).iter().map(scalar_json).collect::<Vec<_>>())
        .collect();
    let gamma = (ell >= 1).then(|| gamma_table(ell));
    let gamma_rows: Vec<_> = gamma
        .iter()
        .flat_map(|g| {
            (1..=ell).map(move |m| {
                let coeffs: Vec<_> = (0..ell).map(|n| g.get(m, n).to_json_value()).collect();
                json!({"m": m, "coeffs": coeffs})
            })
        })
        .collect();
    json!({"ell": ell, "alpha": rows, "gamma": gamma_rows})
}

fn tables_text(ell: u32, format: Format) -> String {
    let alpha = alpha_table(ell);
    let mut s = String::new();
    for k in 0..=alpha.max_k() {
        let row: Vec<String> = alpha.row(k).iter().map(ToString::to_string).collect();
        s.push_str(&format!("alpha[{k}] = [{}]\n", row.join(", ")));
    }
    if ell >= 1 {
        let g = gamma_table(ell);
        for m in 1..=ell {
            for n in 0..ell {
                s.push_str(&format!("gamma[{m},{n}] = {}\n", g.get(m, n).render(format)));
            }
        }
    }
    s
}

fn bench(max_ell: u32) -> String {
    let mut s = String::from("ell  ms_direct  ms_real  max_bits\n");
    for ell in 1..=max_ell {
        let t0 = Instant::now();
        let d = r_direct(ell);
        let ms_d = t0.elapsed().as_secs_f64() * 1e3;
        let t1 = Instant::now();
        let r = r_real(ell);
        let ms_r = t1.elapsed().as_secs_f64() * 1e3;
        let bits = d
            .as_ref()
            .map(|d| d.r_over.max_coeff_bits().max(d.p_poly.max_coeff_bits()))
            .unwrap_or_else(|_| r.r_over.max_coeff_bits());
        s.push_str(&format!("{ell:>3}  {ms_d:>9.2}  {ms_r:>7.2}  {bits:>8}\n"));
    }
    s
}

/// Parses the JSON emitted by `compute --format json` back into polynomials.
pub fn parse_compute_json(src: &str) -> Result<(LambdaPoly, LambdaPoly), String> {
    let v: serde_json::Value = serde_json::from_str(src).map_err(|e| e.to_string())?;
    let r = LambdaPoly::from_json_fragment(v["r_over"].clone()).map_err(|e| e.to_string())?;
    let p = LambdaPoly::from_json_fragment(v["p"].clone()).map_err(|e| e.to_string())?;
    Ok((r, p))
}
