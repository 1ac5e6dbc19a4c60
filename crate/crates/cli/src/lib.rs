//! Command-line front end for the `perpetuants` library.
//!
//! [`run`] parses arguments, writes results to the given streams and returns
//! the process exit code: 0 on success, 1 when a certificate or check fails,
//! 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use perpetuants::basis::{dim_series, kernel_oracle, span_equal, u_basis, InvariantElement};
use perpetuants::binforms::relations;
use perpetuants::perpetua::{
    perpetuant_basis, stroh_series, verify_complement, ComplementCertificate,
};
use perpetuants::symfunc::{leading_exponent_dense, q_n};
use perpetuants::{Error, Poly};
use rayon::prelude::*;
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "perpetuants",
    version,
    about = "U-invariants and perpetuants of binary forms in exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Divide each basis element by the gcd of its coefficients.
    #[arg(long, global = true)]
    primitive: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The basis U_k of S_{n,g}.
    Basis { n: usize, g: u32 },
    /// The perpetuant basis of degree n >= 3 and weight g.
    Perpetuants { n: usize, g: u32 },
    /// Dimensions N_{n,g} for g = 0..=gmax.
    Dims {
        n: usize,
        #[arg(long)]
        gmax: u32,
    },
    /// Coefficients of Stroh's series for g = 0..=gmax.
    Stroh {
        n: usize,
        #[arg(long)]
        gmax: u32,
    },
    /// Complement certificates for one weight or for g = 0..=gmax.
    Verify {
        n: usize,
        g: Option<u32>,
        #[arg(long, conflicts_with = "g")]
        gmax: Option<u32>,
    },
    /// The product q_n and its leading exponent.
    Qn { n: usize },
    /// The relations among a0, c2, c3, c4, B, C and D.
    Relations,
    /// ker D on bidegree (n, g) by brute force, compared with the U_k.
    Oracle { n: usize, g: u32 },
}

/// Failure of a command before any result is produced.
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfRange(_) | Error::TooManyParts { .. } => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type Outcome = std::result::Result<bool, Failure>;

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Basis { n, g } => {
            if *n == 0 {
                return Err(Failure::Usage("degree n must be at least 1".into()));
            }
            let elems = u_basis(*n, *g)?;
            write_elements(cli, out, *n, *g, &elems)
        }
        Command::Perpetuants { n, g } => {
            if *n < 3 {
                return Err(Failure::Usage(format!(
                    "perpetuants needs n >= 3; degree {n} is a special case: n = 1 has only a0 \
                     (weight 0) and n = 2 has exactly one perpetuant in every even weight g >= 2, \
                     2a0*ag - 2a1*a(g-1) + ... (use `basis 2 g`)"
                )));
            }
            let elems = perpetuant_basis(*n, *g)?;
            write_elements(cli, out, *n, *g, &elems)
        }
        Command::Dims { n, gmax } => {
            if *n == 0 {
                return Err(Failure::Usage("degree n must be at least 1".into()));
            }
            let s = dim_series(*n, *gmax)?;
            write_series(cli, out, &s.coefficients, "N")
        }
        Command::Stroh { n, gmax } => {
            if *n == 0 {
                return Err(Failure::Usage("degree n must be at least 1".into()));
            }
            let s = stroh_series(*n, *gmax)?;
            write_series(cli, out, &s.coefficients, "perpetuants")
        }
        Command::Verify { n, g, gmax } => {
            if *n < 3 {
                return Err(Failure::Usage(format!(
                    "verify needs n >= 3; degrees 1 and 2 are special cases, got {n}"
                )));
            }
            let weights: Vec<u32> = match (g, gmax) {
                (Some(g), None) => vec![*g],
                (None, Some(m)) => (0..=*m).collect(),
                _ => return Err(Failure::Usage("give a weight g or --gmax G".into())),
            };
            let certs: Vec<Result<ComplementCertificate, Error>> = weights
                .par_iter()
                .map(|&w| verify_complement(*n, w))
                .collect();
            let mut all_ok = true;
            for c in certs {
                let c = c?;
                all_ok &= c.ok;
                match cli.format {
                    Format::Text => writeln!(out, "{c}")?,
                    Format::Json => writeln!(out, "{}", to_json(&c)?)?,
                }
            }
            Ok(all_ok)
        }
        Command::Qn { n } => {
            if *n < 3 {
                return Err(Failure::Usage(format!(
                    "q_n is defined for n >= 3, got {n}"
                )));
            }
            let q = q_n(*n)?;
            let lead = leading_exponent_dense(&q, *n)?;
            match cli.format {
                Format::Text => {
                    writeln!(out, "q_{n} = {q}")?;
                    writeln!(out, "leading exponent: {}", tuple(&lead))?;
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"n": n, "q": q.to_string(), "leading_exponent": lead})
                )?,
            }
            Ok(true)
        }
        Command::Relations => {
            let rels = relations()?;
            let ok = rels.iter().all(|r| r.holds);
            match cli.format {
                Format::Text => {
                    for r in &rels {
                        writeln!(out, "{r}")?;
                    }
                }
                Format::Json => {
                    let items: Vec<_> = rels
                        .iter()
                        .map(|r| {
                            let polys: serde_json::Map<String, serde_json::Value> = r
                                .polys
                                .iter()
                                .map(|(l, p)| (l.clone(), p.to_string().into()))
                                .collect();
                            json!({"name": r.name, "holds": r.holds, "polys": polys})
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::Value::Array(items))?;
                }
            }
            Ok(ok)
        }
        Command::Oracle { n, g } => {
            if *n == 0 {
                return Err(Failure::Usage("degree n must be at least 1".into()));
            }
            let kernel = kernel_oracle(*n, *g);
            let ub: Vec<Poly> = u_basis(*n, *g)?.into_iter().map(|e| e.value).collect();
            let report = span_equal(&ub, &kernel)?;
            let shown: Vec<Poly> = kernel
                .iter()
                .map(|p| {
                    if cli.primitive {
                        p.primitive_part()
                    } else {
                        p.clone()
                    }
                })
                .collect();
            match cli.format {
                Format::Text => {
                    for p in &shown {
                        writeln!(out, "{p}")?;
                    }
                    writeln!(
                        out,
                        "span_equal(u_basis, kernel): {} (rank U = {}, rank kernel = {}, rank union = {})",
                        report.equal, report.rank_a, report.rank_b, report.rank_union
                    )?;
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({
                        "n": n,
                        "g": g,
                        "kernel": shown,
                        "span_equal": report,
                    })
                )?,
            }
            Ok(report.equal)
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> std::result::Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Failure::Internal(e.to_string()))
}

fn tuple(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn write_elements(
    cli: &Cli,
    out: &mut dyn Write,
    n: usize,
    g: u32,
    elems: &[InvariantElement],
) -> Outcome {
    let elems: Vec<InvariantElement> = elems
        .iter()
        .map(|e| {
            if cli.primitive {
                e.primitive()
            } else {
                e.clone()
            }
        })
        .collect();
    match cli.format {
        Format::Text => {
            writeln!(out, "# degree {n}, weight {g}: {} element(s)", elems.len())?;
            for e in &elems {
                writeln!(out, "{} = {}", e.label(), e.value)?;
            }
        }
        Format::Json => writeln!(out, "{}", to_json(&elems)?)?,
    }
    Ok(true)
}

fn write_series(cli: &Cli, out: &mut dyn Write, coeffs: &[u64], label: &str) -> Outcome {
    match cli.format {
        Format::Text => {
            writeln!(out, "g\t{label}")?;
            for (g, c) in coeffs.iter().enumerate() {
                writeln!(out, "{g}\t{c}")?;
            }
        }
        Format::Json => writeln!(out, "{}", to_json(&coeffs)?)?,
    }
    Ok(true)
}
