//! Command-line front end. `run` is the whole program minus process exit,
//! so it can be driven from tests with in-memory streams.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::certify::{certify, TamenessCertificate, Verdict};
use crate::construct::{assemble, default_kisin_depth, CurveSpec};
use crate::cyclo::{endo_structure, verify_pn_via_eigenvalues};
use crate::error::{Error, Result};
use crate::frobenius::{census, summarize, CensusConfig, ImageVerdict, DEFAULT_BUDGET};
use crate::poly::{IntPoly, DEFAULT_SEED};

/// Worker count for the Frobenius census; unset means one per core.
pub const WORKERS_ENV: &str = "TAME_TORSION_WORKERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "tame-torsion", version, about = "Hyperelliptic curves with tame mod-p torsion fields")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for equal-degree splitting.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a curve and its tameness certificate.
    Construct {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        prime: u64,
        /// Exponent N of the congruence modulo p^N; defaults to 2g + 2.
        #[arg(long)]
        kisin_depth: Option<u32>,
    },
    /// Endomorphism and splitting data for y^2 = x^n - 1 at p.
    Endo {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        prime: u64,
    },
    /// Re-derive the certificate for a curve spec (or certificate) file; `-` reads stdin.
    Certify {
        #[arg(long)]
        input: String,
    },
    /// Frobenius census: one record per good prime, then the image evidence.
    Frobenius {
        #[arg(long, conflicts_with = "coeffs", required_unless_present = "coeffs")]
        input: Option<String>,
        /// Comma-separated decimal coefficients of f, constant term first.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        /// Target prime p; taken from the curve spec when omitted.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        ell_bound: u64,
        /// Largest field size enumerated per point count.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Table of the eigenvalue check for P_n over a range of n.
    PnCheck {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
}

#[derive(Serialize)]
struct PnRow {
    n: u64,
    holds: bool,
}

struct Emitter<'a> {
    out: &'a mut dyn Write,
    format: Format,
}

impl Emitter<'_> {
    fn emit<T: Serialize>(&mut self, value: &T) -> io::Result<()> {
        let text = match self.format {
            Format::Json => serde_json::to_string(value),
            Format::Pretty => serde_json::to_string_pretty(value),
        }
        .map_err(io::Error::other)?;
        writeln!(self.out, "{text}")
    }
}

enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Error::MalformedInput(format!("stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| Error::MalformedInput(format!("{path}: {e}")))?;
    }
    Ok(text)
}

/// Accepts a bare curve spec or a certificate wrapping one.
pub fn parse_curve(text: &str) -> Result<CurveSpec> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    let curve = match value.get("curve") {
        Some(inner) if value.get("entries").is_some() => inner.clone(),
        _ => value,
    };
    serde_json::from_value(curve).map_err(|e| Error::MalformedInput(e.to_string()))
}

fn parse_coeffs(text: &str) -> Result<IntPoly> {
    let coeffs = text
        .split(',')
        .map(|c| c.trim().parse().map_err(|_| Error::MalformedInput(format!("bad coefficient {c:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let f = IntPoly::new(coeffs);
    if f.is_zero() {
        return Err(Error::MalformedInput("f is zero".into()));
    }
    Ok(f)
}

fn workers_from_env() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidParameter(format!("{WORKERS_ENV} must be a positive integer"))),
        Err(_) => Ok(None),
    }
}

fn report_certificate(cert: &TamenessCertificate, err: &mut dyn Write) -> io::Result<i32> {
    if cert.overall == Verdict::Pass {
        return Ok(EXIT_OK);
    }
    for entry in cert.failing_entries() {
        writeln!(err, "FAIL {} ({:?})", entry.scope, entry.justification)?;
    }
    Ok(EXIT_FAIL)
}

fn execute(config: &RunConfig, stdin: &mut dyn Read, out: &mut Emitter, err: &mut dyn Write) -> std::result::Result<i32, Failure> {
    match &config.command {
        Command::Construct { genus, prime, kisin_depth } => {
            let depth = kisin_depth.unwrap_or_else(|| default_kisin_depth(*genus));
            let cert = certify(&assemble(*genus, *prime, depth)?)?;
            out.emit(&cert)?;
            Ok(report_certificate(&cert, err)?)
        }
        Command::Endo { n, prime } => {
            out.emit(&endo_structure(*n, *prime)?)?;
            Ok(EXIT_OK)
        }
        Command::Certify { input } => {
            let curve = parse_curve(&read_input(input, stdin)?)?;
            let cert = certify(&curve)?;
            out.emit(&cert)?;
            Ok(report_certificate(&cert, err)?)
        }
        Command::Frobenius { input, coeffs, prime, ell_bound, budget } => {
            let (f, spec_prime) = match (input, coeffs) {
                (Some(path), _) => {
                    let curve = parse_curve(&read_input(path, stdin)?)?;
                    (curve.f, Some(curve.p))
                }
                (None, Some(c)) => (parse_coeffs(c)?, None),
                (None, None) => return Err(Error::InvalidParameter("--input or --coeffs is required".into()).into()),
            };
            let p = prime
                .or(spec_prime)
                .ok_or_else(|| Error::InvalidParameter("--prime is required with --coeffs".into()))?;
            let cfg = CensusConfig { budget: *budget, seed: config.seed, workers: workers_from_env()? };
            let records = census(&f, p, *ell_bound, &cfg)?;
            for record in &records {
                out.emit(record)?;
            }
            let evidence = summarize(&records, p, config.seed)?;
            out.emit(&evidence)?;
            Ok(if evidence.verdict == ImageVerdict::ObstructionFound { EXIT_FAIL } else { EXIT_OK })
        }
        Command::PnCheck { from, to } => {
            let rows = (*from..=*to)
                .map(|n| verify_pn_via_eigenvalues(n).map(|holds| PnRow { n, holds }))
                .collect::<Result<Vec<_>>>()?;
            out.emit(&rows)?;
            Ok(if rows.iter().all(|r| r.holds) { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

/// Runs one command; returns the process exit code.
pub fn run(config: &RunConfig, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut buffer = Vec::new();
    let result = {
        let mut emitter = Emitter { out: &mut buffer, format: config.format };
        execute(config, stdin, &mut emitter, stderr)
    };
    let code = match result {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_ERROR;
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_ERROR;
        }
    };
    let written = match &config.output {
        Some(path) => fs::write(path, &buffer),
        None => stdout.write_all(&buffer).and_then(|_| stdout.flush()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_ERROR;
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invoke(args: &[&str], stdin: &str) -> (i32, String, String) {
        let config = RunConfig::try_parse_from(std::iter::once("tame-torsion").chain(args.iter().copied())).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&config, &mut stdin.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn construct_passes() {
        let (code, out, _) = invoke(&["construct", "--genus", "1", "--prime", "5", "--kisin-depth", "2"], "");
        assert_eq!(code, EXIT_OK);
        let cert: TamenessCertificate = serde_json::from_str(&out).unwrap();
        assert_eq!(cert.overall, Verdict::Pass);
    }

    #[test]
    fn endo_reports_unit_group_order() {
        let (code, out, _) = invoke(&["endo", "--n", "6", "--prime", "7"], "");
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["unit_group_order"], "1296");
    }

    #[test]
    fn certify_round_trip_from_stdin() {
        let (_, cert, _) = invoke(&["construct", "--genus", "2", "--prime", "3"], "");
        let (code, again, _) = invoke(&["certify", "--input", "-"], &cert);
        assert_eq!(code, EXIT_OK);
        assert_eq!(again, cert);
    }

    #[test]
    fn tampered_residue_fails_and_names_entry() {
        let (_, cert, _) = invoke(&["construct", "--genus", "1", "--prime", "5", "--kisin-depth", "2"], "");
        let mut v: Value = serde_json::from_str(&cert).unwrap();
        let constraints = v["curve"]["constraints"].as_array_mut().unwrap();
        let c3 = constraints.iter_mut().find(|c| c["prime"] == 3).unwrap();
        c3["residue_poly"]["coeffs"][0] = Value::String("1".into());
        let (code, _, err) = invoke(&["certify", "--input", "-"], &v["curve"].to_string());
        assert_eq!(code, EXIT_FAIL);
        assert!(err.contains("FAIL ℓ=3"), "{err}");
    }

    #[test]
    fn malformed_input_is_an_error() {
        let (code, out, err) = invoke(&["certify", "--input", "-"], "{\"genus\": ");
        assert_eq!(code, EXIT_ERROR);
        assert!(out.is_empty());
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn frobenius_streams_records_then_evidence() {
        let (code, out, _) = invoke(&["frobenius", "--coeffs", "-1,0,0,1", "--prime", "5", "--ell-bound", "40"], "");
        assert_eq!(code, EXIT_OK);
        let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert!(lines.len() >= 6);
        assert_eq!(lines[0]["ell"], 7);
        assert!(lines.last().unwrap().get("verdict").is_some());
    }

    #[test]
    fn pn_check_table() {
        let (code, out, _) = invoke(&["pn-check", "--from", "3", "--to", "12"], "");
        assert_eq!(code, EXIT_OK);
        let rows: Vec<Value> = serde_json::from_str(&out).unwrap();
        assert_eq!(rows.len(), 10);
    }
}
