//! Command-line surface: rank certificates, witness construction, censuses,
//! numeric decompositions, and audit-mode verification.
//!
//! Machine output goes to standard output, human logs to standard error.
//! Exit codes: 0 success, 1 user error (malformed input, bad flag
//! combinations, unwritable paths), 2 internal check failure (a hypothesis or
//! verification step that should have held did not).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use waring::census::{run_census, write_report, CensusConfig, ReportFormat};
use waring::hypdecide::DEFAULT_TRIALS;
use waring::rank::{decompose, rank_certificate, Evidence, RankCertificate};
use waring::witnesses::{
    default_intersection_pair, witness_dminus1, witness_generic_span, witness_hyperbolic,
    witness_intersection, WitnessForm,
};
use waring::{BinaryForm, Distribution, Error, PointSetForm, Result, SCHEMA_VERSION};

#[derive(Parser)]
#[command(
    name = "waring",
    version,
    about = "Exact real and complex Waring ranks of binary forms, with certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a rank certificate for a form and print it as JSON.
    Rank {
        /// Form as a file path or inline JSON ({"degree":..,"basis":..,"coeffs":[..]})
        #[arg(long)]
        form: String,
        /// Trial budget for randomized hyperbolic-element searches
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u32,
        /// Seed for the randomized searches
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Construct a certified witness form of one of the four families.
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long)]
        degree: usize,
        /// Seed for the seeded constructions (hyperbolic, generic-span, dminus1)
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Kernel support for --kind intersection: point-set JSON
        /// ({"points":[{"alpha":..,"beta":..}],"quadratics":[["b","c"]]}),
        /// path or inline; defaults to a built-in pair for the degree
        #[arg(long)]
        w: Option<String>,
        /// Real support for --kind intersection; same format as --w
        #[arg(long)]
        s: Option<String>,
    },
    /// Run a seeded rank census and write or print the report.
    Census {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report file; without it the report JSON goes to standard output
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Worker threads for the sample loop (0 = all cores); the report is
        /// identical for every value
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u32,
        #[arg(long, value_enum, default_value_t = DistArg::Uniform)]
        distribution: DistArg,
        /// Stability probes per exactly-classified sample (0 disables)
        #[arg(long, default_value_t = 0)]
        probes: u32,
        /// Redraw non-squarefree samples instead of bucketing them
        #[arg(long)]
        resample_on_reject: bool,
        /// Record wall-clock milliseconds in the report; off by default so
        /// reports compare byte for byte
        #[arg(long)]
        timing: bool,
    },
    /// Extract a numeric power-sum decomposition along a hyperbolic apolar
    /// witness.
    Decompose {
        /// Form as a file path or inline JSON
        #[arg(long)]
        form: String,
        /// Hyperbolic apolar witness form (path or inline JSON); taken from a
        /// fresh rank certificate when omitted
        #[arg(long)]
        witness: Option<String>,
        /// Root refinement width 2^-bits; the residual must come in under
        /// 2^(-bits/2) times the largest coefficient
        #[arg(long, default_value_t = 64)]
        precision_bits: u32,
        /// Trial budget when the witness comes from a fresh certificate
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-verify a serialized artifact from scratch: exit 0 only if every
    /// recorded hypothesis and evidence item holds under fresh computation.
    Verify {
        /// Witness JSON file (as printed by the witness subcommand)
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Rank certificate JSON file (as printed by the rank subcommand)
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    Hyperbolic,
    GenericSpan,
    Intersection,
    Dminus1,
}

impl WitnessKind {
    fn name(self) -> &'static str {
        match self {
            WitnessKind::Hyperbolic => "hyperbolic",
            WitnessKind::GenericSpan => "generic-span",
            WitnessKind::Intersection => "intersection",
            WitnessKind::Dminus1 => "dminus1",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum DistArg {
    Uniform,
    GaussApprox,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 1 for bad input or arguments, 2 for checks that failed internally.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::IllConditioned { .. }
        | Error::HypothesisFailed(_)
        | Error::VerifyFailed(_)
        | Error::ResampleExhausted(_)
        | Error::Internal(_) => 2,
        _ => 1,
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Rank { form, trials, seed } => cmd_rank(&form, trials, seed),
        Command::Witness {
            kind,
            degree,
            seed,
            w,
            s,
        } => cmd_witness(kind, degree, seed, w.as_deref(), s.as_deref()),
        Command::Census {
            degree,
            samples,
            seed,
            out,
            format,
            jobs,
            trials,
            distribution,
            probes,
            resample_on_reject,
            timing,
        } => {
            let mut config = CensusConfig::new(degree, samples, seed);
            config.trials = trials;
            config.distribution = match distribution {
                DistArg::Uniform => Distribution::Uniform,
                DistArg::GaussApprox => Distribution::GaussApprox,
            };
            config.stability_probes = probes;
            config.resample_on_reject = resample_on_reject;
            cmd_census(&config, out.as_deref(), format, jobs, timing)
        }
        Command::Decompose {
            form,
            witness,
            precision_bits,
            trials,
            seed,
        } => cmd_decompose(&form, witness.as_deref(), precision_bits, trials, seed),
        Command::Verify {
            witness,
            certificate,
        } => cmd_verify(witness.as_deref(), certificate.as_deref()),
    }
}

/// Version plus resolved configuration, on standard error, for every run.
fn log_run(subcommand: &str, config: serde_json::Value) {
    eprintln!(
        "waring {} (schema {}) {subcommand} {config}",
        env!("CARGO_PKG_VERSION"),
        SCHEMA_VERSION,
    );
}

/// Accepts inline JSON (first byte '{') or a path to a JSON file.
fn load_json_arg(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        Ok(std::fs::read_to_string(arg)?)
    }
}

fn load_form(arg: &str) -> Result<BinaryForm> {
    Ok(serde_json::from_str(&load_json_arg(arg)?)?)
}

fn load_pointset(arg: &str) -> Result<PointSetForm> {
    Ok(serde_json::from_str(&load_json_arg(arg)?)?)
}

fn cmd_rank(form: &str, trials: u32, seed: u64) -> Result<()> {
    let f = load_form(form)?;
    log_run(
        "rank",
        json!({ "degree": f.degree(), "trials": trials, "seed": seed }),
    );
    let certificate = rank_certificate(&f, trials, seed)?;
    println!("{}", serde_json::to_string_pretty(&certificate)?);
    Ok(())
}

fn cmd_witness(
    kind: WitnessKind,
    degree: usize,
    seed: u64,
    w: Option<&str>,
    s: Option<&str>,
) -> Result<()> {
    if !matches!(kind, WitnessKind::Intersection) && (w.is_some() || s.is_some()) {
        return Err(Error::BadArgument(
            "--w and --s apply only to --kind intersection".into(),
        ));
    }
    log_run(
        "witness",
        json!({
            "kind": kind.name(),
            "degree": degree,
            "seed": seed,
            "w": w.is_some(),
            "s": s.is_some(),
        }),
    );
    let witness = match kind {
        WitnessKind::Hyperbolic => witness_hyperbolic(degree, seed)?,
        WitnessKind::GenericSpan => witness_generic_span(degree, seed)?,
        WitnessKind::Dminus1 => witness_dminus1(degree, seed)?,
        WitnessKind::Intersection => {
            let (w, s) = match (w, s) {
                (Some(wt), Some(st)) => (load_pointset(wt)?, load_pointset(st)?),
                (wt, st) => {
                    let (dw, ds) = default_intersection_pair(degree)?;
                    (
                        wt.map(load_pointset).transpose()?.unwrap_or(dw),
                        st.map(load_pointset).transpose()?.unwrap_or(ds),
                    )
                }
            };
            witness_intersection(degree, &w, &s)?
        }
    };
    println!("{}", serde_json::to_string_pretty(&witness)?);
    Ok(())
}

fn cmd_census(
    config: &CensusConfig,
    out: Option<&Path>,
    format: FormatArg,
    jobs: usize,
    timing: bool,
) -> Result<()> {
    log_run(
        "census",
        json!({
            "config": serde_json::to_value(config)?,
            "jobs": jobs,
            "format": match format { FormatArg::Json => "json", FormatArg::Csv => "csv" },
            "out": out.map(|p| p.display().to_string()),
            "timing": timing,
        }),
    );
    let started = std::time::Instant::now();
    let mut report = run_census(config, jobs)?;
    if timing {
        report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    }
    eprintln!("{:<24} {:>8}", "outcome", "count");
    for (label, count) in &report.counts {
        eprintln!("{label:<24} {count:>8}");
    }
    match out {
        Some(path) => {
            let fmt = match format {
                FormatArg::Json => ReportFormat::Json,
                FormatArg::Csv => ReportFormat::Csv,
            };
            write_report(&report, path, fmt)?;
            eprintln!("report written to {}", path.display());
        }
        None => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(())
}

fn cmd_decompose(
    form: &str,
    witness: Option<&str>,
    precision_bits: u32,
    trials: u32,
    seed: u64,
) -> Result<()> {
    let f = load_form(form)?;
    log_run(
        "decompose",
        json!({
            "degree": f.degree(),
            "precision_bits": precision_bits,
            "trials": trials,
            "seed": seed,
            "witness_supplied": witness.is_some(),
        }),
    );
    let h = match witness {
        Some(arg) => load_form(arg)?,
        None => certificate_witness(&rank_certificate(&f, trials, seed)?)?,
    };
    let decomposition = decompose(&f, &h, precision_bits)?;
    println!("{}", serde_json::to_string_pretty(&decomposition)?);
    Ok(())
}

/// First upper witness in the evidence list. The engine records upper
/// witnesses in ascending rank order, so the first is the tightest.
fn certificate_witness(certificate: &RankCertificate) -> Result<BinaryForm> {
    for item in &certificate.evidence {
        if let Evidence::UpperWitness { witness, .. } = item {
            return Ok(witness.clone());
        }
    }
    Err(Error::BadArgument(
        "certificate carries no apolar witness; pass one with --witness".into(),
    ))
}

fn cmd_verify(witness: Option<&Path>, certificate: Option<&Path>) -> Result<()> {
    match (witness, certificate) {
        (Some(path), None) => {
            log_run("verify", json!({ "witness": path.display().to_string() }));
            let w: WitnessForm = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            w.verify()?;
            println!(
                "{}",
                json!({ "schema": SCHEMA_VERSION, "kind": "witness", "verified": true })
            );
        }
        (None, Some(path)) => {
            log_run("verify", json!({ "certificate": path.display().to_string() }));
            let c: RankCertificate = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            c.verify()?;
            println!(
                "{}",
                json!({ "schema": SCHEMA_VERSION, "kind": "certificate", "verified": true })
            );
        }
        _ => {
            return Err(Error::BadArgument(
                "pass exactly one of --witness or --certificate".into(),
            ))
        }
    }
    Ok(())
}
