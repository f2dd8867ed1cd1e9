//! Seeded Monte Carlo rank censuses: draw random forms, classify each with
//! the exact engine, and tally the outcomes into a reproducible report.
//!
//! Per-sample seeds are derived from the master seed by a stable documented
//! hash (see [`crate::seeds`]), so a report is a pure function of its config:
//! the same config yields byte-identical output for any worker count and any
//! execution order. Rejected (non-squarefree) draws and forms off a
//! classifier's generic stratum land in their own labeled buckets instead of
//! being silently dropped, so every sample is accounted for exactly once.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{random_form, Basis, BinaryForm, Distribution};
use crate::hypdecide::DEFAULT_TRIALS;
use crate::rank::{rank_certificate, RankCertificate};
use crate::rat::{q, q_pow2_neg, Q};
use crate::seeds::{derive_seed, TAG_PROBE};
use crate::SCHEMA_VERSION;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn default_distribution() -> Distribution {
    Distribution::Uniform
}

fn default_trials() -> u32 {
    DEFAULT_TRIALS
}

fn default_eps() -> Q {
    q_pow2_neg(16)
}

/// Full description of a census run; the report echoes it verbatim and is a
/// deterministic function of it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusConfig {
    pub degree: usize,
    pub samples: u64,
    pub master_seed: u64,
    #[serde(default = "default_distribution")]
    pub distribution: Distribution,
    /// Trial budget for the randomized hyperbolic-element searches.
    #[serde(default = "default_trials")]
    pub trials: u32,
    /// Magnitude bound for stability-probe perturbations.
    #[serde(default = "default_eps", with = "crate::rat::qstr")]
    pub stability_eps: Q,
    /// Stability probes per exactly-classified sample; 0 disables probing.
    #[serde(default)]
    pub stability_probes: u32,
    /// Redraw non-squarefree samples (still counting every rejection)
    /// instead of bucketing them, for conditional frequencies.
    #[serde(default)]
    pub resample_on_reject: bool,
}

impl CensusConfig {
    pub fn new(degree: usize, samples: u64, master_seed: u64) -> Self {
        CensusConfig {
            degree,
            samples,
            master_seed,
            distribution: default_distribution(),
            trials: default_trials(),
            stability_eps: default_eps(),
            stability_probes: 0,
            resample_on_reject: false,
        }
    }
}

/// First sample that produced a given outcome: its index and the draw seed,
/// so `random_form(degree, distribution, seed)` reproduces the form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusExample {
    pub index: u64,
    pub seed: u64,
}

/// Census output: outcome counts keyed by label ("3", "[5,6]",
/// "rejected_nonsquarefree", "nongeneric_stratum", "unstable") plus the
/// first example of each. `elapsed_ms` is filled only on request, keeping
/// default reports bit-exact across runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub schema: u32,
    pub config: CensusConfig,
    pub counts: BTreeMap<String, u64>,
    pub examples: BTreeMap<String, CensusExample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

fn outcome_label(certificate: &RankCertificate) -> String {
    if certificate.nongeneric_stratum {
        "nongeneric_stratum".into()
    } else if certificate.exact {
        certificate.real_lo.to_string()
    } else {
        format!("[{},{}]", certificate.real_lo, certificate.real_hi)
    }
}

/// The labeled events of one sample: zero or more rejections followed by at
/// most one final outcome, each carrying the draw seed that produced it.
fn census_sample(config: &CensusConfig, index: u64) -> Result<Vec<(String, u64)>> {
    let sample_seed = derive_seed(config.master_seed, index);
    let mut events = Vec::new();
    let mut draw_seed = sample_seed;
    let mut f = random_form(config.degree, config.distribution, draw_seed)?;
    let mut redraws = 0u64;
    while !f.is_squarefree()? {
        events.push(("rejected_nonsquarefree".to_string(), draw_seed));
        if !config.resample_on_reject {
            return Ok(events);
        }
        redraws += 1;
        if redraws > 64 {
            return Err(Error::ResampleExhausted(format!(
                "sample {index} kept drawing non-squarefree forms"
            )));
        }
        draw_seed = derive_seed(sample_seed, redraws);
        f = random_form(config.degree, config.distribution, draw_seed)?;
    }
    let certificate = rank_certificate(&f, config.trials, draw_seed)?;
    let label = outcome_label(&certificate);
    if config.stability_probes > 0 && certificate.exact {
        let stable = stability_probe(
            &f,
            &certificate,
            &config.stability_eps,
            config.stability_probes,
            config.trials,
            draw_seed,
        )?;
        if !stable {
            events.push(("unstable".into(), draw_seed));
            return Ok(events);
        }
    }
    events.push((label, draw_seed));
    Ok(events)
}

/// Runs the census. `jobs` sizes the worker pool (0 uses the global default);
/// the merged report is independent of it because per-sample results are
/// folded in index order.
pub fn run_census(config: &CensusConfig, jobs: usize) -> Result<CensusReport> {
    if config.samples == 0 {
        return Err(Error::BadArgument("census needs at least one sample".into()));
    }
    if config.degree < 1 {
        return Err(Error::BadArgument("census needs degree >= 1".into()));
    }
    let run = || {
        (0..config.samples)
            .into_par_iter()
            .map(|i| census_sample(config, i))
            .collect::<Result<Vec<_>>>()
    };
    let per_sample = if jobs == 0 {
        run()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Internal(format!("worker pool: {e}")))?;
        pool.install(run)?
    };

    let mut counts = BTreeMap::new();
    let mut examples = BTreeMap::new();
    for (index, events) in per_sample.into_iter().enumerate() {
        for (label, seed) in events {
            *counts.entry(label.clone()).or_insert(0u64) += 1;
            examples.entry(label).or_insert(CensusExample {
                index: index as u64,
                seed,
            });
        }
    }
    Ok(CensusReport {
        schema: SCHEMA_VERSION,
        config: config.clone(),
        counts,
        examples,
        elapsed_ms: None,
    })
}

/// Seeded perturbation stability, the operational reading of typicality: each
/// probe perturbs every monomial coefficient of `f` by an independent seeded
/// rational of magnitude <= eps and re-classifies the result. True iff every
/// probe preserves the certified rank: for degrees with exact classifiers (5
/// and 6) the perturbed classification must be exact with the same rank; for
/// other degrees the perturbed bracket must contain the certified rank. A
/// probe landing on a non-squarefree form counts as a failure. Requires an
/// exact certificate and eps > 0.
pub fn stability_probe(
    f: &BinaryForm,
    certificate: &RankCertificate,
    eps: &Q,
    probes: u32,
    trials: u32,
    seed: u64,
) -> Result<bool> {
    if !certificate.exact {
        return Err(Error::Precondition(
            "stability probes need an exact certificate".into(),
        ));
    }
    if eps <= &Q::zero() {
        return Err(Error::BadArgument("probe magnitude must be positive".into()));
    }
    let d = f.degree();
    let exact_classifier = d == 5 || d == 6;
    let scale = 1i64 << 20;
    for p in 0..probes {
        let probe_seed = derive_seed(seed, TAG_PROBE + p as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(probe_seed);
        let mut coeffs = f.coeffs(Basis::Monomial);
        for c in coeffs.iter_mut() {
            *c += q(rng.random_range(-scale..=scale), scale) * eps;
        }
        let perturbed = BinaryForm::new(d, coeffs, Basis::Monomial)?;
        let perturbed_cert = match rank_certificate(&perturbed, trials, probe_seed) {
            Ok(c) => c,
            Err(Error::NotSquarefree) | Err(Error::ZeroForm) => return Ok(false),
            Err(e) => return Err(e),
        };
        let preserved = if exact_classifier {
            perturbed_cert.exact && perturbed_cert.real_lo == certificate.real_lo
        } else {
            perturbed_cert.real_lo <= certificate.real_lo
                && certificate.real_lo <= perturbed_cert.real_hi
        };
        if !preserved {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Report file format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Json,
    Csv,
}

fn csv_label(label: &str) -> String {
    if label.contains(',') {
        format!("\"{label}\"")
    } else {
        label.to_string()
    }
}

fn render_csv(report: &CensusReport) -> Result<String> {
    let mut out = String::new();
    out.push_str(&format!("# schema: {}\n", report.schema));
    out.push_str(&format!(
        "# config: {}\n",
        serde_json::to_string(&report.config)?
    ));
    out.push_str(&format!(
        "# examples: {}\n",
        serde_json::to_string(&report.examples)?
    ));
    if let Some(ms) = report.elapsed_ms {
        out.push_str(&format!("# elapsed_ms: {ms}\n"));
    }
    out.push_str("outcome,count\n");
    for (label, count) in &report.counts {
        out.push_str(&format!("{},{count}\n", csv_label(label)));
    }
    Ok(out)
}

fn parse_csv(text: &str) -> Result<CensusReport> {
    let mut schema = None;
    let mut config = None;
    let mut examples = BTreeMap::new();
    let mut elapsed_ms = None;
    let mut counts = BTreeMap::new();
    let mut in_rows = false;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# schema: ") {
            schema = Some(
                rest.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("schema line: {e}")))?,
            );
        } else if let Some(rest) = line.strip_prefix("# config: ") {
            config = Some(serde_json::from_str::<CensusConfig>(rest)?);
        } else if let Some(rest) = line.strip_prefix("# examples: ") {
            examples = serde_json::from_str(rest)?;
        } else if let Some(rest) = line.strip_prefix("# elapsed_ms: ") {
            elapsed_ms = Some(
                rest.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("elapsed line: {e}")))?,
            );
        } else if line == "outcome,count" {
            in_rows = true;
        } else if in_rows && !line.trim().is_empty() {
            let (label, count) = line
                .rsplit_once(',')
                .ok_or_else(|| Error::Parse(format!("bad census row: {line}")))?;
            counts.insert(
                label.trim_matches('"').to_string(),
                count
                    .trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad count in row {line}: {e}")))?,
            );
        }
    }
    Ok(CensusReport {
        schema: schema.ok_or_else(|| Error::Parse("census csv lacks a schema line".into()))?,
        config: config.ok_or_else(|| Error::Parse("census csv lacks a config line".into()))?,
        counts,
        examples,
        elapsed_ms,
    })
}

/// Writes the report as pretty JSON or as CSV with the config, examples, and
/// schema carried in header comments (so both formats round-trip).
pub fn write_report(report: &CensusReport, path: &Path, format: ReportFormat) -> Result<()> {
    let text = match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            s
        }
        ReportFormat::Csv => render_csv(report)?,
    };
    std::fs::write(path, text)?;
    Ok(())
}

/// Reads a report back (either format, sniffed from the content) and checks
/// the schema version.
pub fn read_report(path: &Path) -> Result<CensusReport> {
    let text = std::fs::read_to_string(path)?;
    let report = if text.trim_start().starts_with('{') {
        serde_json::from_str::<CensusReport>(&text)?
    } else {
        parse_csv(&text)?
    };
    if report.schema != SCHEMA_VERSION {
        return Err(Error::SchemaVersion(report.schema));
    }
    Ok(report)
}
