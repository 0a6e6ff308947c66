//! Versioned report envelope, exit statuses and the human-readable renderer.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use kht_core::algebra::AlgebraError;
use kht_core::cobordism::{CobordismError, MovieBounds, MovieStats};
use kht_core::diagram::DiagramError;
use kht_core::khovanov::{DegreeEntry, HomologyResult, KhovanovError};

pub const SCHEMA: u32 = 1;

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    CheckFailed = 1,
    InputError = 2,
    Internal = 3,
}

#[derive(Clone, Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Input(_) => Status::InputError,
            CliError::Internal(_) => Status::Internal,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Internal(_) => "internal",
        }
    }
}

fn algebra(e: AlgebraError) -> CliError {
    match e {
        AlgebraError::CharacteristicTwo | AlgebraError::NotAnOddPrime(_) => {
            CliError::Input(e.to_string())
        }
        _ => CliError::Internal(e.to_string()),
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<KhovanovError> for CliError {
    fn from(e: KhovanovError) -> Self {
        match e {
            KhovanovError::NotAKnot(_)
            | KhovanovError::TooLarge(_)
            | KhovanovError::NoSuchArc(_) => CliError::Input(e.to_string()),
            KhovanovError::Diagram(d) => d.into(),
            KhovanovError::Algebra(a) => algebra(a),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<CobordismError> for CliError {
    fn from(e: CobordismError) -> Self {
        match e {
            CobordismError::Khovanov(k) => k.into(),
            CobordismError::Diagram(d) => d.into(),
            CobordismError::NotWellDefined => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        algebra(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub prime: u32,
    pub basepoint: Option<u32>,
    pub format: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

/// Envelope shared by all commands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input: String,
    pub config: Config,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub results: Option<Results>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Results {
    Homology(HomologySummary),
    Movie(MovieSummary),
    Batch(Vec<BatchRow>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub crossings: usize,
    pub basepoint: u32,
    pub homology: HomologyResult,
    pub xo: u32,
    pub band_unlinking_bound: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: String,
    /// `PASS`, `FAIL` or `SKIP` (the movie has no instance of the relation).
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_scalar: Option<i64>,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovieSummary {
    pub frames: usize,
    pub statistics: MovieStats,
    pub j_degree: i64,
    pub checks: Vec<CheckOutcome>,
    pub bounds: MovieBounds,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchRow {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossings: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<DegreeEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xo: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

fn exponents(t: &[u32]) -> String {
    if t.is_empty() {
        "-".into()
    } else {
        t.iter()
            .map(|e| format!("x^{e}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Plain-text rendering of a report.
pub fn render_text(r: &Report, verbose: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} (p = {})", r.command, r.input, r.config.prime);
    if let Some(e) = &r.error {
        let _ = writeln!(out, "error ({}): {}", e.kind, e.message);
        return out;
    }
    match &r.results {
        Some(Results::Homology(h)) => {
            let _ = writeln!(
                out,
                "crossings: {}, basepoint arc: {}",
                h.crossings, h.basepoint
            );
            let _ = writeln!(out, "{:>4}  {:>4}  torsion", "i", "free");
            for e in &h.homology.degrees {
                let _ = writeln!(
                    out,
                    "{:>4}  {:>4}  {}",
                    e.i,
                    e.free_rank,
                    exponents(&e.torsion_exponents)
                );
            }
            if verbose {
                let _ = writeln!(out, "{:>4}  {:>4}  {:>4}  torsion", "i", "j", "free");
                for e in &h.homology.bigrades {
                    let _ = writeln!(
                        out,
                        "{:>4}  {:>4}  {:>4}  {}",
                        e.i,
                        e.j,
                        e.free_rank,
                        exponents(&e.torsion_exponents)
                    );
                }
            }
            let _ = writeln!(out, "free rank: {}", h.homology.free_rank_total);
            let _ = writeln!(out, "xo: {}", h.xo);
            let _ = writeln!(out, "{}", h.band_unlinking_bound);
        }
        Some(Results::Movie(m)) => {
            let s = &m.statistics;
            let genus = s.genus.map_or("-".to_string(), |g| g.to_string());
            let _ = writeln!(
                out,
                "frames: {}, (m, b, M) = ({}, {}, {}), dots: {}, connected: {}, genus: {}",
                m.frames, s.births, s.saddles, s.deaths, s.dots, s.connected, genus
            );
            for c in &m.checks {
                let scalar = c
                    .unit_scalar
                    .map_or(String::new(), |u| format!(" [scalar {u}]"));
                let _ = writeln!(out, "{:<16} {}{}  {}", c.check, c.status, scalar, c.details);
            }
            let b = &m.bounds;
            let _ = writeln!(out, "xo: {} -> {}", b.xo_source, b.xo_target);
            if let (Some(bound), Some(holds)) = (b.genus_bound, b.genus_bound_holds) {
                let _ = writeln!(
                    out,
                    "xo(source) <= max{{M, xo(target)}} + 2g = {bound}: {holds}"
                );
            }
        }
        Some(Results::Batch(rows)) => {
            let _ = writeln!(
                out,
                "{:<10} {:>4} {:>4} {:>3}  torsion",
                "name", "n", "free", "xo"
            );
            for row in rows {
                match &row.error {
                    Some(e) => {
                        let _ = writeln!(out, "{:<10} error ({}): {}", row.name, e.kind, e.message);
                    }
                    None => {
                        let tors: Vec<u32> = row
                            .degrees
                            .iter()
                            .flatten()
                            .flat_map(|d| d.torsion_exponents.iter().copied())
                            .collect();
                        let _ = writeln!(
                            out,
                            "{:<10} {:>4} {:>4} {:>3}  {}",
                            row.name,
                            row.crossings.unwrap_or(0),
                            row.free_rank.unwrap_or(0),
                            row.xo.unwrap_or(0),
                            exponents(&tors)
                        );
                    }
                }
            }
        }
        None => {}
    }
    let _ = writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" });
    if let Some(t) = r.timing_ms {
        let _ = writeln!(out, "time: {t} ms");
    }
    out
}
