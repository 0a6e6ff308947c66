//! The three subcommands, each producing a [`Report`].

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Deserialize;

use kht_core::algebra::Fp;
use kht_core::cobordism::{
    corollary_bounds, is_ribbon_concordance, verify_neck_cutting, verify_reverse_saddles,
    verify_ribbon, verify_theorem1, CobordismError, Movie, MovieJson, Report as CheckReport,
};
use kht_core::diagram::{parse_pd, parse_pd_json, Diagram};
use kht_core::khovanov::{build_complex, Homology};

use crate::report::{
    BatchRow, CheckOutcome, CliError, Config, ErrorInfo, HomologySummary, MovieSummary, Report,
    Results, SCHEMA,
};

/// Checks understood by the `movie` command.
pub const CHECKS: [&str; 4] = ["theorem1", "neck", "reverse-saddles", "ribbon"];

pub struct RunConfig {
    pub fp: Fp,
    pub basepoint: Option<u32>,
    pub format: String,
}

impl RunConfig {
    fn echo(&self) -> Config {
        Config {
            prime: self.fp.prime(),
            basepoint: self.basepoint,
            format: self.format.clone(),
        }
    }

    pub fn report(&self, command: &str, input: &str) -> Report {
        Report {
            schema: SCHEMA,
            command: command.into(),
            input: input.into(),
            config: self.echo(),
            pass: false,
            results: None,
            error: None,
            timing_ms: None,
        }
    }
}

pub fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| CliError::Input(e.to_string()))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// PD text (`X(..) O(..)`) or diagram JSON.
pub fn parse_diagram(text: &str) -> Result<Diagram, CliError> {
    let t = text.trim_start();
    Ok(if t.starts_with('[') || t.starts_with('{') {
        parse_pd_json(text)?
    } else {
        parse_pd(text)?
    })
}

pub fn cmd_homology(text: &str, cfg: &RunConfig) -> Result<HomologySummary, CliError> {
    let mut d = parse_diagram(text)?;
    if let Some(b) = cfg.basepoint {
        d = d.with_basepoint(b)?;
    }
    let h = Homology::new(&build_complex(&d, cfg.fp)?)?.result();
    Ok(HomologySummary {
        crossings: d.crossing_count(),
        basepoint: d.basepoint(),
        xo: h.xo,
        band_unlinking_bound: format!("ul_b(K) ≥ xo(K) = {}", h.xo),
        homology: h,
    })
}

fn outcome(r: CheckReport) -> CheckOutcome {
    CheckOutcome {
        check: r.check,
        status: if r.pass { "PASS" } else { "FAIL" }.into(),
        unit_scalar: r.unit_scalar,
        details: r.details,
    }
}

fn skip(check: &str, details: &str) -> CheckOutcome {
    CheckOutcome {
        check: check.into(),
        status: "SKIP".into(),
        unit_scalar: None,
        details: details.into(),
    }
}

/// Runs a local relation at every adjacent move pair where it applies.
fn local_check(
    movie: &Movie,
    name: &str,
    run: fn(&Movie, usize, Fp) -> Result<CheckReport, CobordismError>,
    fp: Fp,
) -> Result<Vec<CheckOutcome>, CliError> {
    let mut out = Vec::new();
    for i in 0..movie.moves().len().saturating_sub(1) {
        match run(movie, i, fp) {
            Ok(r) => out.push(outcome(r)),
            Err(CobordismError::NoSuchHandle(_) | CobordismError::NotReversePair(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    if out.is_empty() {
        out.push(skip(name, "no instance in this movie"));
    }
    Ok(out)
}

pub fn load_movie(text: &str, cfg: &RunConfig) -> Result<Movie, CliError> {
    let mut j: MovieJson =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed movie: {e}")))?;
    if j.schema != SCHEMA {
        return Err(CliError::Input(format!(
            "unsupported movie schema {}",
            j.schema
        )));
    }
    if let Some(b) = cfg.basepoint {
        j.basepoint_map = Some(vec![b; j.frames.len()]);
    }
    Ok(Movie::from_json(j)?)
}

pub fn cmd_movie(text: &str, checks: &[String], cfg: &RunConfig) -> Result<MovieSummary, CliError> {
    let movie = load_movie(text, cfg)?;
    let fp = cfg.fp;
    let s = movie.stats();
    let mut outcomes = Vec::new();
    for c in checks {
        match c.as_str() {
            "theorem1" if !s.connected => outcomes.push(skip(c, "the cobordism is not connected")),
            "theorem1" => outcomes.push(outcome(verify_theorem1(&movie, fp)?)),
            "neck" => outcomes.extend(local_check(&movie, c, verify_neck_cutting, fp)?),
            "reverse-saddles" => {
                outcomes.extend(local_check(&movie, c, verify_reverse_saddles, fp)?)
            }
            "ribbon" if !is_ribbon_concordance(&movie) => outcomes.push(skip(
                c,
                "not a ribbon concordance (needs genus 0, no deaths, no dots)",
            )),
            "ribbon" => outcomes.push(outcome(verify_ribbon(&movie, fp)?)),
            other => return Err(CliError::Input(format!("unknown check `{other}`"))),
        }
    }
    let bounds = corollary_bounds(movie.source(), Some(&movie), fp)?
        .movie
        .ok_or_else(|| CliError::Internal("bounds missing for a movie".into()))?;
    Ok(MovieSummary {
        frames: movie.frames().len(),
        statistics: s,
        j_degree: movie.j_degree(),
        checks: outcomes,
        bounds,
    })
}

#[derive(Deserialize)]
struct TableRow {
    name: String,
    pd: serde_json::Value,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Table {
    Rows(Vec<TableRow>),
    Versioned { schema: u32, knots: Vec<TableRow> },
}

fn batch_row(row: &TableRow, cfg: &RunConfig) -> BatchRow {
    let result = match &row.pd {
        serde_json::Value::String(s) => Ok(s.clone()),
        v => serde_json::to_string(v).map_err(|e| CliError::Input(e.to_string())),
    }
    .and_then(|text| cmd_homology(&text, cfg));
    match result {
        Ok(h) => BatchRow {
            name: row.name.clone(),
            crossings: Some(h.crossings),
            free_rank: Some(h.homology.free_rank_total),
            degrees: Some(h.homology.degrees),
            xo: Some(h.xo),
            error: None,
        },
        Err(e) => BatchRow {
            name: row.name.clone(),
            crossings: None,
            free_rank: None,
            degrees: None,
            xo: None,
            error: Some(ErrorInfo {
                kind: e.kind().into(),
                message: e.to_string(),
            }),
        },
    }
}

/// Computes every row, in parallel, keeping input order.
pub fn cmd_batch(text: &str, cfg: &RunConfig) -> Result<Vec<BatchRow>, CliError> {
    let table: Table =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed table: {e}")))?;
    let rows = match table {
        Table::Rows(r) => r,
        Table::Versioned { schema, knots } if schema == SCHEMA => knots,
        Table::Versioned { schema, .. } => {
            return Err(CliError::Input(format!(
                "unsupported table schema {schema}"
            )))
        }
    };
    let slots: Vec<Mutex<Option<BatchRow>>> = rows.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(rows.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(row) = rows.get(k) else { break };
                *slots[k].lock().unwrap() = Some(batch_row(row, cfg));
            });
        }
    });
    Ok(slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every row is computed"))
        .collect())
}

pub fn finish(mut report: Report, results: Result<Results, CliError>) -> Report {
    match results {
        Ok(r) => {
            report.pass = match &r {
                Results::Homology(_) => true,
                Results::Movie(m) => m.checks.iter().all(|c| c.status != "FAIL"),
                Results::Batch(rows) => rows.iter().all(|r| r.error.is_none()),
            };
            report.results = Some(r);
        }
        Err(e) => {
            report.error = Some(ErrorInfo {
                kind: e.kind().into(),
                message: e.to_string(),
            });
        }
    }
    report
}
