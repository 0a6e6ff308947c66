//! `kht`: homology and torsion order of knot diagrams, movie verification and
//! batch runs over knot tables.
//!
//! Exit status: 0 success, 1 a check failed, 2 input error, 3 internal error.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use kht_core::algebra::{Fp, DEFAULT_PRIME};

use commands::{cmd_batch, cmd_homology, cmd_movie, finish, read_input, RunConfig, CHECKS};
use report::{render_text, CliError, Report, Results, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "kht",
    version,
    about = "Deformed Khovanov homology over F_p[x] and cobordism maps"
)]
struct Cli {
    /// Odd prime for the coefficient field.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Arc carrying the basepoint (all frames, for movies).
    #[arg(long, global = true)]
    basepoint: Option<u32>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// More detail in text output.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homology, torsion order and the band-unlinking bound of a diagram (PD text or JSON; `-` for stdin).
    Homology { input: String },
    /// Validate a movie and run identity checks on its induced maps.
    Movie {
        input: String,
        /// Comma-separated subset of theorem1, neck, reverse-saddles, ribbon.
        #[arg(long, value_delimiter = ',', default_value = "theorem1")]
        checks: Vec<String>,
    },
    /// Homology summary for every row of a knot table.
    Batch { input: String },
}

fn status_of(r: &Report, err: Option<&CliError>) -> Status {
    if let Some(e) = err {
        return e.status();
    }
    match &r.results {
        Some(Results::Batch(rows)) => {
            let kinds: Vec<&str> = rows
                .iter()
                .filter_map(|r| r.error.as_ref())
                .map(|e| e.kind.as_str())
                .collect();
            if kinds.contains(&"internal") {
                Status::Internal
            } else if kinds.is_empty() {
                Status::Ok
            } else {
                Status::InputError
            }
        }
        _ if r.pass => Status::Ok,
        _ => Status::CheckFailed,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, input) = match &cli.command {
        Command::Homology { input } => ("homology", input),
        Command::Movie { input, .. } => ("movie", input),
        Command::Batch { input } => ("batch", input),
    };
    let format = match cli.format {
        Format::Json => "json",
        Format::Text => "text",
    };
    let fp = Fp::new(cli.prime).map_err(CliError::from);
    let cfg = RunConfig {
        fp: *fp.as_ref().unwrap_or(&Fp::default()),
        basepoint: cli.basepoint,
        format: format.into(),
    };
    let mut report = cfg.report(name, input);
    report.config.prime = cli.prime;

    let results = fp
        .and_then(|_| read_input(input))
        .and_then(|text| match &cli.command {
            Command::Homology { .. } => cmd_homology(&text, &cfg).map(Results::Homology),
            Command::Movie { checks, .. } => {
                if let Some(bad) = checks.iter().find(|c| !CHECKS.contains(&c.as_str())) {
                    return Err(CliError::Input(format!(
                        "unknown check `{bad}`; expected one of {}",
                        CHECKS.join(", ")
                    )));
                }
                cmd_movie(&text, checks, &cfg).map(Results::Movie)
            }
            Command::Batch { .. } => cmd_batch(&text, &cfg).map(Results::Batch),
        });
    let err = results.as_ref().err().cloned();
    let mut report = finish(report, results);
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let status = status_of(&report, err.as_ref());

    let out = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
        Format::Text => render_text(&report, cli.verbose),
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    if let Some(e) = err {
        eprintln!("kht: {e}");
    }
    ExitCode::from(status as u8)
}
