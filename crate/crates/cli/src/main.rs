use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};

use emsurf_cli::batch::{batch_exit_code, render_batch, run_batch};
use emsurf_cli::cache::Cache;
use emsurf_cli::crosscheck::{lmfdb_comparison, oracle_comparison, render_comparison, Source};
use emsurf_cli::groups::load_group;
use emsurf_cli::report::{build_report, now_timestamp, render, Format, WeightRange};
use emsurf_cli::spec::parse_group_spec;
use emsurf_cli::{CliError, ExitCode, Result};
use emsurf_core::export_permutation;

/// Invariants of elliptic modular surfaces and exact checks of their
/// dimension identities.
#[derive(Debug, Parser)]
#[command(name = "emsurf", version)]
struct Cli {
    /// Cache directory (default: $EMSURF_CACHE, then the user cache dir)
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Do not read or write the cache
    #[arg(long, global = true, conflicts_with = "cache_dir")]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report invariants and dimension tables for one group
    Report {
        /// gamma:N, gamma1:N, image:N:FILE or perm:FILE
        spec: String,
        #[arg(long, default_value = "0..12")]
        weights: WeightRange,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Treat a group containing -1 as invalid input (exit 2)
        #[arg(long)]
        strict: bool,
        /// Fixed value for the generated_at field
        #[arg(long)]
        timestamp: Option<String>,
    },
    /// Verify every spec in a file, one per line
    Batch {
        file: PathBuf,
        #[arg(long, default_value = "0..12")]
        weights: WeightRange,
        #[arg(long, default_value = "md")]
        format: Format,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        timestamp: Option<String>,
    },
    /// Write the permutation document of a group
    ExportPerm {
        spec: String,
        /// Output file (default: stdout)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare against the brute-force oracle or LMFDB
    Crosscheck {
        spec: String,
        #[arg(long)]
        source: Source,
        /// Use cached responses only
        #[arg(long)]
        offline: bool,
        #[arg(long, default_value = "md")]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::resolve(cli.cache_dir)
    };
    match cli.command {
        Command::Report {
            spec,
            weights,
            format,
            strict,
            timestamp,
        } => {
            let g = load_group(&parse_group_spec(&spec)?, &cache)?;
            let ts = timestamp.unwrap_or_else(now_timestamp);
            let doc = build_report(&spec, &g, weights, &ts)?;
            print!("{}", render(&doc, format));
            if let Some(reason) = &doc.refusal {
                eprintln!("refused: {reason}");
                return Ok(if strict {
                    ExitCode::Invalid
                } else {
                    ExitCode::Success
                });
            }
            Ok(if doc.verdict {
                ExitCode::Success
            } else {
                ExitCode::Failure
            })
        }
        Command::Batch {
            file,
            weights,
            format,
            strict,
            timestamp,
        } => {
            let contents = std::fs::read_to_string(&file).map_err(|e| CliError::io(&file, e))?;
            let ts = timestamp.unwrap_or_else(now_timestamp);
            let doc = run_batch(&contents, weights, &cache, &ts);
            print!("{}", render_batch(&doc, format));
            Ok(batch_exit_code(&doc, strict))
        }
        Command::ExportPerm { spec, output } => {
            let g = load_group(&parse_group_spec(&spec)?, &cache)?;
            let json = export_permutation(&g).to_json();
            match output {
                Some(path) => std::fs::write(&path, json).map_err(|e| CliError::io(&path, e))?,
                None => print!("{json}"),
            }
            Ok(ExitCode::Success)
        }
        Command::Crosscheck {
            spec,
            source,
            offline,
            format,
        } => {
            let gs = parse_group_spec(&spec)?;
            let g = load_group(&gs, &cache)?;
            let cmp = match source {
                Source::Oracle => oracle_comparison(&spec, &g)?,
                Source::Lmfdb => lmfdb_comparison(&gs, &g, &cache, offline)?,
            };
            print!("{}", render_comparison(&cmp, format));
            Ok(if cmp.agree {
                ExitCode::Success
            } else {
                ExitCode::Failure
            })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    process::exit(code as i32);
}
