//! `rnass` command-line front-end.
//!
//! Every command is a pure function of its arguments (and `--seed`).
//! Exit codes: 0 success, 2 bad input, 1 internal or I/O failure.

use std::io::{self, BufRead, Write};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use crate::codec::{
    parse_variant, print_variant, structure_to_variant, variant_to_structure, Alphabet, MotzkinWord,
};
use crate::counting::{count_explicit, BigCount, CountTable, StructureParams};
use crate::oracle;
use crate::ranking::{self, Rank};

#[derive(Debug, Parser)]
#[command(name = "rnass", version, about = "Count, rank, unrank and sample RNA secondary structures")]
pub struct Cli {
    /// Print '.' instead of '*' for unpaired bases.
    #[arg(long, global = true)]
    pub dot: bool,

    /// Pre-size the count table instead of sizing it from the request.
    #[arg(long, global = true, num_args = 2, value_names = ["N_MAX", "M_MAX"])]
    pub table: Option<Vec<usize>>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of structures of length N with M base-pairs.
    Count { n: usize, m: usize },
    /// Rank structures given as arguments, or one per line on stdin.
    Rank { structures: Vec<String> },
    /// Structure of rank R among those of length N with M base-pairs.
    Unrank { n: usize, m: usize, rank: String },
    /// List structures in rank order, one per line.
    Enumerate {
        n: usize,
        m: usize,
        /// First rank (inclusive).
        #[arg(long)]
        from: Option<String>,
        /// Last rank (exclusive); defaults to the number of structures.
        #[arg(long)]
        to: Option<String>,
    },
    /// K uniform random structures.
    Sample {
        n: usize,
        m: usize,
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Convert between a structure and its tree variant.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        text: String,
        /// Structure length (required for --to structure).
        #[arg(long)]
        n: Option<usize>,
        /// Base-pair count (defaults to the number of pair nodes).
        #[arg(long)]
        m: Option<usize>,
    },
    /// Check ranking against brute-force enumeration for all n <= N_CAP.
    Selftest {
        n_cap: usize,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Variant,
    Structure,
}

enum Failure {
    Input(String),
    Internal(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::Io(err)
    }
}

fn input_error(err: impl ToString) -> Failure {
    Failure::Input(err.to_string())
}

fn parse_rank(text: &str) -> Result<Rank, Failure> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Failure::Input(format!("rank must be a decimal integer, got {text:?}")));
    }
    Rank::from_str(text).map_err(input_error)
}

fn parse_word(text: &str) -> Result<MotzkinWord, Failure> {
    MotzkinWord::parse(text, Alphabet::Dot).map_err(|err| Failure::Input(format!("{text:?}: {err}")))
}

struct Context {
    alphabet: Alphabet,
    table: Option<(usize, usize)>,
}

impl Context {
    fn table_for(&self, n: usize, m: usize) -> CountTable {
        let (n_max, m_max) = self.table.unwrap_or((n, m));
        CountTable::build(n_max, m_max)
    }
}

fn execute(
    cli: Cli,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let ctx = Context {
        alphabet: if cli.dot { Alphabet::Dot } else { Alphabet::Star },
        table: cli.table.map(|bounds| (bounds[0], bounds[1])),
    };
    match cli.command {
        Command::Count { n, m } => {
            writeln!(out, "{}", count_explicit(StructureParams::new(n, m)))?;
        }
        Command::Rank { structures } => {
            let lines = if structures.is_empty() {
                stdin.lines().collect::<Result<Vec<_>, _>>()?
            } else {
                structures
            };
            let words = lines
                .iter()
                .map(|line| parse_word(line.trim_end_matches('\r')))
                .collect::<Result<Vec<_>, _>>()?;
            let n = words.iter().map(MotzkinWord::len).max().unwrap_or(0);
            let m = words.iter().map(MotzkinWord::pairs).max().unwrap_or(0);
            let table = ctx.table_for(n, m);
            for word in &words {
                let rank = ranking::rank_structure(word, &table).map_err(input_error)?;
                writeln!(out, "{rank}\tn={}\tm={}", word.len(), word.pairs())?;
            }
        }
        Command::Unrank { n, m, rank } => {
            let rank = parse_rank(&rank)?;
            let table = ctx.table_for(n, m);
            let word = ranking::unrank_structure(&rank, n, m, &table).map_err(input_error)?;
            writeln!(out, "{}", word.to_text(ctx.alphabet))?;
        }
        Command::Enumerate { n, m, from, to } => {
            let table = ctx.table_for(n, m);
            let from = from.as_deref().map(parse_rank).transpose()?.unwrap_or_default();
            let to = match to {
                Some(text) => parse_rank(&text)?,
                None => count_explicit(StructureParams::new(n, m)),
            };
            for word in ranking::enumerate(n, m, &from, &to, &table).map_err(input_error)? {
                writeln!(out, "{}", word.to_text(ctx.alphabet))?;
            }
        }
        Command::Sample { n, m, k, seed } => {
            let table = ctx.table_for(n, m);
            let mut rng = ranking::seeded_source(seed);
            let count = count_explicit(StructureParams::new(n, m));
            if count == BigCount::default() {
                return Err(input_error(ranking::RankError::EmptySet { n, m }));
            }
            for _ in 0..k {
                let rank = ranking::RandomSource::next_below(&mut rng, &count);
                let word = ranking::unrank_structure(&rank, n, m, &table).map_err(input_error)?;
                writeln!(out, "{}", word.to_text(ctx.alphabet))?;
            }
        }
        Command::Convert { to, text, n, m } => match to {
            Target::Variant => {
                let word = parse_word(&text)?;
                writeln!(out, "{}", print_variant(&structure_to_variant(&word)))?;
            }
            Target::Structure => {
                let variant = parse_variant(&text).map_err(input_error)?;
                let n = n.ok_or_else(|| Failure::Input("--to structure needs --n".into()))?;
                let m = m.unwrap_or_else(|| variant.pair_count());
                let word = variant_to_structure(&variant, n, m).map_err(input_error)?;
                writeln!(out, "{}", word.to_text(ctx.alphabet))?;
            }
        },
        Command::Selftest { n_cap, json } => {
            let reports = oracle::verify_all(n_cap).map_err(input_error)?;
            let failed = reports.iter().filter(|r| !r.passed).count();
            if json {
                let summary = serde_json::json!({
                    "cells": reports.len(),
                    "failed": failed,
                    "passed": failed == 0,
                    "reports": reports,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&summary).map_err(|e| Failure::Internal(e.to_string()))?)?;
            } else {
                for r in &reports {
                    write!(
                        out,
                        "n={:<2} m={:<2} count={:<8} oracle={:<8} {}",
                        r.n,
                        r.m,
                        r.count,
                        r.oracle_count,
                        if r.passed { "PASS" } else { "FAIL" }
                    )?;
                    match &r.counterexample {
                        Some(detail) => writeln!(out, "  {detail}")?,
                        None => writeln!(out)?,
                    }
                }
                writeln!(out, "{} cells, {} failed", reports.len(), failed)?;
            }
            if failed > 0 {
                writeln!(err, "selftest failed in {failed} cells")?;
                return Err(Failure::Internal("selftest failed".into()));
            }
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match execute(cli, stdin, out, err) {
        Ok(()) => 0,
        Err(Failure::Input(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
        Err(Failure::Internal(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
