//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails or output cannot
//! be written, 2 on usage errors (including invalid bases and arguments).

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::asymptotics::{sample_h, series_to_csv};
use crate::error::Error;
use crate::pascal::{compressed_profile, profile_to_csv, render_triangle, RenderMode};
use crate::regular::{solve_coefficients, LinearRepresentation};
use crate::summatory::{a_fast, decompose};
use crate::trie::build_trie;
use crate::verify::{run_suite, SuiteConfig};
use crate::words::{Base, Word};

/// Environment variable holding the worker-thread count.
pub const THREADS_VAR: &str = "SUBWORD_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "subwords",
    version,
    about = "Distinct subwords of base-b expansions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TrieFormat {
    Dot,
    Levels,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print S_b for each argument (integers or inclusive ranges `a..b`).
    Sb {
        #[arg(long, value_parser = parse_base)]
        base: Base,
        #[arg(required = true)]
        numbers: Vec<String>,
    },
    /// Print A_b for each argument (integers or inclusive ranges `a..b`).
    Ab {
        #[arg(long, value_parser = parse_base)]
        base: Base,
        #[arg(required = true)]
        numbers: Vec<String>,
    },
    /// Print the (2b-1)-decomposition of A_b(n).
    Decompose {
        #[arg(long, value_parser = parse_base)]
        base: Base,
        n: BigUint,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the regularity coefficients a_r and c_{r,s}.
    Coeffs {
        #[arg(long, value_parser = parse_base)]
        base: Base,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the digit matrices of the linear representation.
    Matrices {
        #[arg(long, value_parser = parse_base)]
        base: Base,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render the first rows of the Pascal-like triangle as a binary graymap.
    Triangle {
        #[arg(long, value_parser = parse_base)]
        base: Base,
        #[arg(long)]
        rows: u64,
        #[arg(long)]
        out: PathBuf,
        /// Entries at or above this value are black.
        #[arg(long, default_value_t = 2)]
        cap: u32,
    },
    /// Number of positive entries per triangle row, as CSV.
    Profile {
        #[arg(long, value_parser = parse_base)]
        base: Base,
        #[arg(long)]
        rows: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the periodic fluctuation over one period, as CSV.
    HbSample {
        #[arg(long, value_parser = parse_base)]
        base: Base,
        #[arg(long = "n", default_value_t = 12)]
        n: u32,
        #[arg(long, default_value_t = 512)]
        res: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trie of the canonical subwords of a word.
    Trie {
        #[arg(long, value_parser = parse_base)]
        base: Base,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "levels")]
        format: TrieFormat,
    },
    /// Run the property suite for one base.
    Verify {
        #[arg(long, value_parser = parse_base)]
        base: Base,
        /// Sweep bound for checks indexed by integers.
        #[arg(long, default_value_t = 100_000)]
        max: u64,
        /// Longest word for checks indexed by words.
        #[arg(long, default_value_t = 8)]
        max_word: usize,
        /// Include the fluctuation checks (base 3, n = 12).
        #[arg(long)]
        asymptotics: bool,
    },
}

fn parse_base(s: &str) -> Result<Base, String> {
    let b: u64 = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    Base::new(b).map_err(|e| e.to_string())
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Expands arguments like `7` and `0..32` (inclusive).
fn expand_numbers(args: &[String]) -> Result<Vec<BigUint>, Failure> {
    let mut out = Vec::new();
    for arg in args {
        if let Some((lo, hi)) = arg.split_once("..") {
            let parse = |s: &str| {
                s.parse::<u64>()
                    .map_err(|_| Failure::Usage(format!("bad range `{arg}`")))
            };
            let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
            if lo > hi {
                return Err(Failure::Usage(format!("empty range `{arg}`")));
            }
            out.extend((lo..=hi).map(BigUint::from));
        } else {
            let n = arg
                .parse::<BigUint>()
                .map_err(|_| Failure::Usage(format!("`{arg}` is not a nonnegative integer")))?;
            out.push(n);
        }
    }
    Ok(out)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn emit(out: &mut dyn Write, path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

fn json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable export");
    s.push('\n');
    s
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Sb { base, numbers } => {
            let rep = LinearRepresentation::new(base);
            let values = expand_numbers(&numbers)?.iter().map(|n| rep.eval(n)).collect::<Vec<_>>();
            writeln!(out, "{}", join(values))?;
        }
        Command::Ab { base, numbers } => {
            let values = expand_numbers(&numbers)?.iter().map(|n| a_fast(base, n)).collect::<Vec<_>>();
            writeln!(out, "{}", join(values))?;
        }
        Command::Decompose { base, n, format } => {
            let dec = decompose(base, &n)?;
            match format {
                Format::Text => writeln!(out, "{}", join(&dec.d))?,
                Format::Json => out.write_all(json(&dec.to_export()).as_bytes())?,
            }
        }
        Command::Coeffs { base, format, out: path } => {
            let coeffs = solve_coefficients(base);
            let text = match format {
                Format::Json => json(&LinearRepresentation::new(base).to_export(&coeffs)),
                Format::Text => {
                    let b = base.get() as usize;
                    let mut s = format!("r a {}\n", join((0..b - 1).map(|k| format!("c{k}"))));
                    for r in 0..b * b {
                        s.push_str(&format!("{r} {}\n", join(coeffs.row(r))));
                    }
                    s
                }
            };
            emit(out, path.as_deref(), text.as_bytes())?;
        }
        Command::Matrices { base, format, out: path } => {
            let coeffs = solve_coefficients(base);
            let rep = LinearRepresentation::new(base);
            let text = match format {
                Format::Json => json(&rep.to_export(&coeffs)),
                Format::Text => {
                    let mut s = String::new();
                    for (d, m) in rep.matrices().iter().enumerate() {
                        s.push_str(&format!("mu({d})\n"));
                        for row in m {
                            s.push_str(&format!("{}\n", join(row)));
                        }
                    }
                    s.push_str(&format!("v0\n{}\n", join(rep.v0())));
                    s
                }
            };
            emit(out, path.as_deref(), text.as_bytes())?;
        }
        Command::Triangle { base, rows, out: path, cap } => {
            let mode = if cap <= 1 {
                RenderMode::Threshold
            } else {
                RenderMode::ClippedGray { cap }
            };
            fs::write(path, render_triangle(base, rows, mode)?)?;
        }
        Command::Profile { base, rows, out: path } => {
            let csv = profile_to_csv(&compressed_profile(base, rows)?);
            emit(out, path.as_deref(), csv.as_bytes())?;
        }
        Command::HbSample { base, n, res, out: path } => {
            let csv = series_to_csv(&sample_h(base, n, res)?);
            emit(out, path.as_deref(), csv.as_bytes())?;
        }
        Command::Trie { base, word, format } => {
            let word = Word::parse(base, &word)?;
            let trie = build_trie(&word)?;
            match format {
                TrieFormat::Dot => out.write_all(trie.to_dot().as_bytes())?,
                TrieFormat::Levels => writeln!(out, "{}", join(trie.level_counts()))?,
            }
        }
        Command::Verify { base, max, max_word, asymptotics } => {
            let results = run_suite(&SuiteConfig {
                bases: vec![base],
                max,
                max_word,
                include_asymptotics: asymptotics,
            });
            let failed = results.iter().filter(|r| !r.passed).count();
            for r in &results {
                writeln!(out, "{r}")?;
            }
            writeln!(out, "{} checks, {failed} failed", results.len())?;
            if failed > 0 {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_VAR).ok().and_then(|v| v.parse::<usize>().ok()) {
        // a pool may already exist when called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to stderr. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            1
        }
        Err(Failure::Verification) => 1,
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let code = run_with(argv, &mut lock);
    let _ = lock.flush();
    code
}
