// SPDX-License-Identifier: Apache-2.0

//! `permpack <verb> [flags]`.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 when a
//! verification finds a counterexample.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{serialize_int, serialize_uint, Count};
use crate::blocks::{build_from_blocks, parse_blocks};
use crate::count::count_occurrences;
use crate::enumerate::{enumerate_all, enumerate_layered};
use crate::error::Error;
use crate::formulas::{
    density_2beta, density_2beta_with_convergence, density_alpha_alpha,
    density_alpha_alpha_with_convergence, DensityReport, DEFAULT_DECIMAL_DIGITS,
};
use crate::pattern::PatternSpec;
use crate::perm::parse_permutation;
use crate::search::{
    g_k, galvin_ratios, max_over_all, max_over_layered, RatioMode, RatioRecord, RatioTable,
    SearchConfig, SearchRecord, SearchResult,
};
use crate::verify::{run_sweep, Lemma, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;

const MAX_DEFAULT_WORKERS: usize = 8;

#[derive(Debug, Parser)]
#[command(
    name = "permpack",
    version,
    about = "Exact packing of permutation patterns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for searches (default: available cores, capped at 8).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Largest n searched over all permutations.
    #[arg(long, global = true)]
    max_exhaustive_n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Layers (1^alpha, alpha).
    Aa,
    /// Layers (1, 1, beta).
    #[value(name = "2b")]
    TwoB,
    /// Layers (1^alpha, beta).
    Ab,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Restrict {
    All,
    Layered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Layered,
    Formula,
}

#[derive(Debug, Args)]
struct PatternArgs {
    /// Pattern in one-line notation ("1 2 4 3" or "1243").
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    alpha: Option<usize>,
    #[arg(long)]
    beta: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count occurrences of a pattern in a permutation.
    Count {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long, conflicts_with = "sigma_blocks")]
        sigma: Option<String>,
        /// Layered text permutation as blocks, e.g. "A4,L4".
        #[arg(long)]
        sigma_blocks: Option<String>,
    },
    /// Maximize occurrences over S_n or over layered permutations.
    Maximize {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Restrict::All)]
        restrict: Restrict,
    },
    /// Maximize (1, 1, beta) over antilayer-then-k-layers structures.
    Gk {
        #[arg(long)]
        beta: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Exact packing density of a two-block family.
    Density {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        beta: Option<usize>,
        /// Also tabulate closed-form ratios up to this n.
        #[arg(long)]
        converge_to: Option<usize>,
        /// Digits after the decimal point.
        #[arg(long, default_value_t = DEFAULT_DECIMAL_DIGITS)]
        digits: usize,
    },
    /// Table of g(tau, n) / C(n, m).
    Ratios {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Mode::Layered)]
        mode: Mode,
    },
    /// Run an exhaustive verification sweep.
    Verify {
        /// tech | isolated | push | sort | move | merge | restriction | galvin
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        beta: Option<usize>,
    },
    /// List all permutations, or all layered ones as block structures.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        layered: bool,
    },
}

enum Failure {
    Usage(String),
    Counterexample,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("output error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(format!("output error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("output error: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };

    let mut file;
    let out: &mut dyn Write = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                file = io::BufWriter::new(f);
                &mut file
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot create {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
        None => stdout,
    };

    let result = execute(&cli, out, stderr).and_then(|()| out.flush().map_err(Failure::from));
    if let Err(Failure::Usage(msg)) = &result {
        let _ = writeln!(stderr, "error: {msg}");
    }
    exit_code(result)
}

fn search_config(cli: &Cli) -> SearchConfig {
    let workers = cli.workers.or_else(|| {
        std::thread::available_parallelism()
            .ok()
            .map(|n| n.get().min(MAX_DEFAULT_WORKERS))
    });
    let mut config = SearchConfig {
        workers,
        ..SearchConfig::default()
    };
    if let Some(bound) = cli.max_exhaustive_n {
        config.max_exhaustive_n = bound;
    }
    config
}

fn resolve_pattern(p: &PatternArgs) -> Result<PatternSpec, Failure> {
    let need = |v: Option<usize>, flag: &str, fam: &str| {
        v.ok_or_else(|| Failure::Usage(format!("--family {fam} needs --{flag}")))
    };
    match (&p.pattern, p.family) {
        (Some(_), Some(_)) => Err(Failure::Usage(
            "give either --pattern or --family, not both".into(),
        )),
        (None, None) => Err(Failure::Usage(
            "a pattern is required (--pattern or --family)".into(),
        )),
        (Some(text), None) => {
            if p.alpha.is_some() || p.beta.is_some() {
                return Err(Failure::Usage(
                    "--alpha/--beta only apply with --family".into(),
                ));
            }
            Ok(PatternSpec::explicit(parse_permutation(text)?)?)
        }
        (None, Some(Family::Aa)) => Ok(PatternSpec::alpha_alpha(need(p.alpha, "alpha", "aa")?)?),
        (None, Some(Family::TwoB)) => Ok(PatternSpec::two_beta(need(p.beta, "beta", "2b")?)?),
        (None, Some(Family::Ab)) => Ok(PatternSpec::alpha_beta(
            need(p.alpha, "alpha", "ab")?,
            need(p.beta, "beta", "ab")?,
        )?),
    }
}

fn write_csv(
    out: &mut dyn Write,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> CmdResult {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CmdResult {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let config = search_config(cli);
    match &cli.command {
        Command::Count {
            pattern,
            sigma,
            sigma_blocks,
        } => cmd_count(
            cli.format,
            out,
            pattern,
            sigma.as_deref(),
            sigma_blocks.as_deref(),
        ),
        Command::Maximize {
            pattern,
            n,
            restrict,
        } => {
            let tau = resolve_pattern(pattern)?;
            let result = match restrict {
                Restrict::All => max_over_all(&tau, *n, &config)?,
                Restrict::Layered => max_over_layered(&tau, *n, &config)?,
            };
            emit_search(cli.format, out, &result)
        }
        Command::Gk { beta, n, k } => {
            let tau = PatternSpec::two_beta(*beta)?;
            let result = g_k(&tau, *n, *k, &config)?;
            emit_search(cli.format, out, &result)
        }
        Command::Density {
            family,
            alpha,
            beta,
            converge_to,
            digits,
        } => {
            let report =
                match family {
                    Family::Aa => {
                        let a = alpha
                            .ok_or_else(|| Failure::Usage("--family aa needs --alpha".into()))?;
                        match converge_to {
                            Some(n) => density_alpha_alpha_with_convergence(a, *n)?,
                            None => density_alpha_alpha(a)?,
                        }
                    }
                    Family::TwoB => {
                        let b =
                            beta.ok_or_else(|| Failure::Usage("--family 2b needs --beta".into()))?;
                        match converge_to {
                            Some(n) => density_2beta_with_convergence(b, *n)?,
                            None => density_2beta(b)?,
                        }
                    }
                    Family::Ab => return Err(Failure::Usage(
                        "no closed-form density for general (1^alpha, beta); use --family aa or 2b"
                            .into(),
                    )),
                };
            emit_density(cli.format, out, &report, *digits)
        }
        Command::Ratios {
            pattern,
            n_max,
            mode,
        } => {
            let tau = resolve_pattern(pattern)?;
            let mode = match mode {
                Mode::Exhaustive => RatioMode::Exhaustive,
                Mode::Layered => RatioMode::Layered,
                Mode::Formula => RatioMode::Formula,
            };
            let table = galvin_ratios(&tau, *n_max, mode, &config)?;
            emit_ratios(cli.format, out, &table)?;
            ratio_status(&table, stderr)
        }
        Command::Verify { lemma, n_max, beta } => {
            let lemma: Lemma = lemma.parse()?;
            let n_max = n_max.unwrap_or_else(|| lemma.default_n_max());
            let betas: Vec<usize> = beta.iter().copied().collect();
            let report = run_sweep(lemma, n_max, &betas, &config)?;
            emit_verify(cli.format, out, stderr, &report)?;
            verify_status(&report)
        }
        Command::Enumerate { n, layered } => cmd_enumerate(cli.format, out, *n, *layered, &config),
    }
}

fn ratio_status(table: &RatioTable, stderr: &mut dyn Write) -> CmdResult {
    if table.is_nonincreasing() {
        return Ok(());
    }
    for f in &table.failures {
        writeln!(
            stderr,
            "FAILURE ratio increased at n = {}: {} -> {}",
            f.n, f.previous, f.current
        )?;
    }
    Err(Failure::Counterexample)
}

fn verify_status(report: &VerifyReport) -> CmdResult {
    if report.failures() == 0 {
        Ok(())
    } else {
        Err(Failure::Counterexample)
    }
}

fn exit_code(result: CmdResult) -> i32 {
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(_)) => EXIT_USAGE,
        Err(Failure::Counterexample) => EXIT_COUNTEREXAMPLE,
    }
}

#[derive(Serialize)]
struct CountRecord {
    pattern: String,
    sigma: String,
    #[serde(serialize_with = "serialize_uint")]
    count: Count,
}

fn cmd_count(
    format: Format,
    out: &mut dyn Write,
    pattern: &PatternArgs,
    sigma: Option<&str>,
    sigma_blocks: Option<&str>,
) -> CmdResult {
    let tau = resolve_pattern(pattern)?;
    let sigma = match (sigma, sigma_blocks) {
        (Some(text), None) => parse_permutation(text)?,
        (None, Some(text)) => build_from_blocks(&parse_blocks(text)?),
        _ => {
            return Err(Failure::Usage(
                "count needs exactly one of --sigma or --sigma-blocks".into(),
            ))
        }
    };
    let count = count_occurrences(tau.permutation(), &sigma);
    let rec = CountRecord {
        pattern: tau.to_string(),
        sigma: sigma.to_string(),
        count,
    };
    match format {
        Format::Human => writeln!(out, "{}", rec.count)?,
        Format::Json => write_json(out, &rec)?,
        Format::Csv => write_csv(
            out,
            &["pattern", "sigma", "count"],
            [vec![
                rec.pattern.clone(),
                rec.sigma.clone(),
                rec.count.to_string(),
            ]],
        )?,
    }
    Ok(())
}

fn emit_search(format: Format, out: &mut dyn Write, result: &SearchResult) -> CmdResult {
    let rec: SearchRecord = result.record();
    match format {
        Format::Human => {
            writeln!(
                out,
                "pattern {}  n = {}  restriction {}",
                rec.pattern, rec.n, rec.restriction
            )?;
            writeln!(
                out,
                "max {}  (searched {} candidates)",
                rec.max_count, rec.space_size
            )?;
            if let Some(flags) = &rec.gk_flags {
                writeln!(
                    out,
                    "feasible {}  witnesses satisfy sizes {}  empty antilayer attains max {}",
                    flags.feasible,
                    flags.witnesses_satisfy_sizes,
                    flags.empty_antilayer_attains_max
                )?;
            }
            writeln!(out, "witnesses (smallest {} at most):", rec.witness_cap)?;
            for (w, b) in rec.witnesses.iter().zip(&rec.witness_blocks) {
                match b {
                    Some(b) => writeln!(out, "{w}\t{b}")?,
                    None => writeln!(out, "{w}")?,
                }
            }
        }
        Format::Json => write_json(out, &rec)?,
        Format::Csv => write_csv(out, &SearchRecord::CSV_HEADER, rec.csv_rows())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct DensityJson {
    #[serde(serialize_with = "serialize_uint")]
    num: Count,
    #[serde(serialize_with = "serialize_uint")]
    den: Count,
    float: String,
    #[serde(serialize_with = "serialize_int")]
    xi_num: num_bigint::BigInt,
    #[serde(serialize_with = "serialize_int")]
    xi_den: num_bigint::BigInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    convergence: Option<Vec<RatioRecord>>,
}

fn emit_density(
    format: Format,
    out: &mut dyn Write,
    report: &DensityReport,
    digits: usize,
) -> CmdResult {
    let rec = DensityJson {
        num: report.numerator.clone(),
        den: report.denominator.clone(),
        float: report.decimal(digits),
        xi_num: report.xi.numer().clone(),
        xi_den: report.xi.denom().clone(),
        convergence: report.convergence.as_ref().map(RatioTable::records),
    };
    let head = vec![
        rec.num.to_string(),
        rec.den.to_string(),
        rec.float.clone(),
        rec.xi_num.to_string(),
        rec.xi_den.to_string(),
    ];
    match format {
        Format::Human => {
            writeln!(out, "density {}/{} = {}", rec.num, rec.den, rec.float)?;
            writeln!(out, "xi {}/{}", rec.xi_num, rec.xi_den)?;
            if let Some(rows) = &rec.convergence {
                for r in rows {
                    writeln!(
                        out,
                        "n = {}  ratio {}/{} = {}",
                        r.n, r.ratio_num, r.ratio_den, r.ratio_float
                    )?;
                }
            }
        }
        Format::Json => write_json(out, &rec)?,
        Format::Csv => {
            let mut header = vec!["num", "den", "float", "xi_num", "xi_den"];
            match &rec.convergence {
                None => write_csv(out, &header, [head])?,
                Some(rows) => {
                    header.extend(RatioRecord::CSV_HEADER);
                    let rows = rows.iter().map(|r| {
                        let mut row = head.clone();
                        row.extend(r.csv_row());
                        row
                    });
                    write_csv(out, &header, rows)?;
                }
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct FailureJson {
    n: usize,
    previous: String,
    current: String,
}

#[derive(Serialize)]
struct RatiosJson {
    pattern: String,
    mode: RatioMode,
    nonincreasing: bool,
    rows: Vec<RatioRecord>,
    failures: Vec<FailureJson>,
}

fn emit_ratios(format: Format, out: &mut dyn Write, table: &RatioTable) -> CmdResult {
    let rows = table.records();
    match format {
        Format::Human => {
            writeln!(out, "pattern {}  mode {}", table.pattern, table.mode)?;
            for r in &rows {
                let flag = if table.failures.iter().any(|f| f.n == r.n) {
                    "  FAILURE"
                } else {
                    ""
                };
                writeln!(
                    out,
                    "n = {}  g = {}  C = {}  ratio {}/{} = {}{flag}",
                    r.n, r.count, r.binom, r.ratio_num, r.ratio_den, r.ratio_float
                )?;
            }
        }
        Format::Json => {
            let failures = table
                .failures
                .iter()
                .map(|f| FailureJson {
                    n: f.n,
                    previous: f.previous.to_string(),
                    current: f.current.to_string(),
                })
                .collect();
            write_json(
                out,
                &RatiosJson {
                    pattern: table.pattern.to_string(),
                    mode: table.mode,
                    nonincreasing: table.is_nonincreasing(),
                    rows,
                    failures,
                },
            )?;
        }
        Format::Csv => write_csv(
            out,
            &RatioRecord::CSV_HEADER,
            rows.iter().map(RatioRecord::csv_row),
        )?,
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    lemma: &'a str,
    cases: usize,
    failures: usize,
}

fn emit_verify(
    format: Format,
    out: &mut dyn Write,
    stderr: &mut dyn Write,
    report: &VerifyReport,
) -> CmdResult {
    let summary = format!(
        "lemma {}: {} cases, {} failures",
        report.lemma,
        report.cases.len(),
        report.failures()
    );
    match format {
        Format::Human | Format::Json => {
            for c in &report.cases {
                writeln!(out, "{}", c.json)?;
            }
            if format == Format::Json {
                write_json(
                    out,
                    &VerifySummary {
                        lemma: report.lemma.name(),
                        cases: report.cases.len(),
                        failures: report.failures(),
                    },
                )?;
            } else {
                writeln!(out, "{summary}")?;
            }
        }
        Format::Csv => {
            write_csv(
                out,
                &report.csv_header,
                report.cases.iter().map(|c| c.csv.clone()),
            )?;
            writeln!(stderr, "{summary}")?;
        }
    }
    for c in report.failing() {
        writeln!(stderr, "FAILURE {}", c.json)?;
    }
    Ok(())
}

fn cmd_enumerate(
    format: Format,
    out: &mut dyn Write,
    n: usize,
    layered: bool,
    config: &SearchConfig,
) -> CmdResult {
    let items: Vec<String> = if layered {
        enumerate_layered(n).map(|b| b.to_string()).collect()
    } else {
        enumerate_all(n, config.max_exhaustive_n)?
            .map(|p| p.to_string())
            .collect()
    };
    match format {
        Format::Human => {
            for item in &items {
                writeln!(out, "{item}")?;
            }
        }
        Format::Json => write_json(out, &items)?,
        Format::Csv => {
            let column = if layered { "blocks" } else { "permutation" };
            write_csv(
                out,
                &["index", column],
                items
                    .iter()
                    .enumerate()
                    .map(|(i, s)| vec![i.to_string(), s.clone()]),
            )?;
        }
    }
    Ok(())
}
