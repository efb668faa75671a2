//! Command-line interface over the corpus pipeline.
//!
//! Subcommands: `simplify` rewrites a corpus, `stats` reports token counts
//! and category shares, `distribution` reports which categories removals
//! land on, `score-table` prints the ranking rules, and `oracle-check`
//! verifies greedy removals against the exact knapsack optimum on small
//! snippets.
//!
//! Exit codes: 0 on success, 1 on usage errors or a failed oracle check,
//! 2 on input/output and corpus-format errors. Reports and progress render
//! to standard error and record data goes to files; only `score-table` and
//! the `oracle-check` verdict print to standard output.

use std::ffi::OsString;
use std::fs;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus::{self, PipelineConfig};
use crate::error::{ConfigError, CorpusError};
use crate::lexer;
use crate::ranker::{self, Category, CategorySet, RankConfig};
use crate::report::{CorpusReport, Task};
use crate::scanner::StructuralSpans;
use crate::simplify::{self, RemovalMode, SimplificationConfig, DEFAULT_RANDOM_SEED};

/// Environment variable consulted when `--jobs` is absent.
pub const JOBS_ENV_VAR: &str = "SLIMCODE_JOBS";

/// Largest snippet `oracle-check` will test; exhaustive optimality only
/// needs small inputs, and the check is quadratic in snippet length.
const ORACLE_MAX_TOKENS: usize = 30;

/// Ratio sweep used by `oracle-check` when `--ratio` is not given.
const ORACLE_RATIOS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

#[derive(Debug, Parser)]
#[command(
    name = "slimcode",
    version,
    about = "Rank and remove low-importance tokens from Java code corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simplify every record of a JSONL corpus and write augmented records
    Simplify(SimplifyArgs),
    /// Report token counts and category shares without simplifying
    Stats(StatsArgs),
    /// Report which categories the removed tokens come from
    Distribution(DistributionArgs),
    /// Print the token ranking table
    ScoreTable(ScoreTableArgs),
    /// Check that greedy removals match the exact knapsack optimum
    OracleCheck(OracleCheckArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Input corpus: JSONL with a string `code` field per record
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    /// Worker threads; defaults to SLIMCODE_JOBS, then to all cores
    #[arg(long, value_name = "N")]
    jobs: Option<NonZeroUsize>,
}

#[derive(Debug, Args)]
struct RankArgs {
    /// Swap scores 5 and 6, making control-structure interiors cheaper to
    /// remove than invocation interiors
    #[arg(long = "swap-56")]
    swap_56: bool,
}

impl RankArgs {
    fn config(&self) -> RankConfig {
        RankConfig {
            swap_control_invocation: self.swap_56,
        }
    }
}

#[derive(Debug, Args)]
struct RemovalArgs {
    /// Fraction of tokens to remove from over-budget snippets
    #[arg(long, value_name = "FRACTION", default_value_t = 0.3)]
    ratio: f64,
    /// Input-length preset: search keeps 200 tokens, summarization 256
    #[arg(long, value_enum, value_name = "TASK", default_value_t = TaskArg::Search)]
    task: TaskArg,
    /// Input length budget in tokens; overrides the task preset
    #[arg(long, value_name = "TOKENS")]
    max_len: Option<usize>,
    /// Removal strategy
    #[arg(long, value_enum, value_name = "MODE", default_value_t = ModeArg::Greedy)]
    mode: ModeArg,
    /// Categories to strip under `--mode category`, comma-separated:
    /// signature, identifier, control, invocation, symbol, other
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    categories: Vec<String>,
    /// Generator seed for `--mode random`
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Write the run report as JSON to this path
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Per-token price used to express removed tokens as a cost saving
    #[arg(long, value_name = "PRICE")]
    price_per_token: Option<f64>,
}

#[derive(Debug, Args)]
struct SimplifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Output corpus path; one augmented record per retained input record
    #[arg(long, value_name = "PATH")]
    output: PathBuf,
    #[command(flatten)]
    removal: RemovalArgs,
    #[command(flatten)]
    rank: RankArgs,
    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    rank: RankArgs,
    /// Write the run report as JSON to this path
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DistributionArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    removal: RemovalArgs,
    #[command(flatten)]
    rank: RankArgs,
    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Debug, Args)]
struct ScoreTableArgs {
    #[command(flatten)]
    rank: RankArgs,
}

#[derive(Debug, Args)]
struct OracleCheckArgs {
    /// Input corpus: JSONL with a string `code` field per record
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    /// Check a single ratio instead of the 0.1-0.9 sweep
    #[arg(long, value_name = "FRACTION")]
    ratio: Option<f64>,
    #[command(flatten)]
    rank: RankArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TaskArg {
    Search,
    Summarization,
}

impl From<TaskArg> for Task {
    fn from(arg: TaskArg) -> Self {
        match arg {
            TaskArg::Search => Task::Search,
            TaskArg::Summarization => Task::Summarization,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Greedy,
    Random,
    Category,
    Pdg,
}

/// A dispatch failure bound to an exit code.
#[derive(Debug)]
enum Failure {
    /// Bad flag value or combination: exit 1.
    Usage(String),
    /// Unreadable, unwritable, or malformed data: exit 2.
    Data(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(message) | Failure::Data(message) => message,
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(err: ConfigError) -> Self {
        Failure::Usage(err.to_string())
    }
}

impl From<CorpusError> for Failure {
    fn from(err: CorpusError) -> Self {
        match err {
            CorpusError::Config(inner) => Failure::Usage(inner.to_string()),
            other => Failure::Data(other.to_string()),
        }
    }
}

/// Parses `args` (the program name included) and runs the selected
/// subcommand. Returns the exit code instead of exiting so tests can call
/// it in-process.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version land here too; they are not usage errors
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("slimcode: {}", failure.message());
            failure.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Simplify(args) => run_simplify(args),
        Command::Stats(args) => run_stats(args),
        Command::Distribution(args) => run_distribution(args),
        Command::ScoreTable(args) => run_score_table(args),
        Command::OracleCheck(args) => run_oracle_check(args),
    }
}

/// Resolves the mode flags, rejecting combinations that would silently
/// ignore a flag.
fn resolve_mode(args: &RemovalArgs) -> Result<RemovalMode, Failure> {
    let usage = |message: &str| Failure::Usage(message.to_string());
    if args.mode != ModeArg::Category && !args.categories.is_empty() {
        return Err(usage("--categories requires --mode category"));
    }
    if args.mode != ModeArg::Random && args.seed.is_some() {
        return Err(usage("--seed requires --mode random"));
    }
    match args.mode {
        ModeArg::Greedy => Ok(RemovalMode::Greedy),
        ModeArg::Random => Ok(RemovalMode::Random {
            seed: args.seed.unwrap_or(DEFAULT_RANDOM_SEED),
        }),
        ModeArg::Category => {
            if args.categories.is_empty() {
                return Err(usage("--mode category requires --categories"));
            }
            let mut set = CategorySet::empty();
            for name in &args.categories {
                let category = Category::from_str(name)
                    .map_err(|message| Failure::Usage(format!("--categories: {message}")))?;
                set.insert(category);
            }
            Ok(RemovalMode::Category(set))
        }
        ModeArg::Pdg => Ok(RemovalMode::SemanticPdg),
    }
}

/// `--jobs`, then the SLIMCODE_JOBS environment variable, then all cores.
fn resolve_jobs(flag: Option<NonZeroUsize>) -> Result<usize, Failure> {
    if let Some(jobs) = flag {
        return Ok(jobs.get());
    }
    match std::env::var(JOBS_ENV_VAR) {
        Ok(raw) => raw
            .trim()
            .parse::<NonZeroUsize>()
            .map(NonZeroUsize::get)
            .map_err(|_| {
                Failure::Usage(format!(
                    "{JOBS_ENV_VAR} must be a positive integer, got {raw:?}"
                ))
            }),
        Err(_) => Ok(thread::available_parallelism()
            .map(NonZeroUsize::get)
            .unwrap_or(1)),
    }
}

fn pipeline_config(
    removal: &RemovalArgs,
    rank: &RankArgs,
    price_per_token: Option<f64>,
    jobs: Option<NonZeroUsize>,
) -> Result<PipelineConfig, Failure> {
    let mode = resolve_mode(removal)?;
    if let Some(price) = price_per_token {
        if !price.is_finite() || price < 0.0 {
            return Err(Failure::Usage(format!(
                "--price-per-token must be a non-negative number, got {price}"
            )));
        }
    }
    let task = Task::from(removal.task);
    Ok(PipelineConfig {
        ratio: removal.ratio,
        input_length: removal
            .max_len
            .unwrap_or_else(|| task.default_input_length()),
        mode: Some(mode),
        rank: rank.config(),
        task,
        price_per_token,
        jobs: resolve_jobs(jobs)?,
    })
}

/// Prints warnings and the text report to standard error and, when asked,
/// writes the JSON report.
fn finish_report(
    report: &CorpusReport,
    warnings: &[String],
    json_path: Option<&Path>,
) -> Result<(), Failure> {
    for warning in warnings {
        eprintln!("slimcode: warning: {warning}");
    }
    eprint!("{}", report.render_text());
    if let Some(path) = json_path {
        let mut body = serde_json::to_string_pretty(report)
            .map_err(|err| Failure::Data(format!("{}: {err}", path.display())))?;
        body.push('\n');
        fs::write(path, body).map_err(|err| Failure::Data(format!("{}: {err}", path.display())))?;
    }
    Ok(())
}

fn run_simplify(args: SimplifyArgs) -> Result<i32, Failure> {
    let config = pipeline_config(
        &args.removal,
        &args.rank,
        args.report.price_per_token,
        args.input.jobs,
    )?;
    let summary = corpus::run_pipeline(&args.input.input, Some(&args.output), &config)?;
    finish_report(
        &summary.report,
        &summary.warnings,
        args.report.report.as_deref(),
    )?;
    eprintln!(
        "slimcode: wrote {} records to {}",
        summary.written,
        args.output.display()
    );
    Ok(0)
}

fn run_stats(args: StatsArgs) -> Result<i32, Failure> {
    let jobs = resolve_jobs(args.input.jobs)?;
    let report = corpus::corpus_stats(&args.input.input, args.rank.config(), jobs)?;
    finish_report(&report, &[], args.report.as_deref())?;
    Ok(0)
}

fn run_distribution(args: DistributionArgs) -> Result<i32, Failure> {
    let config = pipeline_config(
        &args.removal,
        &args.rank,
        args.report.price_per_token,
        args.input.jobs,
    )?;
    let summary = corpus::run_pipeline(&args.input.input, None, &config)?;
    finish_report(
        &summary.report,
        &summary.warnings,
        args.report.report.as_deref(),
    )?;
    Ok(0)
}

fn run_score_table(args: ScoreTableArgs) -> Result<i32, Failure> {
    println!("score  rule (lower scores are removed later)");
    for (score, rule) in ranker::score_table(args.rank.config()) {
        println!("{score:>5}  {rule}");
    }
    Ok(0)
}

/// Streams the corpus and, for every snippet of at most
/// [`ORACLE_MAX_TOKENS`] tokens, compares the greedy removal value against
/// the exact knapsack optimum at each ratio. The budget is taken against the
/// snippet's own length so every ratio exercises a real removal.
fn run_oracle_check(args: OracleCheckArgs) -> Result<i32, Failure> {
    let rank = args.rank.config();
    let ratios: Vec<f64> = match args.ratio {
        Some(ratio) => {
            if !(0.0..=1.0).contains(&ratio) {
                return Err(ConfigError::RatioOutOfRange(ratio).into());
            }
            vec![ratio]
        }
        None => ORACLE_RATIOS.to_vec(),
    };

    let mut checked = 0usize;
    let mut oversized = 0usize;
    let mut skipped = 0usize;
    let mut mismatches = 0usize;
    for item in corpus::ingest(&args.input)? {
        let (_, record, _) = item?;
        let tokens = match lexer::lex(&record.code) {
            Ok(tokens) => tokens,
            Err(err) => {
                eprintln!("slimcode: warning: record {}: {err}", record.id);
                skipped += 1;
                continue;
            }
        };
        if tokens.len() > ORACLE_MAX_TOKENS {
            oversized += 1;
            continue;
        }
        if tokens.is_empty() {
            skipped += 1;
            continue;
        }
        let spans = match StructuralSpans::scan(&tokens) {
            Ok(spans) => spans,
            Err(err) => {
                eprintln!("slimcode: warning: record {}: {err}", record.id);
                skipped += 1;
                continue;
            }
        };
        let ranked = ranker::assign_scores(&tokens, &spans, rank);
        for &ratio in &ratios {
            let config = SimplificationConfig::new(ratio, tokens.len(), RemovalMode::Greedy);
            let outcome = simplify::simplify(&ranked, &config, None)
                .map_err(|err| Failure::Data(format!("record {}: {err}", record.id)))?;
            let removed_value: u64 = outcome.removed.iter().map(|r| u64::from(r.score)).sum();
            let optimum =
                simplify::knapsack_max_removed_value(&ranked.scores, outcome.removed.len());
            if removed_value != optimum {
                mismatches += 1;
                eprintln!(
                    "slimcode: record {}: greedy removed value {removed_value} != knapsack optimum {optimum} at ratio {ratio}",
                    record.id
                );
            }
        }
        checked += 1;
    }

    let verdict = if mismatches == 0 {
        "greedy matches the knapsack optimum".to_string()
    } else {
        format!("{mismatches} mismatches")
    };
    println!(
        "oracle-check: {checked} snippets x {} ratio(s): {verdict}",
        ratios.len()
    );
    if oversized > 0 {
        eprintln!(
            "slimcode: {oversized} snippets over {ORACLE_MAX_TOKENS} tokens were not checked"
        );
    }
    if skipped > 0 {
        eprintln!("slimcode: {skipped} snippets could not be analyzed");
    }
    Ok(if mismatches == 0 { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    use tempfile::NamedTempFile;

    fn write_corpus(lines: &[&str]) -> NamedTempFile {
        let mut file = NamedTempFile::new().expect("temp file");
        for line in lines {
            writeln!(file, "{line}").expect("write");
        }
        file.flush().expect("flush");
        file
    }

    fn small_corpus() -> NamedTempFile {
        write_corpus(&[
            r#"{"id": "m1", "code": "public int add(int a, int b) { return a + b; }", "docstring": "Adds two ints."}"#,
            r#"{"id": "m2", "code": "void log(String s) { if (s != null) { sink.accept(s); } }"}"#,
            r#"{"id": "m3", "code": "int half(int x) { return x / 2; }"}"#,
        ])
    }

    fn run_args(args: &[&str]) -> i32 {
        run(std::iter::once("slimcode").chain(args.iter().copied()))
    }

    #[test]
    fn unknown_flags_are_usage_errors() {
        assert_eq!(run_args(&["simplify", "--bogus"]), 1);
        assert_eq!(run_args(&["no-such-subcommand"]), 1);
        assert_eq!(run_args(&[]), 1);
    }

    #[test]
    fn help_and_version_exit_zero() {
        assert_eq!(run_args(&["--help"]), 0);
        assert_eq!(run_args(&["--version"]), 0);
        assert_eq!(run_args(&["simplify", "--help"]), 0);
    }

    #[test]
    fn out_of_range_ratio_fails_before_io() {
        // input path does not exist: validation must come first
        assert_eq!(
            run_args(&[
                "simplify",
                "--input",
                "/nonexistent/corpus.jsonl",
                "--output",
                "/nonexistent/out.jsonl",
                "--ratio",
                "1.5"
            ]),
            1
        );
    }

    #[test]
    fn mismatched_mode_flags_are_rejected() {
        let removal = |mode, categories: &[&str], seed| RemovalArgs {
            ratio: 0.3,
            task: TaskArg::Search,
            max_len: None,
            mode,
            categories: categories.iter().map(|s| s.to_string()).collect(),
            seed,
        };
        assert!(resolve_mode(&removal(ModeArg::Greedy, &["symbol"], None)).is_err());
        assert!(resolve_mode(&removal(ModeArg::Greedy, &[], Some(7))).is_err());
        assert!(resolve_mode(&removal(ModeArg::Category, &[], None)).is_err());
        assert!(resolve_mode(&removal(ModeArg::Category, &["bogus"], None)).is_err());
        assert!(resolve_mode(&removal(ModeArg::Pdg, &[], Some(7))).is_err());

        let mode = resolve_mode(&removal(ModeArg::Category, &["symbol", "other"], None))
            .expect("valid category mode");
        match mode {
            RemovalMode::Category(set) => {
                assert!(set.contains(Category::SymbolToken));
                assert!(set.contains(Category::Other));
            }
            other => panic!("unexpected mode {other:?}"),
        }
        match resolve_mode(&removal(ModeArg::Random, &[], None)).expect("valid random mode") {
            RemovalMode::Random { seed } => assert_eq!(seed, DEFAULT_RANDOM_SEED),
            other => panic!("unexpected mode {other:?}"),
        }
    }

    #[test]
    fn jobs_fall_back_to_env_then_cores() {
        assert_eq!(resolve_jobs(NonZeroUsize::new(3)).unwrap(), 3);
        // flag wins over whatever the environment says, and the default is
        // at least one worker
        assert!(resolve_jobs(None).map_or(true, |jobs| jobs >= 1));
        std::env::set_var(JOBS_ENV_VAR, "5");
        assert_eq!(resolve_jobs(None).unwrap(), 5);
        std::env::set_var(JOBS_ENV_VAR, "zero");
        assert!(resolve_jobs(None).is_err());
        std::env::set_var(JOBS_ENV_VAR, "0");
        assert!(resolve_jobs(None).is_err());
        std::env::remove_var(JOBS_ENV_VAR);
        assert!(resolve_jobs(None).unwrap() >= 1);
    }

    #[test]
    fn missing_input_is_a_data_error() {
        assert_eq!(
            run_args(&[
                "simplify",
                "--input",
                "/nonexistent/corpus.jsonl",
                "--output",
                "/nonexistent/out.jsonl"
            ]),
            2
        );
        assert_eq!(
            run_args(&["stats", "--input", "/nonexistent/corpus.jsonl"]),
            2
        );
    }

    #[test]
    fn simplify_writes_output_and_json_report() {
        let input = small_corpus();
        let dir = tempfile::tempdir().expect("temp dir");
        let output = dir.path().join("out.jsonl");
        let report = dir.path().join("report.json");
        let code = run_args(&[
            "simplify",
            "--input",
            input.path().to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
            "--ratio",
            "0.3",
            "--max-len",
            "10",
            "--report",
            report.to_str().unwrap(),
            "--price-per-token",
            "0.00001",
            "--jobs",
            "2",
        ]);
        assert_eq!(code, 0);
        let body = fs::read_to_string(&output).expect("output written");
        assert_eq!(body.lines().count(), 3);
        for line in body.lines() {
            let value: serde_json::Value = serde_json::from_str(line).expect("valid JSON");
            assert!(value["simplified_code"].is_string());
            assert_eq!(value["removal_mode"], "greedy");
        }
        let report: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&report).expect("report written"))
                .expect("valid report JSON");
        assert_eq!(report["records_total"], 3);
        assert!(report["savings"]["cost_saving"].is_number());
    }

    #[test]
    fn stats_and_distribution_run_clean() {
        let input = small_corpus();
        let path = input.path().to_str().unwrap().to_string();
        assert_eq!(run_args(&["stats", "--input", &path, "--jobs", "1"]), 0);
        assert_eq!(
            run_args(&[
                "distribution",
                "--input",
                &path,
                "--ratio",
                "0.4",
                "--max-len",
                "8",
                "--jobs",
                "1"
            ]),
            0
        );
    }

    #[test]
    fn score_table_prints_and_exits_zero() {
        assert_eq!(run_args(&["score-table"]), 0);
        assert_eq!(run_args(&["score-table", "--swap-56"]), 0);
    }

    #[test]
    fn oracle_check_passes_on_small_corpus() {
        let input = small_corpus();
        let path = input.path().to_str().unwrap().to_string();
        assert_eq!(run_args(&["oracle-check", "--input", &path]), 0);
        assert_eq!(
            run_args(&["oracle-check", "--input", &path, "--ratio", "0.5"]),
            0
        );
        assert_eq!(
            run_args(&["oracle-check", "--input", &path, "--ratio", "2.0"]),
            1
        );
    }
}
