//! JSONL corpus ingestion and the batch simplification pipeline.
//!
//! Input is one JSON object per line with a `"code"` string, an optional
//! `"id"` (string or number; falls back to the line number), and an optional
//! `"docstring"`. Malformed lines are skipped and counted; when more than
//! half the lines seen are malformed — checked once at line 100 and again at
//! end of file — the whole file is rejected as not-a-corpus.
//!
//! The pipeline is deterministic by construction: records are numbered on
//! ingest, workers are pure, and a reorder buffer restores input order before
//! anything is written or accumulated. Byte-identical outputs and reports
//! regardless of `jobs`, and random-mode seeds derive from the record number,
//! not from scheduling.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::mpsc;
use std::sync::{Arc, Mutex};
use std::thread;

use serde_json::{Map, Value};

use crate::error::CorpusError;
use crate::lexer;
use crate::pdg;
use crate::ranker::{self, RankConfig};
use crate::report::{estimate_savings, CategoryCounts, CorpusReport, StatsAccumulator, Task};
use crate::scanner::StructuralSpans;
use crate::simplify::{simplify, RemovalMode, SimplificationConfig};

/// One corpus entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRecord {
    pub id: String,
    pub code: String,
    pub docstring: Option<String>,
}

/// Settings for a whole-corpus run.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    /// Target removal fraction, `[0, 1]`.
    pub ratio: f64,
    /// Model input length budget in tokens.
    pub input_length: usize,
    /// Removal strategy; `None` collects statistics without simplifying.
    pub mode: Option<RemovalMode>,
    pub rank: RankConfig,
    pub task: Task,
    /// When given, the report includes `removed_tokens * price` as a cost
    /// saving.
    pub price_per_token: Option<f64>,
    /// Worker threads; 1 runs fully sequentially.
    pub jobs: usize,
}

impl PipelineConfig {
    fn simplification(&self, record_seq: usize) -> Option<SimplificationConfig> {
        let mode = self.mode?;
        // Random seeds derive per record so results do not depend on how
        // records land on worker threads.
        let mode = match mode {
            RemovalMode::Random { seed } => RemovalMode::Random {
                seed: record_seed(seed, record_seq as u64),
            },
            other => other,
        };
        Some(SimplificationConfig::new(
            self.ratio,
            self.input_length,
            mode,
        ))
    }
}

/// What a pipeline run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineSummary {
    pub report: CorpusReport,
    /// Output lines written (0 when no output path was given).
    pub written: usize,
    /// First few skip reasons, for diagnostics; the full count is in the
    /// report.
    pub warnings: Vec<String>,
}

const MAX_WARNINGS: usize = 10;

/// SplitMix64: cheap, well-mixed stream of per-record seeds.
fn record_seed(base: u64, record_seq: u64) -> u64 {
    let mut z = base ^ record_seq.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn parse_record(line: &str, line_number: usize) -> Option<(CorpusRecord, Map<String, Value>)> {
    let value: Value = serde_json::from_str(line).ok()?;
    let map = match value {
        Value::Object(map) => map,
        _ => return None,
    };
    let code = map.get("code")?.as_str()?.to_string();
    let id = match map.get("id") {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Number(n)) => n.to_string(),
        _ => line_number.to_string(),
    };
    let docstring = map
        .get("docstring")
        .and_then(Value::as_str)
        .map(str::to_string);
    Some((
        CorpusRecord {
            id,
            code,
            docstring,
        },
        map,
    ))
}

/// Streaming JSONL reader. Yields `(sequence, record, raw_object)`; sequence
/// numbers count parsed records from zero. Malformed lines are counted, not
/// yielded.
#[derive(Debug)]
pub struct RecordReader {
    lines: io::Lines<BufReader<File>>,
    path: String,
    line_number: usize,
    parsed: usize,
    skipped: usize,
    fused: bool,
    eof_checked: bool,
}

impl RecordReader {
    pub fn open(path: &Path) -> Result<Self, CorpusError> {
        let display = path.display().to_string();
        let file = File::open(path).map_err(|source| CorpusError::Io {
            path: display.clone(),
            source,
        })?;
        Ok(RecordReader {
            lines: BufReader::new(file).lines(),
            path: display,
            line_number: 0,
            parsed: 0,
            skipped: 0,
            fused: false,
            eof_checked: false,
        })
    }

    /// Malformed lines seen so far.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    fn format_error(&self) -> CorpusError {
        CorpusError::Format {
            path: self.path.clone(),
            malformed: self.skipped,
            seen: self.line_number,
        }
    }
}

impl Iterator for RecordReader {
    type Item = Result<(usize, CorpusRecord, Map<String, Value>), CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.fused {
            return None;
        }
        loop {
            match self.lines.next() {
                None => {
                    if !self.eof_checked {
                        self.eof_checked = true;
                        if self.line_number > 0 && self.skipped * 2 > self.line_number {
                            self.fused = true;
                            return Some(Err(self.format_error()));
                        }
                    }
                    return None;
                }
                Some(Err(source)) => {
                    self.fused = true;
                    return Some(Err(CorpusError::Io {
                        path: self.path.clone(),
                        source,
                    }));
                }
                Some(Ok(line)) => {
                    self.line_number += 1;
                    let parsed = parse_record(&line, self.line_number);
                    if parsed.is_none() {
                        self.skipped += 1;
                    }
                    // early sanity check once 100 lines have been seen
                    if self.line_number == 100 && self.skipped * 2 > self.line_number {
                        self.fused = true;
                        return Some(Err(self.format_error()));
                    }
                    if let Some((record, raw)) = parsed {
                        self.parsed += 1;
                        return Some(Ok((self.parsed - 1, record, raw)));
                    }
                }
            }
        }
    }
}

/// Opens a corpus for streaming. Convenience wrapper over [`RecordReader`].
pub fn ingest(path: &Path) -> Result<RecordReader, CorpusError> {
    RecordReader::open(path)
}

/// Per-record result produced by workers.
struct Processed {
    seq: usize,
    /// Output JSONL line; `None` in stats-only mode or when skipped.
    line: Option<String>,
    /// Skip reason; when set, nothing else counts.
    skip_reason: Option<String>,
    token_count: usize,
    desc_words: Option<usize>,
    source_cats: CategoryCounts,
    removed_cats: CategoryCounts,
    removed_count: u64,
    achieved_ratio: Option<f64>,
}

impl Processed {
    fn skipped(seq: usize, reason: String) -> Self {
        Processed {
            seq,
            line: None,
            skip_reason: Some(reason),
            token_count: 0,
            desc_words: None,
            source_cats: CategoryCounts::default(),
            removed_cats: CategoryCounts::default(),
            removed_count: 0,
            achieved_ratio: None,
        }
    }
}

/// Pure per-record work: lex, scan, rank, optionally simplify, and prepare
/// the output line plus report contributions.
fn process_record(
    seq: usize,
    record: &CorpusRecord,
    mut raw: Map<String, Value>,
    config: &PipelineConfig,
    emit_lines: bool,
) -> Processed {
    let tokens = match lexer::lex(&record.code) {
        Ok(tokens) => tokens,
        Err(err) => return Processed::skipped(seq, format!("record {}: {err}", record.id)),
    };
    let spans = match StructuralSpans::scan(&tokens) {
        Ok(spans) => spans,
        Err(err) => return Processed::skipped(seq, format!("record {}: {err}", record.id)),
    };
    let ranked = ranker::assign_scores(&tokens, &spans, config.rank);

    let mut source_cats = CategoryCounts::default();
    for (tok, flags) in tokens.tokens().iter().zip(spans.flags()) {
        source_cats.add(ranker::primary_category(tok.kind, *flags, config.rank));
    }

    let mut out = Processed {
        seq,
        line: None,
        skip_reason: None,
        token_count: tokens.len(),
        desc_words: record
            .docstring
            .as_deref()
            .map(|d| d.split_whitespace().count()),
        source_cats,
        removed_cats: CategoryCounts::default(),
        removed_count: 0,
        achieved_ratio: None,
    };

    let Some(sim_config) = config.simplification(seq) else {
        return out;
    };
    let analysis = if matches!(sim_config.mode, RemovalMode::SemanticPdg) {
        match pdg::analyze(&tokens, &spans) {
            Ok(analysis) => Some(analysis),
            Err(err) => return Processed::skipped(seq, format!("record {}: {err}", record.id)),
        }
    } else {
        None
    };
    let outcome = match simplify(&ranked, &sim_config, analysis.as_ref()) {
        Ok(outcome) => outcome,
        Err(err) => return Processed::skipped(seq, format!("record {}: {err}", record.id)),
    };

    for removed in &outcome.removed {
        out.removed_cats
            .add(ranker::primary_category_of(removed.categories, config.rank));
    }
    out.removed_count = outcome.removed.len() as u64;
    out.achieved_ratio = Some(outcome.achieved_ratio);

    if emit_lines {
        raw.insert(
            "simplified_code".to_string(),
            Value::String(outcome.retained.joined_text()),
        );
        raw.insert(
            "achieved_ratio".to_string(),
            serde_json::Number::from_f64(outcome.achieved_ratio)
                .map(Value::Number)
                .unwrap_or(Value::Null),
        );
        raw.insert(
            "removed_count".to_string(),
            Value::Number(outcome.removed.len().into()),
        );
        raw.insert(
            "removal_mode".to_string(),
            Value::String(sim_config.mode.label().to_string()),
        );
        out.line = Some(Value::Object(raw).to_string());
    }
    out
}

/// Order-restoring accumulator: absorbs `Processed` strictly in sequence
/// order, so floating-point sums and output bytes never depend on `jobs`.
struct Accumulator<'w> {
    writer: Option<&'w mut BufWriter<File>>,
    output_path: String,
    records_total: usize,
    records_skipped: usize,
    written: usize,
    warnings: Vec<String>,
    code_tokens: StatsAccumulator,
    desc_words: StatsAccumulator,
    source_cats: CategoryCounts,
    removed_cats: CategoryCounts,
    removed_total: u64,
    ratio_sum: f64,
    ratio_count: u64,
}

impl<'w> Accumulator<'w> {
    fn new(writer: Option<&'w mut BufWriter<File>>, output_path: String) -> Self {
        Accumulator {
            writer,
            output_path,
            records_total: 0,
            records_skipped: 0,
            written: 0,
            warnings: Vec::new(),
            code_tokens: StatsAccumulator::default(),
            desc_words: StatsAccumulator::default(),
            source_cats: CategoryCounts::default(),
            removed_cats: CategoryCounts::default(),
            removed_total: 0,
            ratio_sum: 0.0,
            ratio_count: 0,
        }
    }

    fn absorb(&mut self, p: Processed) -> Result<(), CorpusError> {
        if let Some(reason) = p.skip_reason {
            self.records_skipped += 1;
            if self.warnings.len() < MAX_WARNINGS {
                self.warnings.push(reason);
            }
            return Ok(());
        }
        self.records_total += 1;
        self.code_tokens.add(p.token_count);
        if let Some(words) = p.desc_words {
            self.desc_words.add(words);
        }
        self.source_cats.merge(&p.source_cats);
        self.removed_cats.merge(&p.removed_cats);
        self.removed_total += p.removed_count;
        if let Some(ratio) = p.achieved_ratio {
            self.ratio_sum += ratio;
            self.ratio_count += 1;
        }
        if let Some(line) = p.line {
            if let Some(writer) = self.writer.as_mut() {
                writeln!(writer, "{line}").map_err(|source| CorpusError::Io {
                    path: self.output_path.clone(),
                    source,
                })?;
                self.written += 1;
            }
        }
        Ok(())
    }

    fn finish(self, config: &PipelineConfig) -> (CorpusReport, usize, Vec<String>) {
        let mean_ratio = if self.ratio_count > 0 {
            Some(self.ratio_sum / self.ratio_count as f64)
        } else {
            None
        };
        let savings = match (config.mode, mean_ratio) {
            (Some(_), Some(ratio)) => Some(estimate_savings(
                config.task,
                ratio,
                self.removed_total,
                config.price_per_token,
            )),
            _ => None,
        };
        let report = CorpusReport {
            records_total: self.records_total,
            records_skipped: self.records_skipped,
            code_tokens: self.code_tokens.finish(),
            description_words: self.desc_words.finish(),
            category_share: self.source_cats.shares(),
            removed_tokens_total: self.removed_total,
            removed_category_share: self.removed_cats.shares(),
            mean_achieved_ratio: mean_ratio,
            savings,
        };
        (report, self.written, self.warnings)
    }
}

/// Runs the pipeline over `input`, writing simplified JSONL to `output` when
/// given. Returns the corpus report; the caller decides where it goes.
pub fn run_pipeline(
    input: &Path,
    output: Option<&Path>,
    config: &PipelineConfig,
) -> Result<PipelineSummary, CorpusError> {
    if let Some(mode) = config.mode {
        SimplificationConfig::new(config.ratio, config.input_length, mode).validate()?;
    }
    let reader = RecordReader::open(input)?;
    let mut writer = match output {
        Some(path) => {
            let display = path.display().to_string();
            let file = File::create(path).map_err(|source| CorpusError::Io {
                path: display.clone(),
                source,
            })?;
            Some((BufWriter::new(file), display))
        }
        None => None,
    };
    let output_path = writer.as_ref().map(|(_, p)| p.clone()).unwrap_or_default();
    let emit_lines = writer.is_some();
    let acc = Accumulator::new(writer.as_mut().map(|(w, _)| w), output_path);

    let jobs = config.jobs.max(1);
    let (acc, reader_skipped) = if jobs == 1 {
        run_sequential(reader, acc, config, emit_lines)?
    } else {
        run_threaded(reader, acc, config, emit_lines, jobs)?
    };

    let (mut report, written, warnings) = acc.finish(config);
    report.records_skipped += reader_skipped;
    if let Some((w, path)) = writer.as_mut() {
        w.flush().map_err(|source| CorpusError::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(PipelineSummary {
        report,
        written,
        warnings,
    })
}

fn run_sequential<'w>(
    reader: RecordReader,
    mut acc: Accumulator<'w>,
    config: &PipelineConfig,
    emit_lines: bool,
) -> Result<(Accumulator<'w>, usize), CorpusError> {
    let mut skipped = 0;
    let mut iter = reader;
    loop {
        match iter.next() {
            None => break,
            Some(Err(err)) => return Err(err),
            Some(Ok((seq, record, raw))) => {
                acc.absorb(process_record(seq, &record, raw, config, emit_lines))?;
            }
        }
        skipped = iter.skipped();
    }
    skipped = skipped.max(iter.skipped());
    Ok((acc, skipped))
}

fn run_threaded<'w>(
    mut reader: RecordReader,
    mut acc: Accumulator<'w>,
    config: &PipelineConfig,
    emit_lines: bool,
    jobs: usize,
) -> Result<(Accumulator<'w>, usize), CorpusError> {
    type Job = (usize, CorpusRecord, Map<String, Value>);

    let result: Result<(Accumulator<'w>, usize), CorpusError> = thread::scope(|scope| {
        let (work_tx, work_rx) = mpsc::sync_channel::<Job>(jobs * 8);
        let work_rx = Arc::new(Mutex::new(work_rx));
        let (done_tx, done_rx) = mpsc::channel::<Processed>();

        for _ in 0..jobs {
            let work_rx = Arc::clone(&work_rx);
            let done_tx = done_tx.clone();
            scope.spawn(move || loop {
                let job = work_rx.lock().expect("worker queue").recv();
                match job {
                    Ok((seq, record, raw)) => {
                        let processed = process_record(seq, &record, raw, config, emit_lines);
                        if done_tx.send(processed).is_err() {
                            break;
                        }
                    }
                    Err(_) => break,
                }
            });
        }
        drop(done_tx);

        // Writer thread: restore sequence order, then absorb.
        let writer = scope.spawn(move || -> Result<Accumulator<'w>, CorpusError> {
            let mut pending: BTreeMap<usize, Processed> = BTreeMap::new();
            let mut next = 0usize;
            for processed in done_rx {
                pending.insert(processed.seq, processed);
                while let Some(ready) = pending.remove(&next) {
                    acc.absorb(ready)?;
                    next += 1;
                }
            }
            for (_, ready) in pending {
                acc.absorb(ready)?; // only reachable if ingest aborted early
            }
            Ok(acc)
        });

        let mut reader_error = None;
        loop {
            match reader.next() {
                None => break,
                Some(Err(err)) => {
                    reader_error = Some(err);
                    break;
                }
                Some(Ok(job)) => {
                    if work_tx.send(job).is_err() {
                        break;
                    }
                }
            }
        }
        drop(work_tx);
        let acc = writer.join().expect("writer thread")?;
        if let Some(err) = reader_error {
            return Err(err);
        }
        Ok((acc, reader.skipped()))
    });
    result
}

/// Statistics without simplification: token counts, description lengths, and
/// the source category distribution.
pub fn corpus_stats(
    input: &Path,
    rank: RankConfig,
    jobs: usize,
) -> Result<CorpusReport, CorpusError> {
    let config = PipelineConfig {
        ratio: 0.0,
        input_length: 1,
        mode: None,
        rank,
        task: Task::Search,
        price_per_token: None,
        jobs,
    };
    run_pipeline(input, None, &config).map(|summary| summary.report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_corpus(lines: &[&str]) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        for line in lines {
            writeln!(file, "{line}").unwrap();
        }
        file.flush().unwrap();
        file
    }

    fn greedy_config(jobs: usize) -> PipelineConfig {
        PipelineConfig {
            ratio: 0.3,
            input_length: 20,
            mode: Some(RemovalMode::Greedy),
            rank: RankConfig::default(),
            task: Task::Search,
            price_per_token: None,
            jobs,
        }
    }

    #[test]
    fn ingest_parses_ids_and_docstrings() {
        let file = write_corpus(&[
            r#"{"id": "m1", "code": "int a = 1;", "docstring": "sets a"}"#,
            r#"{"id": 7, "code": "int b = 2;"}"#,
            r#"{"code": "int c = 3;"}"#,
        ]);
        let records: Vec<_> = ingest(file.path()).unwrap().map(|r| r.unwrap()).collect();
        assert_eq!(records.len(), 3);
        assert_eq!(records[0].1.id, "m1");
        assert_eq!(records[0].1.docstring.as_deref(), Some("sets a"));
        assert_eq!(records[1].1.id, "7");
        assert_eq!(records[2].1.id, "3"); // line number fallback
        assert_eq!(records[2].0, 2); // sequence numbers count parsed records
    }

    #[test]
    fn malformed_lines_are_skipped_and_counted() {
        // 2 of 5 lines malformed: under the rejection threshold
        let file = write_corpus(&[
            r#"{"code": "int a = 1;"}"#,
            r#"not json"#,
            r#"{"missing": "code"}"#,
            r#"{"code": "int b = 2;"}"#,
            r#"{"code": "int c = 3;"}"#,
        ]);
        let mut reader = ingest(file.path()).unwrap();
        let mut parsed = 0;
        for item in reader.by_ref() {
            item.unwrap();
            parsed += 1;
        }
        assert_eq!(parsed, 3);
        assert_eq!(reader.skipped(), 2);
    }

    #[test]
    fn mostly_malformed_file_is_rejected_at_eof() {
        let file = write_corpus(&[r#"garbage"#, r#"{"code": "int a;"}"#, r#"more garbage"#]);
        let mut reader = ingest(file.path()).unwrap();
        let mut err = None;
        for item in reader.by_ref() {
            if let Err(e) = item {
                err = Some(e);
            }
        }
        assert!(matches!(
            err,
            Some(CorpusError::Format {
                malformed: 2,
                seen: 3,
                ..
            })
        ));
        // fused after the error
        assert!(reader.next().is_none());
    }

    #[test]
    fn mostly_malformed_file_is_rejected_at_line_100() {
        // 60 junk lines, then plenty of good ones: by line 100 the majority
        // is malformed, so the reader aborts without scanning the rest
        let mut lines: Vec<String> = (0..60).map(|_| "junk".to_string()).collect();
        for i in 0..140 {
            lines.push(format!(r#"{{"code": "int v{i} = {i};"}}"#));
        }
        let refs: Vec<&str> = lines.iter().map(String::as_str).collect();
        let file = write_corpus(&refs);
        let results: Vec<_> = ingest(file.path()).unwrap().collect();
        let errored = results.iter().any(|r| {
            matches!(
                r,
                Err(CorpusError::Format {
                    seen: 100,
                    malformed: 60,
                    ..
                })
            )
        });
        assert!(errored, "expected an early format rejection");
        // parsed records stop at the abort point
        assert!(results.iter().filter(|r| r.is_ok()).count() < 60);
    }

    #[test]
    fn empty_file_is_fine() {
        let file = write_corpus(&[]);
        let results: Vec<_> = ingest(file.path()).unwrap().collect();
        assert!(results.is_empty());
        let report = corpus_stats(file.path(), RankConfig::default(), 1).unwrap();
        assert_eq!(report.records_total, 0);
        assert!(report.code_tokens.is_none());
    }

    #[test]
    fn missing_file_is_an_io_error() {
        let err = ingest(Path::new("/nonexistent/corpus.jsonl")).unwrap_err();
        assert!(matches!(err, CorpusError::Io { .. }));
    }

    #[test]
    fn pipeline_writes_augmented_records() {
        let file = write_corpus(&[
            r#"{"id": "m1", "code": "public int add(int a, int b) { return a + b; }", "docstring": "adds two ints"}"#,
            r#"{"id": "m2", "code": "int t = x; x = y; y = t;"}"#,
        ]);
        let out = tempfile::NamedTempFile::new().unwrap();
        let summary = run_pipeline(file.path(), Some(out.path()), &greedy_config(1)).unwrap();
        assert_eq!(summary.written, 2);
        assert_eq!(summary.report.records_total, 2);
        assert_eq!(summary.report.records_skipped, 0);

        let contents = std::fs::read_to_string(out.path()).unwrap();
        let lines: Vec<&str> = contents.lines().collect();
        assert_eq!(lines.len(), 2);
        for line in &lines {
            let v: Value = serde_json::from_str(line).unwrap();
            assert!(v["simplified_code"].is_string());
            assert!(v["achieved_ratio"].is_number());
            assert!(v["removed_count"].is_number());
            assert_eq!(v["removal_mode"], "greedy");
            // original fields survive
            assert!(v["code"].is_string());
            assert!(v["id"].is_string());
        }
        // m1 has 17 tokens, budget keeps floor(0.7*20)=14: removes 3
        let first: Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(first["removed_count"], 3);
    }

    #[test]
    fn pipeline_skips_unlexable_records_with_warning() {
        let file = write_corpus(&[
            r#"{"id": "good", "code": "int a = 1;"}"#,
            r#"{"id": "bad", "code": "int s = \"unterminated;"}"#,
        ]);
        let out = tempfile::NamedTempFile::new().unwrap();
        let summary = run_pipeline(file.path(), Some(out.path()), &greedy_config(1)).unwrap();
        assert_eq!(summary.report.records_total, 1);
        assert_eq!(summary.report.records_skipped, 1);
        assert_eq!(summary.written, 1);
        assert!(summary.warnings[0].contains("bad"));
        let contents = std::fs::read_to_string(out.path()).unwrap();
        assert_eq!(contents.lines().count(), 1);
    }

    #[test]
    fn outputs_are_byte_identical_across_job_counts() {
        let mut lines = Vec::new();
        for i in 0..40 {
            lines.push(format!(
                r#"{{"id": "m{i}", "code": "public int f{i}(int a) {{ int s = {i}; for (int k = 0; k < a; k++) {{ s += k * {i}; }} if (s > 10) {{ s = log(s, {i}); }} return s; }}", "docstring": "method number {i}"}}"#
            ));
        }
        let refs: Vec<&str> = lines.iter().map(String::as_str).collect();
        let file = write_corpus(&refs);

        let mut outputs = Vec::new();
        let mut reports = Vec::new();
        for jobs in [1usize, 4, 8] {
            for mode in [RemovalMode::Greedy, RemovalMode::Random { seed: 99 }] {
                let out = tempfile::NamedTempFile::new().unwrap();
                let mut config = greedy_config(jobs);
                config.mode = Some(mode);
                let summary = run_pipeline(file.path(), Some(out.path()), &config).unwrap();
                outputs.push((mode.label(), std::fs::read(out.path()).unwrap()));
                reports.push((
                    mode.label(),
                    serde_json::to_string(&summary.report).unwrap(),
                ));
            }
        }
        // group by mode: all job counts must agree byte for byte
        for label in ["greedy", "random"] {
            let group: Vec<&Vec<u8>> = outputs
                .iter()
                .filter(|(l, _)| *l == label)
                .map(|(_, bytes)| bytes)
                .collect();
            assert!(
                group.windows(2).all(|w| w[0] == w[1]),
                "{label} outputs differ"
            );
            let rep: Vec<&String> = reports
                .iter()
                .filter(|(l, _)| *l == label)
                .map(|(_, r)| r)
                .collect();
            assert!(
                rep.windows(2).all(|w| w[0] == w[1]),
                "{label} reports differ"
            );
        }
    }

    #[test]
    fn stats_only_run_reports_counts_and_shares() {
        let file = write_corpus(&[
            r#"{"id": "a", "code": "int a = 1;", "docstring": "one two three"}"#,
            r#"{"id": "b", "code": "if (x) { y(); }", "docstring": "four"}"#,
        ]);
        let report = corpus_stats(file.path(), RankConfig::default(), 2).unwrap();
        assert_eq!(report.records_total, 2);
        // int a = 1 ; -> 5 tokens; if ( x ) { y ( ) ; } -> 10 tokens
        let stats = report.code_tokens.unwrap();
        assert_eq!(stats.min, 5);
        assert_eq!(stats.max, 10);
        assert!((stats.avg - 7.5).abs() < 1e-12);
        let words = report.description_words.unwrap();
        assert_eq!(words.min, 1);
        assert_eq!(words.max, 3);
        // no removal happened
        assert_eq!(report.removed_tokens_total, 0);
        assert!(report.mean_achieved_ratio.is_none());
        assert!(report.savings.is_none());
        let share_sum: f64 = report.category_share.values().sum();
        assert!((share_sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn pdg_mode_flows_through_the_pipeline() {
        let file =
            write_corpus(&[r#"{"id": "m", "code": "int a = 1; int unused = 9; return a;"}"#]);
        let out = tempfile::NamedTempFile::new().unwrap();
        let mut config = greedy_config(1);
        config.mode = Some(RemovalMode::SemanticPdg);
        let summary = run_pipeline(file.path(), Some(out.path()), &config).unwrap();
        assert_eq!(summary.report.records_total, 1);
        let line = std::fs::read_to_string(out.path()).unwrap();
        let v: Value = serde_json::from_str(line.trim()).unwrap();
        assert_eq!(v["simplified_code"], "int a = 1 ; return a ;");
        assert_eq!(v["removal_mode"], "pdg");
    }

    #[test]
    fn savings_appear_with_price() {
        let file =
            write_corpus(&[r#"{"id": "m", "code": "a b c d e f g h i j k l m n o p q r s t"}"#]);
        let mut config = greedy_config(1);
        config.ratio = 0.5;
        config.input_length = 20;
        config.price_per_token = Some(0.25);
        let summary = run_pipeline(file.path(), None, &config).unwrap();
        let savings = summary.report.savings.unwrap();
        assert_eq!(savings.removed_tokens, 10);
        assert!((savings.cost_saving.unwrap() - 2.5).abs() < 1e-12);
        assert!((savings.mean_achieved_ratio - 0.5).abs() < 1e-12);
    }

    #[test]
    fn invalid_config_is_rejected_before_io() {
        let config = PipelineConfig {
            ratio: 1.5,
            ..greedy_config(1)
        };
        let err = run_pipeline(Path::new("/nonexistent.jsonl"), None, &config).unwrap_err();
        assert!(matches!(err, CorpusError::Config(_)));
    }

    #[test]
    fn record_seeds_are_stable_and_distinct() {
        let a = record_seed(42, 0);
        let b = record_seed(42, 1);
        let c = record_seed(43, 0);
        assert_eq!(a, record_seed(42, 0));
        assert_ne!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn category_distribution_of_removed_tokens_lands_on_symbols() {
        // greedy removal strips symbols and keywords first; verify the
        // distribution reflects that on a small corpus
        let file = write_corpus(&[
            r#"{"id": "m", "code": "public int sum(int[] arr) { int s = 0; for (int i = 0; i < arr.length; i++) { s += arr[i]; } return s; }"}"#,
        ]);
        let mut config = greedy_config(1);
        config.ratio = 0.3;
        config.input_length = 40;
        let summary = run_pipeline(file.path(), None, &config).unwrap();
        let removed_share = &summary.report.removed_category_share;
        let symbol_plus_other = removed_share["symbol"] + removed_share["other"];
        assert!(
            symbol_plus_other > 0.9,
            "symbol+other share was {symbol_plus_other}"
        );
    }
}
