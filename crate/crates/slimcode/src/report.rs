//! Corpus-level statistics, removal distributions, and savings estimates.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::ranker::{primary_category_of, Category, RankConfig};
use crate::simplify::SimplificationOutcome;

/// Downstream task the corpus is being prepared for. Sets the default model
/// input length and the empirically observed ratio-to-time-saving
/// coefficient: near 1:1 for retrieval-style search, about 0.6:1 for
/// summarization, whose decoding cost dilutes prompt savings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Search,
    Summarization,
}

impl Task {
    pub fn default_input_length(self) -> usize {
        match self {
            Task::Search => 200,
            Task::Summarization => 256,
        }
    }

    pub fn savings_coefficient(self) -> f64 {
        match self {
            Task::Search => 1.0,
            Task::Summarization => 0.6,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Task::Search => "search",
            Task::Summarization => "summarization",
        }
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "search" => Ok(Task::Search),
            "summarization" => Ok(Task::Summarization),
            other => Err(format!(
                "unknown task {other:?} (expected search or summarization)"
            )),
        }
    }
}

/// Average/extremes over a per-record count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TokenStats {
    pub avg: f64,
    pub min: usize,
    pub max: usize,
}

/// Single-pass accumulator behind [`TokenStats`].
#[derive(Debug, Clone, Copy, Default)]
pub struct StatsAccumulator {
    count: u64,
    sum: u64,
    min: usize,
    max: usize,
}

impl StatsAccumulator {
    pub fn add(&mut self, value: usize) {
        if self.count == 0 {
            self.min = value;
            self.max = value;
        } else {
            self.min = self.min.min(value);
            self.max = self.max.max(value);
        }
        self.count += 1;
        self.sum += value as u64;
    }

    pub fn finish(&self) -> Option<TokenStats> {
        if self.count == 0 {
            return None;
        }
        Some(TokenStats {
            avg: self.sum as f64 / self.count as f64,
            min: self.min,
            max: self.max,
        })
    }
}

/// Token counts per category, attribution by score-determining category, so
/// the buckets are disjoint and sum to the total.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CategoryCounts {
    counts: [u64; Category::ALL.len()],
}

impl CategoryCounts {
    pub fn add(&mut self, category: Category) {
        self.counts[Self::slot(category)] += 1;
    }

    pub fn merge(&mut self, other: &CategoryCounts) {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
    }

    pub fn count(&self, category: Category) -> u64 {
        self.counts[Self::slot(category)]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Per-category fraction of the total. Keys are stable category names;
    /// all six appear even at zero. Empty totals yield all-zero shares.
    pub fn shares(&self) -> BTreeMap<String, f64> {
        let total = self.total();
        Category::ALL
            .iter()
            .map(|c| {
                let share = if total == 0 {
                    0.0
                } else {
                    self.count(*c) as f64 / total as f64
                };
                (c.name().to_string(), share)
            })
            .collect()
    }

    fn slot(category: Category) -> usize {
        Category::ALL
            .iter()
            .position(|c| *c == category)
            .expect("category is one of ALL")
    }
}

/// Distribution of removed tokens by score-determining category, across any
/// number of simplification outcomes.
pub fn removed_distribution<'a>(
    outcomes: impl IntoIterator<Item = &'a SimplificationOutcome>,
    config: RankConfig,
) -> CategoryCounts {
    let mut counts = CategoryCounts::default();
    for outcome in outcomes {
        for removed in &outcome.removed {
            counts.add(primary_category_of(removed.categories, config));
        }
    }
    counts
}

/// Projected inference savings from a simplification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SavingsEstimate {
    pub task: String,
    /// Ratio-to-time-saving coefficient for the task.
    pub coefficient: f64,
    /// Mean achieved simplified ratio across processed records.
    pub mean_achieved_ratio: f64,
    /// `coefficient * mean_achieved_ratio`: the expected fractional
    /// reduction in end-to-end inference time.
    pub time_saving_fraction: f64,
    pub removed_tokens: u64,
    /// `removed_tokens * price_per_token`, when a price was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost_saving: Option<f64>,
}

/// Computes the savings projection for a finished run.
pub fn estimate_savings(
    task: Task,
    mean_achieved_ratio: f64,
    removed_tokens: u64,
    price_per_token: Option<f64>,
) -> SavingsEstimate {
    SavingsEstimate {
        task: task.label().to_string(),
        coefficient: task.savings_coefficient(),
        mean_achieved_ratio,
        time_saving_fraction: task.savings_coefficient() * mean_achieved_ratio,
        removed_tokens,
        cost_saving: price_per_token.map(|p| removed_tokens as f64 * p),
    }
}

/// Everything a corpus run learned, serializable as JSON and renderable as
/// an aligned text table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusReport {
    /// Records that parsed and processed successfully.
    pub records_total: usize,
    /// Lines skipped: malformed JSON plus records the lexer/scanner rejected.
    pub records_skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code_tokens: Option<TokenStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description_words: Option<TokenStats>,
    /// Share of source tokens per category.
    pub category_share: BTreeMap<String, f64>,
    pub removed_tokens_total: u64,
    /// Share of removed tokens per category; all zeros when nothing was
    /// removed.
    pub removed_category_share: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_achieved_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub savings: Option<SavingsEstimate>,
}

impl CorpusReport {
    /// Plain-text rendering with aligned columns, suitable for stderr.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "records processed   {:>10}", self.records_total);
        let _ = writeln!(out, "records skipped     {:>10}", self.records_skipped);
        if let Some(stats) = &self.code_tokens {
            let _ = writeln!(
                out,
                "code tokens         avg {:>8.2}   min {:>6}   max {:>6}",
                stats.avg, stats.min, stats.max
            );
        }
        if let Some(stats) = &self.description_words {
            let _ = writeln!(
                out,
                "description words   avg {:>8.2}   min {:>6}   max {:>6}",
                stats.avg, stats.min, stats.max
            );
        }
        let _ = writeln!(out, "token share by category");
        for (name, share) in &self.category_share {
            let _ = writeln!(out, "  {name:<12} {:>7.2}%", share * 100.0);
        }
        if self.removed_tokens_total > 0 {
            let _ = writeln!(out, "removed tokens      {:>10}", self.removed_tokens_total);
            let _ = writeln!(out, "removed share by category");
            for (name, share) in &self.removed_category_share {
                let _ = writeln!(out, "  {name:<12} {:>7.2}%", share * 100.0);
            }
        }
        if let Some(ratio) = self.mean_achieved_ratio {
            let _ = writeln!(out, "mean achieved ratio {:>10.4}", ratio);
        }
        if let Some(savings) = &self.savings {
            let _ = writeln!(
                out,
                "projected time saving {:>7.2}%  ({} x {:.4}, task {})",
                savings.time_saving_fraction * 100.0,
                savings.coefficient,
                savings.mean_achieved_ratio,
                savings.task
            );
            if let Some(cost) = savings.cost_saving {
                let _ = writeln!(out, "projected cost saving {:>8.4}", cost);
            }
        }
        out
    }
}
