//! Token removal under a length budget.
//!
//! The flagship strategy is greedy rank-based removal: drop the
//! highest-scored (least important) token first, break ties toward the
//! smallest index, and stop once the snippet fits the budget. Because every
//! token costs exactly one slot, this greedy order attains the same removed
//! importance mass as an exact 0/1 knapsack over the same scores — the DP in
//! [`knapsack_max_removed_value`] exists to prove that on demand.
//!
//! Baseline strategies for comparison: seeded uniform [`random_simplify`],
//! whole-category [`category_simplify`], and dependence-aware
//! [`pdg_simplify`], which drops statements nothing depends on.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{ConfigError, SimplifyError};
use crate::lexer::{Token, TokenSequence};
use crate::pdg::PdgAnalysis;
use crate::ranker::{CategorySet, RankedSnippet};

/// Default seed for [`RemovalMode::Random`].
pub const DEFAULT_RANDOM_SEED: u64 = 0x5EED_C0DE;

/// Slack added before flooring `(1 - ratio) * input_length`, absorbing binary
/// representation error (for example `0.7 * 200` evaluating to
/// `140.00000000000003`). Real budgets are whole numbers or land well clear
/// of one, so a nano-token never flips an intended floor.
const BUDGET_EPSILON: f64 = 1e-9;

/// How tokens are chosen for removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemovalMode {
    /// Importance-ranked removal under the length budget.
    Greedy,
    /// Uniform random removal of `round(ratio * n)` tokens. The baseline
    /// generator is ChaCha12, seeded explicitly so runs reproduce exactly on
    /// any platform.
    Random { seed: u64 },
    /// Remove every token belonging to any of the given categories.
    Category(CategorySet),
    /// Remove every statement the dependence analysis marked nonessential.
    SemanticPdg,
}

impl RemovalMode {
    /// Stable label used in output records.
    pub fn label(&self) -> &'static str {
        match self {
            RemovalMode::Greedy => "greedy",
            RemovalMode::Random { .. } => "random",
            RemovalMode::Category(_) => "category",
            RemovalMode::SemanticPdg => "pdg",
        }
    }
}

/// Settings for one simplification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplificationConfig {
    /// Target fraction of the budget to strip, in `[0, 1]`.
    pub ratio: f64,
    /// Model input length budget (tokens), `L`.
    pub input_length: usize,
    pub mode: RemovalMode,
}

impl SimplificationConfig {
    pub fn new(ratio: f64, input_length: usize, mode: RemovalMode) -> Self {
        SimplificationConfig {
            ratio,
            input_length,
            mode,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(0.0..=1.0).contains(&self.ratio) || self.ratio.is_nan() {
            return Err(ConfigError::RatioOutOfRange(self.ratio));
        }
        if self.input_length == 0 {
            return Err(ConfigError::ZeroInputLength);
        }
        Ok(())
    }
}

/// A removed token with everything reports need: its original position, the
/// token itself, its category memberships, and the score it carried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovedToken {
    pub index: usize,
    pub token: Token,
    pub categories: CategorySet,
    pub score: u8,
}

/// Result of simplifying one snippet.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplificationOutcome {
    /// Surviving tokens, re-indexed contiguously.
    pub retained: TokenSequence,
    /// Removed tokens in ascending original index.
    pub removed: Vec<RemovedToken>,
    /// `(n - |retained|) / n` for the original token count `n`; `0.0` when
    /// the snippet was already within budget and left untouched.
    pub achieved_ratio: f64,
    /// Number of tokens the mode set out to remove.
    pub budget: usize,
}

/// Fraction of tokens stripped from a snippet: `(original - simplified) /
/// original`. Errors when the original snippet had no tokens.
pub fn compute_ratio(original_len: usize, simplified_len: usize) -> Result<f64, SimplifyError> {
    if original_len == 0 {
        return Err(SimplifyError::EmptySnippet);
    }
    debug_assert!(simplified_len <= original_len);
    Ok((original_len as f64 - simplified_len as f64) / original_len as f64)
}

/// Largest token count allowed to survive under `config`:
/// `floor((1 - ratio) * input_length)`.
pub fn retained_budget(config: &SimplificationConfig) -> usize {
    let keep = (1.0 - config.ratio) * config.input_length as f64 + BUDGET_EPSILON;
    keep.floor().max(0.0) as usize
}

/// Dispatches on `config.mode`. Dependence-aware removal needs `analysis`;
/// passing `None` for that mode is a [`SimplifyError::MissingVerdict`].
pub fn simplify(
    ranked: &RankedSnippet,
    config: &SimplificationConfig,
    analysis: Option<&PdgAnalysis>,
) -> Result<SimplificationOutcome, SimplifyError> {
    match config.mode {
        RemovalMode::Greedy => greedy_simplify(ranked, config),
        RemovalMode::Random { .. } => random_simplify(ranked, config),
        RemovalMode::Category(_) => category_simplify(ranked, config),
        RemovalMode::SemanticPdg => {
            let analysis = analysis.ok_or(SimplifyError::MissingVerdict)?;
            pdg_simplify(ranked, config, analysis)
        }
    }
}

/// Greedy rank-based removal.
///
/// Snippets already within the retained budget are passed through untouched.
/// Otherwise exactly `n - floor((1 - ratio) * input_length)` tokens are
/// removed: highest score first, ties broken toward the smallest index.
pub fn greedy_simplify(
    ranked: &RankedSnippet,
    config: &SimplificationConfig,
) -> Result<SimplificationOutcome, SimplifyError> {
    config.validate()?;
    let n = ranked.tokens.len();
    let keep_cap = retained_budget(config);
    if n <= keep_cap {
        return Ok(untouched(ranked));
    }
    let to_remove = n - keep_cap;
    // Removal order: score descending, then index ascending. The sort key
    // makes the order total, so no reliance on sort stability.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(ranked.scores[i]), i));
    let mut removal = vec![false; n];
    for &i in order.iter().take(to_remove) {
        removal[i] = true;
    }
    Ok(apply_removal(ranked, &removal, to_remove))
}

/// Uniform random removal of `round(ratio * n)` tokens, as a baseline. The
/// length budget plays no part; the seed comes from the mode.
pub fn random_simplify(
    ranked: &RankedSnippet,
    config: &SimplificationConfig,
) -> Result<SimplificationOutcome, SimplifyError> {
    config.validate()?;
    let seed = match config.mode {
        RemovalMode::Random { seed } => seed,
        _ => DEFAULT_RANDOM_SEED,
    };
    let n = ranked.tokens.len();
    let to_remove = ((config.ratio * n as f64).round() as usize).min(n);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut removal = vec![false; n];
    if to_remove > 0 {
        for i in rand::seq::index::sample(&mut rng, n, to_remove) {
            removal[i] = true;
        }
    }
    Ok(apply_removal(ranked, &removal, to_remove))
}

/// Removes every token whose category set intersects the mode's categories.
pub fn category_simplify(
    ranked: &RankedSnippet,
    config: &SimplificationConfig,
) -> Result<SimplificationOutcome, SimplifyError> {
    config.validate()?;
    let targets = match config.mode {
        RemovalMode::Category(set) => set,
        _ => CategorySet::empty(),
    };
    let removal: Vec<bool> = ranked
        .categories
        .iter()
        .map(|set| set.intersects(targets))
        .collect();
    let to_remove = removal.iter().filter(|&&r| r).count();
    Ok(apply_removal(ranked, &removal, to_remove))
}

/// Removes the token ranges of all nonessential statements. Tokens outside
/// any statement (signature headers, braces) are always kept.
pub fn pdg_simplify(
    ranked: &RankedSnippet,
    config: &SimplificationConfig,
    analysis: &PdgAnalysis,
) -> Result<SimplificationOutcome, SimplifyError> {
    config.validate()?;
    let n = ranked.tokens.len();
    let mut removal = vec![false; n];
    for &idx in &analysis.verdict.nonessential {
        let (start, end) = analysis.statements[idx].token_range;
        for slot in &mut removal[start..=end.min(n.saturating_sub(1))] {
            *slot = true;
        }
    }
    let to_remove = removal.iter().filter(|&&r| r).count();
    Ok(apply_removal(ranked, &removal, to_remove))
}

/// Exact 0/1 knapsack: the largest total score removable with at most
/// `capacity` tokens, every token costing one slot. Quadratic, meant for
/// verifying the greedy strategy, not for production paths.
pub fn knapsack_max_removed_value(scores: &[u8], capacity: usize) -> u64 {
    let capacity = capacity.min(scores.len());
    let mut dp = vec![0u64; capacity + 1];
    for &score in scores {
        for w in (1..=capacity).rev() {
            dp[w] = dp[w].max(dp[w - 1] + u64::from(score));
        }
    }
    dp[capacity]
}

fn untouched(ranked: &RankedSnippet) -> SimplificationOutcome {
    SimplificationOutcome {
        retained: ranked.tokens.clone(),
        removed: Vec::new(),
        achieved_ratio: 0.0,
        budget: 0,
    }
}

fn apply_removal(ranked: &RankedSnippet, removal: &[bool], budget: usize) -> SimplificationOutcome {
    let n = ranked.tokens.len();
    let mut retained = Vec::with_capacity(n.saturating_sub(budget));
    let mut removed = Vec::with_capacity(budget);
    for (i, tok) in ranked.tokens.tokens().iter().enumerate() {
        if removal[i] {
            removed.push(RemovedToken {
                index: i,
                token: tok.clone(),
                categories: ranked.categories[i],
                score: ranked.scores[i],
            });
        } else {
            retained.push(tok.clone());
        }
    }
    let achieved_ratio = if n == 0 {
        0.0
    } else {
        compute_ratio(n, retained.len()).expect("n > 0")
    };
    SimplificationOutcome {
        retained: TokenSequence::rebuild(retained),
        removed,
        achieved_ratio,
        budget,
    }
}
