//! Token categorization and importance scoring.
//!
//! Every token belongs to one or more categories derived from its lexical
//! kind and the structural spans it sits in. Scores run 1 (most important,
//! removed last) to 8 (least important, removed first):
//!
//! | score | rule |
//! |-------|------|
//! | 1 | non-symbol token inside a method signature |
//! | 2 | identifier inside a control-structure span |
//! | 3 | identifier inside a method-invocation span |
//! | 4 | identifier outside every structural span |
//! | 5 | non-identifier, non-symbol token inside a method invocation |
//! | 6 | non-identifier, non-symbol token inside a control structure |
//! | 7 | symbol, anywhere |
//! | 8 | every other token |
//!
//! A token matching several rules takes the smallest score. Symbols score 7
//! even inside signatures. [`RankConfig::swap_control_invocation`] exchanges
//! scores 5 and 6 for callers who want control conditions to outrank
//! invocation arguments.

use std::fmt;
use std::str::FromStr;

use crate::lexer::{TokenKind, TokenSequence};
use crate::scanner::{SpanFlags, StructuralSpans};

/// Token categories used for scoring, removal targeting, and reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Signature,
    Identifier,
    ControlStructure,
    MethodInvocation,
    SymbolToken,
    Other,
}

impl Category {
    pub const ALL: [Category; 6] = [
        Category::Signature,
        Category::Identifier,
        Category::ControlStructure,
        Category::MethodInvocation,
        Category::SymbolToken,
        Category::Other,
    ];

    /// Stable lowercase name, also accepted by [`Category::from_str`].
    pub fn name(self) -> &'static str {
        match self {
            Category::Signature => "signature",
            Category::Identifier => "identifier",
            Category::ControlStructure => "control",
            Category::MethodInvocation => "invocation",
            Category::SymbolToken => "symbol",
            Category::Other => "other",
        }
    }

    fn bit(self) -> u8 {
        match self {
            Category::Signature => 1 << 0,
            Category::Identifier => 1 << 1,
            Category::ControlStructure => 1 << 2,
            Category::MethodInvocation => 1 << 3,
            Category::SymbolToken => 1 << 4,
            Category::Other => 1 << 5,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "signature" => Ok(Category::Signature),
            "identifier" => Ok(Category::Identifier),
            "control" => Ok(Category::ControlStructure),
            "invocation" => Ok(Category::MethodInvocation),
            "symbol" => Ok(Category::SymbolToken),
            "other" => Ok(Category::Other),
            other => Err(format!(
                "unknown category {other:?} (expected one of: signature, identifier, control, invocation, symbol, other)"
            )),
        }
    }
}

/// A small set of [`Category`] values.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CategorySet(u8);

impl CategorySet {
    pub fn empty() -> Self {
        CategorySet(0)
    }

    pub fn of(categories: &[Category]) -> Self {
        let mut set = CategorySet::empty();
        for &c in categories {
            set.insert(c);
        }
        set
    }

    pub fn insert(&mut self, category: Category) {
        self.0 |= category.bit();
    }

    pub fn contains(self, category: Category) -> bool {
        self.0 & category.bit() != 0
    }

    pub fn intersects(self, other: CategorySet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Category> {
        Category::ALL.into_iter().filter(move |c| self.contains(*c))
    }

    pub fn names(self) -> Vec<&'static str> {
        self.iter().map(Category::name).collect()
    }
}

impl fmt::Display for CategorySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join("|"))
    }
}

/// Scoring knobs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RankConfig {
    /// Exchange scores 5 and 6, making control-structure interiors cheaper
    /// to remove than invocation interiors.
    pub swap_control_invocation: bool,
}

/// A token sequence with one category set and one score per token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedSnippet {
    pub tokens: TokenSequence,
    pub categories: Vec<CategorySet>,
    pub scores: Vec<u8>,
}

fn set_of(kind: TokenKind, flags: SpanFlags) -> CategorySet {
    let mut set = CategorySet::empty();
    if flags.in_signature {
        set.insert(Category::Signature);
    }
    if flags.in_control {
        set.insert(Category::ControlStructure);
    }
    if flags.in_invocation {
        set.insert(Category::MethodInvocation);
    }
    match kind {
        TokenKind::Identifier => set.insert(Category::Identifier),
        TokenKind::Symbol => set.insert(Category::SymbolToken),
        _ => {}
    }
    if set.is_empty() {
        set.insert(Category::Other);
    }
    set
}

/// Category memberships for every token.
pub fn category_sets(tokens: &TokenSequence, spans: &StructuralSpans) -> Vec<CategorySet> {
    tokens
        .tokens()
        .iter()
        .zip(spans.flags())
        .map(|(tok, flags)| set_of(tok.kind, *flags))
        .collect()
}

/// Scores every token per the table in the module docs.
pub fn assign_scores(
    tokens: &TokenSequence,
    spans: &StructuralSpans,
    config: RankConfig,
) -> RankedSnippet {
    let categories = category_sets(tokens, spans);
    let scores = tokens
        .tokens()
        .iter()
        .zip(spans.flags())
        .map(|(tok, flags)| score_token(tok.kind, *flags, config))
        .collect();
    RankedSnippet {
        tokens: tokens.clone(),
        categories,
        scores,
    }
}

fn score_token(kind: TokenKind, flags: SpanFlags, config: RankConfig) -> u8 {
    let (invocation_score, control_score) = if config.swap_control_invocation {
        (6, 5)
    } else {
        (5, 6)
    };
    if kind == TokenKind::Symbol {
        return 7;
    }
    let mut best = 8u8;
    if flags.in_signature {
        best = best.min(1);
    }
    if kind == TokenKind::Identifier {
        if flags.in_control {
            best = best.min(2);
        }
        if flags.in_invocation {
            best = best.min(3);
        }
        if !flags.in_signature && !flags.in_control && !flags.in_invocation {
            best = best.min(4);
        }
    } else {
        if flags.in_invocation {
            best = best.min(invocation_score);
        }
        if flags.in_control {
            best = best.min(control_score);
        }
    }
    best
}

/// The single category that decided a token's score; used when attributing
/// removed tokens to one bucket in distribution reports.
pub fn primary_category(kind: TokenKind, flags: SpanFlags, config: RankConfig) -> Category {
    primary_category_of(set_of(kind, flags), config)
}

/// Same attribution, from a stored category set.
pub fn primary_category_of(set: CategorySet, config: RankConfig) -> Category {
    if set.contains(Category::SymbolToken) {
        return Category::SymbolToken;
    }
    if set.contains(Category::Signature) {
        return Category::Signature;
    }
    if set.contains(Category::Identifier) {
        return Category::Identifier;
    }
    let in_inv = set.contains(Category::MethodInvocation);
    let in_ctrl = set.contains(Category::ControlStructure);
    match (in_inv, in_ctrl) {
        (true, false) => Category::MethodInvocation,
        (false, true) => Category::ControlStructure,
        (true, true) => {
            // both spans apply: attribute to the one that set the score
            if config.swap_control_invocation {
                Category::ControlStructure
            } else {
                Category::MethodInvocation
            }
        }
        (false, false) => Category::Other,
    }
}

/// Human-readable score table, honoring the 5/6 swap.
pub fn score_table(config: RankConfig) -> Vec<(u8, &'static str)> {
    const INVOCATION_RULE: &str = "non-identifier, non-symbol token inside a method invocation";
    const CONTROL_RULE: &str = "non-identifier, non-symbol token inside a control structure";
    let (five, six) = if config.swap_control_invocation {
        (CONTROL_RULE, INVOCATION_RULE)
    } else {
        (INVOCATION_RULE, CONTROL_RULE)
    };
    vec![
        (1, "non-symbol token inside a method signature"),
        (2, "identifier inside a control-structure span"),
        (3, "identifier inside a method-invocation span"),
        (4, "identifier outside every structural span"),
        (5, five),
        (6, six),
        (7, "symbol, anywhere"),
        (8, "every other token"),
    ]
}
