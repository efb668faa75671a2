//! Token-level simplification of source code for language-model consumption.
//!
//! The pipeline lexes a code snippet, detects structurally important regions
//! (method signatures, control-structure headers, method invocations), assigns
//! every token an importance score, and then drops the least important tokens
//! until the snippet fits a length budget. A corpus driver applies this to
//! JSONL datasets and reports token statistics, removal distributions, and
//! projected inference savings.
//!
//! Entry points:
//! - [`lexer::lex`] turns a snippet into a [`lexer::TokenSequence`];
//! - [`scanner::StructuralSpans::scan`] finds signature / control / invocation spans;
//! - [`ranker::assign_scores`] produces a [`ranker::RankedSnippet`];
//! - [`simplify::greedy_simplify`] (and friends) shrink a snippet to budget;
//! - [`corpus::run_pipeline`] drives whole JSONL corpora;
//! - [`cli::run`] backs the `slimcode` binary.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod lexer;
pub mod pdg;
pub mod ranker;
pub mod report;
pub mod scanner;
pub mod simplify;
