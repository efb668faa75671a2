//! Structural span detection over token sequences.
//!
//! Three region kinds drive scoring:
//!
//! - **Signature**: a method/constructor declaration header, from its first
//!   modifier or return-type token through the closing `)` of the parameter
//!   list. Annotations and `throws` clauses are not part of the span.
//! - **ControlStructure**: a control keyword together with its parenthesized
//!   condition when one follows (`if (...)`, `for (...)`, the `while (...)`
//!   tail of do-while, ...). Keywords without a condition (`else`, `try`,
//!   `do`, `finally`) span just themselves.
//! - **MethodInvocation**: a call's receiver chain, method name, and argument
//!   list, `new Type(...)` included (without the `new` itself). Declaration
//!   headers never count as invocations.
//!
//! Signature spans are carved out of the other two kinds, so a token is never
//! simultaneously in a signature and in a control/invocation span, and
//! signature spans never overlap each other. Detection is a deterministic
//! single pass over tokens — no parse tree is built.

use crate::error::ScanError;
use crate::lexer::{Token, TokenKind, TokenSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpanKind {
    Signature,
    ControlStructure,
    MethodInvocation,
}

/// A structural region, as an inclusive range of token indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructSpan {
    pub kind: SpanKind,
    pub start: usize,
    pub end: usize,
}

impl StructSpan {
    pub fn contains(&self, index: usize) -> bool {
        self.start <= index && index <= self.end
    }
}

/// Per-token span membership.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpanFlags {
    pub in_signature: bool,
    pub in_control: bool,
    pub in_invocation: bool,
}

/// All structural spans of a snippet plus per-token membership flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralSpans {
    spans: Vec<StructSpan>,
    flags: Vec<SpanFlags>,
}

impl StructuralSpans {
    /// Runs all three detectors and applies the signature carve-out.
    pub fn scan(tokens: &TokenSequence) -> Result<Self, ScanError> {
        let toks = tokens.tokens();
        let signatures = signatures_of(toks);
        let membership = membership_of(&signatures, toks.len());
        let control = clip_to_outside(control_of(toks)?, &signatures);
        let invocations = clip_to_outside(invocations_of(toks, &membership)?, &signatures);

        let mut spans = signatures;
        spans.extend(control);
        spans.extend(invocations);
        spans.sort_by_key(|s| (s.start, s.end, kind_order(s.kind)));

        let mut flags = vec![SpanFlags::default(); toks.len()];
        for span in &spans {
            for f in &mut flags[span.start..=span.end.min(toks.len().saturating_sub(1))] {
                match span.kind {
                    SpanKind::Signature => f.in_signature = true,
                    SpanKind::ControlStructure => f.in_control = true,
                    SpanKind::MethodInvocation => f.in_invocation = true,
                }
            }
        }
        Ok(StructuralSpans { spans, flags })
    }

    pub fn spans(&self) -> &[StructSpan] {
        &self.spans
    }

    pub fn of_kind(&self, kind: SpanKind) -> impl Iterator<Item = &StructSpan> {
        self.spans.iter().filter(move |s| s.kind == kind)
    }

    /// Membership flags for every token index of the scanned sequence.
    pub fn flags(&self) -> &[SpanFlags] {
        &self.flags
    }
}

/// Method/constructor declaration headers. Never fails: candidates that do
/// not complete the declaration pattern are simply not signatures.
pub fn find_signatures(tokens: &TokenSequence) -> Vec<StructSpan> {
    signatures_of(tokens.tokens())
}

/// Control keywords with their conditions, minus any signature regions.
pub fn find_control_structures(tokens: &TokenSequence) -> Result<Vec<StructSpan>, ScanError> {
    let signatures = signatures_of(tokens.tokens());
    Ok(clip_to_outside(control_of(tokens.tokens())?, &signatures))
}

/// Method invocations and object creations, minus any signature regions.
pub fn find_invocations(tokens: &TokenSequence) -> Result<Vec<StructSpan>, ScanError> {
    let toks = tokens.tokens();
    let signatures = signatures_of(toks);
    let membership = membership_of(&signatures, toks.len());
    Ok(clip_to_outside(
        invocations_of(toks, &membership)?,
        &signatures,
    ))
}

/// Finds the matching `close` for the `open` delimiter at `open_idx`,
/// counting only those two spellings.
pub(crate) fn match_pair(
    toks: &[Token],
    open_idx: usize,
    open: &str,
    close: &str,
) -> Option<usize> {
    debug_assert_eq!(toks[open_idx].text, open);
    let mut depth = 0usize;
    for (i, tok) in toks.iter().enumerate().skip(open_idx) {
        if tok.text == open {
            depth += 1;
        } else if tok.text == close {
            depth -= 1;
            if depth == 0 {
                return Some(i);
            }
        }
    }
    None
}

fn unbalanced(tok: &Token) -> ScanError {
    ScanError::UnbalancedDelimiters {
        delimiter: tok.text.chars().next().unwrap_or('('),
        offset: tok.byte_span.0,
    }
}

/// Modifiers and built-in type keywords that may precede a method name.
const SIGNATURE_KEYWORDS: &[&str] = &[
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "synchronized",
    "native",
    "strictfp",
    "default",
    "transient",
    "volatile",
    "void",
    "int",
    "long",
    "short",
    "byte",
    "char",
    "float",
    "double",
    "boolean",
];

const CONTROL_KEYWORDS: &[&str] = &[
    "for", "if", "try", "catch", "switch", "while", "do", "else", "finally",
];

fn kind_order(kind: SpanKind) -> u8 {
    match kind {
        SpanKind::Signature => 0,
        SpanKind::ControlStructure => 1,
        SpanKind::MethodInvocation => 2,
    }
}

fn membership_of(spans: &[StructSpan], n: usize) -> Vec<bool> {
    let mut member = vec![false; n];
    for span in spans {
        for m in &mut member[span.start..=span.end.min(n.saturating_sub(1))] {
            *m = true;
        }
    }
    member
}

fn signatures_of(toks: &[Token]) -> Vec<StructSpan> {
    let n = toks.len();
    let mut spans: Vec<StructSpan> = Vec::new();
    for name in 0..n.saturating_sub(1) {
        if toks[name].kind != TokenKind::Identifier || toks[name + 1].text != "(" {
            continue;
        }
        if name > 0 && toks[name - 1].text == "new" {
            continue; // object creation, not a declaration
        }
        let Some(close) = match_pair(toks, name + 1, "(", ")") else {
            continue;
        };
        // A declaration is confirmed by `{` right after the parameter list,
        // allowing an intervening `throws` clause.
        let mut after = close + 1;
        if after < n && toks[after].text == "throws" {
            after += 1;
            while after < n
                && (toks[after].kind == TokenKind::Identifier
                    || toks[after].text == "."
                    || toks[after].text == ",")
            {
                after += 1;
            }
        }
        if after >= n || toks[after].text != "{" {
            continue;
        }
        let mut start = signature_start(toks, name);
        if let Some(prev) = spans.last() {
            start = start.max(prev.end + 1); // signature spans stay disjoint
        }
        spans.push(StructSpan {
            kind: SpanKind::Signature,
            start,
            end: close,
        });
    }
    spans
}

/// Walks backward from a method name over return type and modifiers,
/// tracking generic brackets (`>`/`>>`/`>>>` close one/two/three type-argument
/// lists when read right-to-left). Leading annotations are excluded.
fn signature_start(toks: &[Token], name: usize) -> usize {
    let mut k = name;
    let mut angle: i32 = 0;
    while k > 0 {
        let t = &toks[k - 1];
        let txt = t.text.as_str();
        let accept = match txt {
            ">" | ">>" | ">>>" => {
                angle += txt.len() as i32;
                true
            }
            "<" => {
                if angle > 0 {
                    angle -= 1;
                    true
                } else {
                    false
                }
            }
            _ if angle > 0 => !matches!(txt, "(" | ")" | "{" | "}" | ";"),
            _ => {
                t.kind == TokenKind::Identifier
                    || matches!(txt, "." | "[" | "]")
                    || (t.kind == TokenKind::Keyword && SIGNATURE_KEYWORDS.contains(&txt))
            }
        };
        if !accept {
            break;
        }
        k -= 1;
    }
    if angle != 0 {
        k = name; // unmatched generics: fall back to the bare name
    }
    // Walk-back stops at `@`, leaving the annotation name inside the span;
    // drop such names, and any leading token that is not a word.
    loop {
        if k < name && toks[k].kind == TokenKind::Identifier && k > 0 && toks[k - 1].text == "@" {
            k += 1;
            continue;
        }
        if k < name && !matches!(toks[k].kind, TokenKind::Identifier | TokenKind::Keyword) {
            k += 1;
            continue;
        }
        break;
    }
    k
}

/// Control spans without the signature carve-out, for callers that need the
/// raw `keyword (condition)` extents (statement splitting).
pub(crate) fn raw_control_spans(toks: &[Token]) -> Result<Vec<StructSpan>, ScanError> {
    control_of(toks)
}

fn control_of(toks: &[Token]) -> Result<Vec<StructSpan>, ScanError> {
    let n = toks.len();
    let mut spans = Vec::new();
    for i in 0..n {
        if toks[i].kind != TokenKind::Keyword || !CONTROL_KEYWORDS.contains(&toks[i].text.as_str())
        {
            continue;
        }
        let end = if i + 1 < n && toks[i + 1].text == "(" {
            match_pair(toks, i + 1, "(", ")").ok_or_else(|| unbalanced(&toks[i + 1]))?
        } else {
            i
        };
        spans.push(StructSpan {
            kind: SpanKind::ControlStructure,
            start: i,
            end,
        });
    }
    Ok(spans)
}

fn invocations_of(toks: &[Token], in_signature: &[bool]) -> Result<Vec<StructSpan>, ScanError> {
    let n = toks.len();
    let mut spans = Vec::new();
    for i in 0..n {
        // `new Type(...)` / `new pkg.Type<Args>(...)`: span starts at the
        // type, not at `new`.
        if toks[i].kind == TokenKind::Keyword && toks[i].text == "new" {
            if let Some(open) = creation_open_paren(toks, i) {
                let close =
                    match_pair(toks, open, "(", ")").ok_or_else(|| unbalanced(&toks[open]))?;
                spans.push(StructSpan {
                    kind: SpanKind::MethodInvocation,
                    start: i + 1,
                    end: close,
                });
            }
            continue;
        }

        if toks[i].kind != TokenKind::Identifier || i + 1 >= n || toks[i + 1].text != "(" {
            continue;
        }
        if in_signature[i] {
            continue; // declaration header, not a call
        }
        // Extend left over the receiver chain. A chain segment is `.` plus an
        // identifier (or this/super); a `.` following `)` links a chained
        // call, and the dot itself still belongs to this span.
        let mut start = i;
        while start > 0 && toks[start - 1].text == "." {
            let before_dot = start.checked_sub(2).map(|p| &toks[p]);
            match before_dot {
                Some(t)
                    if t.kind == TokenKind::Identifier || t.text == "this" || t.text == "super" =>
                {
                    start -= 2;
                }
                _ => {
                    start -= 1;
                    break;
                }
            }
        }
        if start > 0 && (toks[start - 1].text == "new" || toks[start - 1].text == "@") {
            continue; // creation (handled above) or annotation
        }
        let close = match_pair(toks, i + 1, "(", ")").ok_or_else(|| unbalanced(&toks[i + 1]))?;
        spans.push(StructSpan {
            kind: SpanKind::MethodInvocation,
            start,
            end: close,
        });
    }
    spans.sort_by_key(|s| (s.start, s.end));
    Ok(spans)
}

/// For `new` at `new_idx`, finds the `(` of the constructor argument list if
/// the tokens really form a creation expression. Array creations (`new int[n]`)
/// and malformed sequences return `None`.
fn creation_open_paren(toks: &[Token], new_idx: usize) -> Option<usize> {
    let n = toks.len();
    let mut k = new_idx + 1;
    if k >= n || toks[k].kind != TokenKind::Identifier {
        return None;
    }
    while k + 2 < n && toks[k + 1].text == "." && toks[k + 2].kind == TokenKind::Identifier {
        k += 2;
    }
    if k + 1 < n && toks[k + 1].text == "<" {
        k = match_angles(toks, k + 1)?;
    }
    if k + 1 < n && toks[k + 1].text == "(" {
        Some(k + 1)
    } else {
        None
    }
}

/// Matches a type-argument list starting at the `<` at `open_idx`, treating
/// `>>` and `>>>` as closing two and three lists. Returns the index of the
/// token that closes the outermost list. Bails out (None) on any token that
/// cannot appear in a type-argument list, so comparisons are not mistaken
/// for generics.
pub(crate) fn match_angles(toks: &[Token], open_idx: usize) -> Option<usize> {
    debug_assert_eq!(toks[open_idx].text, "<");
    let mut depth: i32 = 1;
    let mut i = open_idx + 1;
    while i < toks.len() && depth > 0 {
        let t = &toks[i];
        match t.text.as_str() {
            "<" => depth += 1,
            ">" => depth -= 1,
            ">>" => depth -= 2,
            ">>>" => depth -= 3,
            "." | "," | "?" | "[" | "]" | "@" | "&" | "extends" | "super" => {}
            _ if t.kind == TokenKind::Identifier => {}
            _ if t.kind == TokenKind::Keyword && SIGNATURE_KEYWORDS.contains(&t.text.as_str()) => {}
            _ => return None,
        }
        if depth < 0 {
            return None;
        }
        if depth == 0 {
            return Some(i);
        }
        i += 1;
    }
    None
}

/// Removes the parts of `spans` that fall inside any signature span,
/// splitting spans that straddle one.
fn clip_to_outside(spans: Vec<StructSpan>, signatures: &[StructSpan]) -> Vec<StructSpan> {
    let mut out = Vec::with_capacity(spans.len());
    for span in spans {
        let mut pieces = vec![(span.start, span.end)];
        for sig in signatures {
            let mut next = Vec::with_capacity(pieces.len());
            for (s, e) in pieces {
                if sig.end < s || sig.start > e {
                    next.push((s, e));
                    continue;
                }
                if sig.start > s {
                    next.push((s, sig.start - 1));
                }
                if sig.end < e {
                    next.push((sig.end + 1, e));
                }
            }
            pieces = next;
        }
        out.extend(pieces.into_iter().map(|(start, end)| StructSpan {
            kind: span.kind,
            start,
            end,
        }));
    }
    out
}
