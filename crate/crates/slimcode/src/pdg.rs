//! Statement-level dependence analysis.
//!
//! Splits a snippet into statements, extracts which variables each statement
//! defines and uses, and classifies every statement as *essential* (it
//! participates in data flow, guards something that does, or exits the
//! method) or *nonessential* (safe to drop under dependence-aware removal).
//!
//! The analysis is deliberately lightweight: one flat scope per snippet,
//! flow-insensitive name matching, no alias or field-sensitivity. That
//! approximates a program-dependence view well enough to single out
//! statements — logging, counters, stray locals — that nothing else depends
//! on.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::ScanError;
use crate::lexer::{Token, TokenKind, TokenSequence};
use crate::scanner::{self, match_pair, SpanKind, StructuralSpans};

/// One statement. Predicate statements are control headers (`if (...)`,
/// `while (...)`, bare `else`/`try`/`do`/`finally`) whose `children` are the
/// statements they directly govern; children always come after their parent
/// in the vector, which is in document order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    /// Inclusive token index range. Headers cover keyword through closing
    /// `)`; simple statements run through their `;`.
    pub token_range: (usize, usize),
    pub defs: BTreeSet<String>,
    pub uses: BTreeSet<String>,
    pub is_predicate: bool,
    /// `return` or `throw` statement.
    pub is_exit: bool,
    pub children: Vec<usize>,
}

/// Indexes of essential and nonessential statements. The two sets partition
/// the statement list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceVerdict {
    pub essential: BTreeSet<usize>,
    pub nonessential: BTreeSet<usize>,
}

/// Statements plus their classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdgAnalysis {
    pub statements: Vec<Statement>,
    pub verdict: DependenceVerdict,
}

/// Splits and classifies in one call.
pub fn analyze(tokens: &TokenSequence, spans: &StructuralSpans) -> Result<PdgAnalysis, ScanError> {
    let statements = split_statements(tokens, spans)?;
    let verdict = classify_semantic(&statements);
    Ok(PdgAnalysis {
        statements,
        verdict,
    })
}

/// Splits a snippet into statements.
///
/// Signature headers are skipped (they are not statements); their following
/// block's statements are spliced in at the current level, as are naked-block
/// statements. Control headers become predicate statements whose children are
/// the governed block or single statement.
pub fn split_statements(
    tokens: &TokenSequence,
    spans: &StructuralSpans,
) -> Result<Vec<Statement>, ScanError> {
    let toks = tokens.tokens();
    if toks.is_empty() {
        return Ok(Vec::new());
    }
    // Statement structure wants unclipped control headers; the carve-out only
    // matters for scoring.
    let control: HashMap<usize, usize> = scanner::raw_control_spans(toks)?
        .into_iter()
        .map(|s| (s.start, s.end))
        .collect();
    let signatures: HashMap<usize, usize> = spans
        .of_kind(SpanKind::Signature)
        .map(|s| (s.start, s.end))
        .collect();
    let mut parser = Parser {
        toks,
        control,
        signatures,
        out: Vec::new(),
    };
    parser.parse_region(0, toks.len() - 1)?;
    Ok(parser.out)
}

/// Marks statements essential when they
/// (a) define a variable a later statement uses,
/// (b) use a variable an earlier statement defines,
/// (c) are predicates governing at least one essential statement, or
/// (d) exit the method (`return`/`throw`).
pub fn classify_semantic(statements: &[Statement]) -> DependenceVerdict {
    let n = statements.len();
    let mut essential = vec![false; n];
    for i in 0..n {
        let s = &statements[i];
        if s.is_exit {
            essential[i] = true;
            continue;
        }
        let defined_later_used = statements[i + 1..]
            .iter()
            .any(|later| !s.defs.is_disjoint(&later.uses));
        let uses_earlier_def = statements[..i]
            .iter()
            .any(|earlier| !earlier.defs.is_disjoint(&s.uses));
        essential[i] = defined_later_used || uses_earlier_def;
    }
    // Children always follow their parent, so one reverse pass settles the
    // predicate rule even through nested control.
    for i in (0..n).rev() {
        if statements[i].is_predicate && !essential[i] {
            essential[i] = statements[i].children.iter().any(|&c| essential[c]);
        }
    }
    let mut verdict = DependenceVerdict {
        essential: BTreeSet::new(),
        nonessential: BTreeSet::new(),
    };
    for (i, ess) in essential.into_iter().enumerate() {
        if ess {
            verdict.essential.insert(i);
        } else {
            verdict.nonessential.insert(i);
        }
    }
    verdict
}

const ASSIGN_OPS: &[&str] = &[
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=",
];

const PRIMITIVE_TYPES: &[&str] = &[
    "int", "long", "short", "byte", "char", "float", "double", "boolean", "void", "var",
];

struct Parser<'a> {
    toks: &'a [Token],
    control: HashMap<usize, usize>,
    signatures: HashMap<usize, usize>,
    out: Vec<Statement>,
}

impl Parser<'_> {
    fn parse_region(&mut self, lo: usize, hi: usize) -> Result<Vec<usize>, ScanError> {
        let mut ids = Vec::new();
        let mut i = lo;
        while i <= hi {
            let (mut produced, next) = self.parse_one(i, hi)?;
            ids.append(&mut produced);
            debug_assert!(next > i, "parser must advance");
            i = next;
        }
        Ok(ids)
    }

    /// Parses whatever starts at `i`; returns the statement ids it produced
    /// at this nesting level and the index to continue from.
    fn parse_one(&mut self, i: usize, hi: usize) -> Result<(Vec<usize>, usize), ScanError> {
        let toks = self.toks;

        // Signature header: not a statement. Skip it and any throws clause;
        // the body block that follows is spliced at this level.
        if let Some(&end) = self.signatures.get(&i) {
            let mut k = end + 1;
            if k <= hi && toks[k].text == "throws" {
                k += 1;
                while k <= hi
                    && (toks[k].kind == TokenKind::Identifier
                        || toks[k].text == "."
                        || toks[k].text == ",")
                {
                    k += 1;
                }
            }
            return Ok((Vec::new(), k));
        }

        match toks[i].text.as_str() {
            ";" => return Ok((Vec::new(), i + 1)),
            "}" => return Ok((Vec::new(), i + 1)), // stray closer: tolerate
            "{" => {
                let close = match_pair(toks, i, "{", "}").ok_or_else(|| unbalanced_at(&toks[i]))?;
                let ids = if close > i + 1 {
                    self.parse_region(i + 1, close - 1)?
                } else {
                    Vec::new()
                };
                return Ok((ids, close + 1));
            }
            _ => {}
        }

        if let Some(&header_end) = self.control.get(&i) {
            let id = self.push_statement(i, header_end, true);
            let mut k = header_end + 1;
            let children = if k > hi {
                Vec::new()
            } else if toks[k].text == "{" {
                let close = match_pair(toks, k, "{", "}").ok_or_else(|| unbalanced_at(&toks[k]))?;
                let ids = if close > k + 1 {
                    self.parse_region(k + 1, close - 1)?
                } else {
                    Vec::new()
                };
                k = close + 1;
                ids
            } else if toks[k].text == ";" {
                k += 1; // bodyless header, incl. the do-while tail
                Vec::new()
            } else {
                let (ids, next) = self.parse_one(k, hi)?;
                k = next;
                ids
            };
            self.out[id].children = children;
            return Ok((vec![id], k));
        }

        // Simple statement: runs to the first `;` at group depth zero.
        // Parenthesized and bracketed groups are opaque. A brace group is
        // part of the statement only after `=`/`->` (array initializers,
        // lambda bodies); otherwise it terminates the statement, which makes
        // class headers and similar constructs degrade gracefully.
        let mut k = i;
        let mut end = None;
        let mut seen_assign_or_arrow = false;
        while k <= hi {
            let txt = toks[k].text.as_str();
            match txt {
                "(" => {
                    k = match_pair(toks, k, "(", ")").ok_or_else(|| unbalanced_at(&toks[k]))?;
                }
                "[" => {
                    k = match_pair(toks, k, "[", "]").ok_or_else(|| unbalanced_at(&toks[k]))?;
                }
                "{" if seen_assign_or_arrow => {
                    k = match_pair(toks, k, "{", "}").ok_or_else(|| unbalanced_at(&toks[k]))?;
                }
                "{" | "}" => {
                    end = Some(k.saturating_sub(1).max(i));
                    break;
                }
                ";" => {
                    end = Some(k);
                    break;
                }
                "->" => seen_assign_or_arrow = true,
                _ if ASSIGN_OPS.contains(&txt) => seen_assign_or_arrow = true,
                _ if !seen_assign_or_arrow
                    && k > i
                    && toks[k].kind == TokenKind::Keyword
                    && self.control.contains_key(&k) =>
                {
                    // labeled loop or similar: cut before the control header
                    end = Some(k - 1);
                    break;
                }
                _ => {}
            }
            k += 1;
        }
        let end = end.unwrap_or(hi).min(hi);
        let id = self.push_statement(i, end, false);
        Ok((vec![id], end + 1))
    }

    fn push_statement(&mut self, start: usize, end: usize, is_predicate: bool) -> usize {
        let (defs, uses) = collect_defs_uses(self.toks, start, end);
        let first = &self.toks[start];
        let is_exit =
            first.kind == TokenKind::Keyword && (first.text == "return" || first.text == "throw");
        self.out.push(Statement {
            token_range: (start, end),
            defs,
            uses,
            is_predicate,
            is_exit,
            children: Vec::new(),
        });
        self.out.len() - 1
    }
}

fn unbalanced_at(tok: &Token) -> ScanError {
    ScanError::UnbalancedDelimiters {
        delimiter: tok.text.chars().next().unwrap_or('{'),
        offset: tok.byte_span.0,
    }
}

/// Defined and used variable names within a token range.
///
/// Defs are assignment targets (base name for indexed or dotted targets, the
/// field name for `this.field = ...`) and declared locals, including for-init,
/// for-each, and catch parameters. Every other identifier in the range is a
/// use — method names included, which keeps a call like `helper(x)` tied to
/// snippets that mention `helper` elsewhere.
fn collect_defs_uses(
    toks: &[Token],
    start: usize,
    end: usize,
) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut def_positions: HashSet<usize> = HashSet::new();

    // Assignment targets.
    for k in start + 1..=end {
        let is_op = (toks[k].kind == TokenKind::Symbol || toks[k].kind == TokenKind::Other)
            && ASSIGN_OPS.contains(&toks[k].text.as_str());
        if is_op {
            if let Some(pos) = assignment_target(toks, start, k - 1) {
                def_positions.insert(pos);
            }
        }
    }

    // Declarations: candidate positions are the range start and any token
    // right after `;` or `(` within the range.
    let mut p = start;
    while p <= end {
        let at_boundary = p == start || matches!(toks[p - 1].text.as_str(), ";" | "(");
        if at_boundary {
            declared_names(toks, p, end, &mut def_positions);
        }
        p += 1;
    }

    let mut defs = BTreeSet::new();
    let mut uses = BTreeSet::new();
    for (k, tok) in toks.iter().enumerate().take(end + 1).skip(start) {
        if tok.kind != TokenKind::Identifier {
            continue;
        }
        if def_positions.contains(&k) {
            defs.insert(tok.text.clone());
        } else {
            uses.insert(tok.text.clone());
        }
    }
    (defs, uses)
}

/// Walks left from the token before an assignment operator to the base of
/// the target expression. `a[i] = v` and `a.b = v` define `a`;
/// `this.name = v` defines `name`.
fn assignment_target(toks: &[Token], start: usize, mut cur: usize) -> Option<usize> {
    let mut base: Option<usize> = None;
    loop {
        let t = &toks[cur];
        if t.text == "]" {
            // skip the whole [..] group backwards
            let mut depth = 1i32;
            let mut q = cur;
            while depth > 0 {
                if q == start {
                    return None;
                }
                q -= 1;
                match toks[q].text.as_str() {
                    "]" => depth += 1,
                    "[" => depth -= 1,
                    _ => {}
                }
            }
            if q == start {
                return None;
            }
            cur = q - 1;
            continue;
        }
        if t.kind == TokenKind::Identifier {
            base = Some(cur);
            if cur > start && toks[cur - 1].text == "." {
                if cur - 1 == start {
                    return base;
                }
                let before = &toks[cur - 2];
                if before.text == "this" || before.text == "super" {
                    return base; // field on this/super: the field is the def
                }
                cur = cur.saturating_sub(2);
                continue;
            }
            return base;
        }
        return base;
    }
}

/// Parses declarations starting at `p` (`final Map<K, V> name = ...`,
/// `int i, j = 0`, `for (T x : xs)`, `catch (A | B e)`) and records the
/// declared name positions.
fn declared_names(toks: &[Token], p: usize, end: usize, def_positions: &mut HashSet<usize>) {
    const MODIFIERS: &[&str] = &[
        "final",
        "private",
        "public",
        "protected",
        "static",
        "transient",
        "volatile",
    ];
    let mut q = p;
    // leading modifiers and annotations
    loop {
        if q <= end
            && toks[q].kind == TokenKind::Keyword
            && MODIFIERS.contains(&toks[q].text.as_str())
        {
            q += 1;
            continue;
        }
        if q < end && toks[q].text == "@" && toks[q + 1].kind == TokenKind::Identifier {
            q += 2;
            continue;
        }
        break;
    }
    // one or more type names separated by `|` (multi-catch)
    let mut type_end = match parse_type(toks, q, end) {
        Some(e) => e,
        None => return,
    };
    while type_end + 2 <= end
        && toks[type_end + 1].text == "|"
        && toks[type_end + 2].kind == TokenKind::Identifier
    {
        match parse_type(toks, type_end + 2, end) {
            Some(e) => type_end = e,
            None => return,
        }
    }
    // declared name
    if type_end + 1 > end || toks[type_end + 1].kind != TokenKind::Identifier {
        return;
    }
    let name_idx = type_end + 1;
    let mut after = name_idx + 1;
    while after < end && toks[after].text == "[" && toks[after + 1].text == "]" {
        after += 2;
    }
    let terminates =
        after > end || matches!(toks[after].text.as_str(), "=" | ";" | ":" | ")" | ",");
    if !terminates {
        return;
    }
    def_positions.insert(name_idx);
    // further declarators: `int i, j = 2, k;`
    let mut cur = after;
    while cur <= end {
        if toks[cur].text == ";" || toks[cur].text == ")" {
            break;
        }
        if toks[cur].text == "," {
            if cur < end && toks[cur + 1].kind == TokenKind::Identifier {
                let follow = cur + 2;
                if follow > end || matches!(toks[follow].text.as_str(), "=" | "," | ";" | ")") {
                    def_positions.insert(cur + 1);
                }
            }
            cur += 1;
            continue;
        }
        // skip over initializer expressions, honoring nesting
        match toks[cur].text.as_str() {
            "(" => match match_pair(toks, cur, "(", ")") {
                Some(close) => cur = close + 1,
                None => break,
            },
            "[" => match match_pair(toks, cur, "[", "]") {
                Some(close) => cur = close + 1,
                None => break,
            },
            "{" => match match_pair(toks, cur, "{", "}") {
                Some(close) => cur = close + 1,
                None => break,
            },
            _ => cur += 1,
        }
    }
}

/// Parses a type at `q`: primitive or (possibly dotted) class name, optional
/// type arguments, optional `[]` pairs. Returns the last token index of the
/// type, or None when `q` does not start a type.
fn parse_type(toks: &[Token], q: usize, end: usize) -> Option<usize> {
    if q > end {
        return None;
    }
    let t = &toks[q];
    let mut last = if t.kind == TokenKind::Keyword && PRIMITIVE_TYPES.contains(&t.text.as_str()) {
        q
    } else if t.kind == TokenKind::Identifier {
        let mut k = q;
        while k + 2 <= end && toks[k + 1].text == "." && toks[k + 2].kind == TokenKind::Identifier {
            k += 2;
        }
        k
    } else {
        return None;
    };
    if last < end && toks[last + 1].text == "<" {
        last = scanner::match_angles(toks, last + 1)?;
    }
    while last + 2 <= end && toks[last + 1].text == "[" && toks[last + 2].text == "]" {
        last += 2;
    }
    Some(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexer::lex;

    fn parse(src: &str) -> Vec<Statement> {
        let tokens = lex(src).unwrap();
        let spans = StructuralSpans::scan(&tokens).unwrap();
        split_statements(&tokens, &spans).unwrap()
    }

    fn analyzed(src: &str) -> PdgAnalysis {
        let tokens = lex(src).unwrap();
        let spans = StructuralSpans::scan(&tokens).unwrap();
        analyze(&tokens, &spans).unwrap()
    }

    fn names(set: &BTreeSet<String>) -> Vec<&str> {
        set.iter().map(String::as_str).collect()
    }

    /// Brute-force reference classifier: enumerates every def-use pair as an
    /// explicit edge, marks both endpoints, then runs the predicate rule to a
    /// fixpoint by forward sweeps. Shares no code with `classify_semantic`.
    fn oracle_classify(statements: &[Statement]) -> BTreeSet<usize> {
        let n = statements.len();
        let mut essential: HashSet<usize> = HashSet::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let flows = statements[i]
                    .defs
                    .iter()
                    .any(|d| statements[j].uses.contains(d));
                if flows {
                    essential.insert(i);
                    essential.insert(j);
                }
            }
        }
        for (i, s) in statements.iter().enumerate() {
            if s.is_exit {
                essential.insert(i);
            }
        }
        loop {
            let mut changed = false;
            for (i, s) in statements.iter().enumerate() {
                if s.is_predicate
                    && !essential.contains(&i)
                    && s.children.iter().any(|c| essential.contains(c))
                {
                    essential.insert(i);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        essential.into_iter().collect()
    }

    fn assert_matches_oracle(src: &str) {
        let analysis = analyzed(src);
        let expected = oracle_classify(&analysis.statements);
        assert_eq!(analysis.verdict.essential, expected, "snippet {src:?}");
        let all: BTreeSet<usize> = (0..analysis.statements.len()).collect();
        let union: BTreeSet<usize> = analysis
            .verdict
            .essential
            .union(&analysis.verdict.nonessential)
            .copied()
            .collect();
        assert_eq!(union, all, "essential/nonessential must partition");
        assert!(analysis
            .verdict
            .essential
            .intersection(&analysis.verdict.nonessential)
            .next()
            .is_none());
    }

    #[test]
    fn splits_simple_statements() {
        let stmts = parse("int a = 1; int b = a + 2; return b;");
        assert_eq!(stmts.len(), 3);
        assert_eq!(names(&stmts[0].defs), ["a"]);
        assert!(stmts[0].uses.is_empty());
        assert_eq!(names(&stmts[1].defs), ["b"]);
        assert_eq!(names(&stmts[1].uses), ["a"]);
        assert!(stmts[2].is_exit);
        assert_eq!(names(&stmts[2].uses), ["b"]);
    }

    #[test]
    fn predicate_statements_own_their_children() {
        let stmts = parse("if (n > 0) { x = n; y = 2; } else { y = 3; }");
        assert_eq!(stmts.len(), 5);
        assert!(stmts[0].is_predicate);
        assert_eq!(stmts[0].children, vec![1, 2]);
        assert_eq!(names(&stmts[0].uses), ["n"]);
        assert!(stmts[3].is_predicate); // else
        assert_eq!(stmts[3].children, vec![4]);
        // children always follow their parent
        for (i, s) in stmts.iter().enumerate() {
            for &c in &s.children {
                assert!(c > i);
            }
        }
    }

    #[test]
    fn single_statement_bodies_and_nested_control() {
        let stmts = parse("if (a) if (b) x = 1;");
        assert_eq!(stmts.len(), 3);
        assert_eq!(stmts[0].children, vec![1]);
        assert_eq!(stmts[1].children, vec![2]);
    }

    #[test]
    fn for_header_defines_its_induction_variable() {
        let stmts = parse("for (int i = 0; i < n; i++) { sum += arr[i]; }");
        assert_eq!(stmts.len(), 2);
        assert!(stmts[0].is_predicate);
        assert_eq!(names(&stmts[0].defs), ["i"]);
        assert!(stmts[0].uses.contains("n"));
        assert!(stmts[0].uses.contains("i")); // i < n, i++ are uses
        assert_eq!(names(&stmts[1].defs), ["sum"]);
        assert!(stmts[1].uses.contains("arr"));
        assert!(stmts[1].uses.contains("i"));
    }

    #[test]
    fn foreach_and_catch_parameters_are_defs() {
        let stmts = parse("for (String s : items) { out.add(s); }");
        assert_eq!(names(&stmts[0].defs), ["s"]);
        assert!(stmts[0].uses.contains("items"));

        let stmts = parse("try { risky(); } catch (IOException | FooError e) { log(e); }");
        let catch_stmt = stmts.iter().find(|s| s.defs.contains("e")).unwrap();
        assert!(catch_stmt.is_predicate);
        assert!(catch_stmt.uses.contains("IOException"));
    }

    #[test]
    fn assignment_target_bases() {
        let stmts = parse("a[i] = v; this.name = name; obj.field = w; b += 2;");
        assert_eq!(names(&stmts[0].defs), ["a"]);
        assert!(stmts[0].uses.contains("i"));
        assert!(stmts[0].uses.contains("v"));
        assert_eq!(names(&stmts[1].defs), ["name"]);
        assert_eq!(names(&stmts[2].defs), ["obj"]);
        assert!(stmts[2].uses.contains("field"));
        assert_eq!(names(&stmts[3].defs), ["b"]);
    }

    #[test]
    fn multi_declarator_and_generic_declarations() {
        let stmts = parse("int i, j = 2, k; Map<String, List<Integer>> m = build();");
        assert_eq!(names(&stmts[0].defs), ["i", "j", "k"]);
        assert_eq!(names(&stmts[1].defs), ["m"]);
        assert!(stmts[1].uses.contains("build"));
        assert!(stmts[1].uses.contains("Map"));
    }

    #[test]
    fn increment_decrement_operands_are_uses_not_defs() {
        let stmts = parse("i++; --j;");
        assert!(stmts[0].defs.is_empty());
        assert_eq!(names(&stmts[0].uses), ["i"]);
        assert!(stmts[1].defs.is_empty());
        assert_eq!(names(&stmts[1].uses), ["j"]);
    }

    #[test]
    fn signature_is_not_a_statement_and_body_is_spliced() {
        let stmts = parse("public int twice(int x) { int y = x * 2; return y; }");
        assert_eq!(stmts.len(), 2);
        assert_eq!(names(&stmts[0].defs), ["y"]);
        assert!(stmts[1].is_exit);
    }

    #[test]
    fn do_while_tail_is_a_childless_predicate() {
        let stmts = parse("do { n--; work(n); } while (n > 0);");
        assert_eq!(stmts.len(), 4);
        assert!(stmts[0].is_predicate); // do
        assert_eq!(stmts[0].children, vec![1, 2]);
        assert!(stmts[3].is_predicate); // while tail
        assert!(stmts[3].children.is_empty());
        assert!(stmts[3].uses.contains("n"));
    }

    #[test]
    fn statement_ranges_are_disjoint_and_ordered() {
        let src = "int a = 0; if (a > 0) { b(); while (a < 9) { a++; } } c();";
        let stmts = parse(src);
        for w in stmts.windows(2) {
            assert!(w[0].token_range.1 < w[1].token_range.0);
        }
    }

    #[test]
    fn straight_line_flow_is_essential() {
        let a = analyzed("int a = 1; int b = a + 2; return b;");
        assert_eq!(a.verdict.essential.len(), 3);
        assert!(a.verdict.nonessential.is_empty());
    }

    #[test]
    fn unused_local_is_nonessential() {
        let a = analyzed("int a = 1; int unused = 9; return a;");
        assert!(a.verdict.essential.contains(&0));
        assert!(a.verdict.nonessential.contains(&1));
        assert!(a.verdict.essential.contains(&2));
    }

    #[test]
    fn logging_call_is_nonessential() {
        let a = analyzed("int n = get(); if (n > 0) { log.debug(\"big\"); } return n;");
        // predicate uses n -> essential; the log call touches nothing defined
        let log_idx = a
            .statements
            .iter()
            .position(|s| s.uses.contains("log"))
            .unwrap();
        assert!(a.verdict.nonessential.contains(&log_idx));
        assert!(a.verdict.essential.contains(&0));
    }

    #[test]
    fn predicate_becomes_essential_through_its_children() {
        let a = analyzed("if (flag) { count = 1; } use(count);");
        assert!(a.verdict.essential.contains(&0)); // if: child defines count
        assert!(a.verdict.essential.contains(&1));
        assert!(a.verdict.essential.contains(&2));

        let a = analyzed("if (flag) { poke(); } done();");
        // nothing flows anywhere: all nonessential
        assert_eq!(a.verdict.essential.len(), 0);
    }

    #[test]
    fn try_block_with_only_untracked_calls_is_nonessential() {
        let a = analyzed("try { risky(); } catch (IOException e) { log(e); }");
        let try_idx = 0;
        assert!(a.statements[try_idx].is_predicate);
        assert!(a.verdict.nonessential.contains(&try_idx));
        // catch defines e which log(e) uses
        let catch_idx = a
            .statements
            .iter()
            .position(|s| s.defs.contains("e"))
            .unwrap();
        assert!(a.verdict.essential.contains(&catch_idx));
    }

    #[test]
    fn classification_matches_bruteforce_oracle() {
        let snippets = [
            "int a = 1; int b = a + 2; return b;",
            "int a = 1; int unused = 9; return a;",
            "if (flag) { count = 1; } use(count);",
            "int n = get(); if (n > 0) { log.debug(\"big\"); } else { n = -n; } return n;",
            "for (int i = 0; i < len; i++) { total += data[i]; } report(total);",
            "do { n--; } while (n > 0);",
            "try { open(); } catch (Exception e) { throw new Error(e); } finally { close(); }",
            "int x = 0; { int y = x + 1; print(y); } noop();",
            "while (it.hasNext()) { Object o = it.next(); if (o == null) { continue; } sink.put(o); }",
            "public int twice(int x) { int y = x * 2; unusedSideEffect(); return y; }",
        ];
        for src in snippets {
            assert_matches_oracle(src);
        }
    }

    #[test]
    fn empty_and_trivial_inputs() {
        assert!(parse("").is_empty());
        assert!(parse(";;;").is_empty());
        let stmts = parse("{ }");
        assert!(stmts.is_empty());
        let verdict = classify_semantic(&[]);
        assert!(verdict.essential.is_empty());
        assert!(verdict.nonessential.is_empty());
    }

    #[test]
    fn class_wrapper_degrades_to_member_statements() {
        let src = "public class Box { private int v; public int get() { return v; } }";
        let stmts = parse(src);
        // the class header and field become statements; the method body splices
        assert!(stmts.iter().any(|s| s.is_exit));
        assert!(stmts.iter().any(|s| s.defs.contains("v")));
    }
}
