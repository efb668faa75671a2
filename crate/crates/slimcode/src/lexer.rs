//! Java-flavoured lexer.
//!
//! Splits a snippet into tokens the rest of the pipeline can score and drop.
//! Comments and whitespace never become tokens. Multi-character operators are
//! matched longest-first (`>>>=` is one token, `a+++b` lexes as `a ++ + b`),
//! matching how a maximal-munch Java scanner behaves.

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::LexError;

/// Coarse token classes. `Symbol` is reserved for the fixed punctuation set
/// returned by [`symbol_set`]; operators outside that set (compound
/// assignments, `->`, `::`) lex as single tokens of kind `Other`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TokenKind {
    Keyword,
    Identifier,
    Symbol,
    NumberLiteral,
    StringLiteral,
    CharLiteral,
    Other,
}

/// One lexed token. `byte_span` is the half-open byte range of the token in
/// the source it was lexed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub index: usize,
    pub text: String,
    pub kind: TokenKind,
    pub byte_span: (usize, usize),
}

/// A lexed snippet: tokens in source order plus a stable hash of the exact
/// source text, so downstream artifacts can be tied back to their input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSequence {
    tokens: Vec<Token>,
    pub source_hash: u64,
}

impl TokenSequence {
    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Token> {
        self.tokens.get(index)
    }

    /// Text of all tokens joined by single spaces. This is the canonical
    /// serialized form of a simplified snippet.
    pub fn joined_text(&self) -> String {
        let mut out = String::new();
        for (i, tok) in self.tokens.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&tok.text);
        }
        out
    }

    /// Builds a sequence from an arbitrary subset of tokens: re-indexes them
    /// contiguously from zero, recomputes byte spans against the space-joined
    /// text, and hashes that text.
    pub fn rebuild(tokens: Vec<Token>) -> Self {
        let mut rebuilt = Vec::with_capacity(tokens.len());
        let mut offset = 0usize;
        for (index, tok) in tokens.into_iter().enumerate() {
            if index > 0 {
                offset += 1; // joining space
            }
            let start = offset;
            offset += tok.text.len();
            rebuilt.push(Token {
                index,
                byte_span: (start, offset),
                ..tok
            });
        }
        let joined: String = {
            let mut s = String::with_capacity(offset);
            for (i, tok) in rebuilt.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                s.push_str(&tok.text);
            }
            s
        };
        TokenSequence {
            tokens: rebuilt,
            source_hash: fnv1a64(joined.as_bytes()),
        }
    }
}

/// Punctuation and operators scored as the `Symbol` category.
///
/// Core arithmetic/comparison/shift operators and delimiters, plus `&&`, `&`,
/// `?`, `:`, and `@`, which occur constantly in real Java and behave exactly
/// like the rest of the set under removal.
pub const SYMBOLS: &[&str] = &[
    "=", "+", "-", "*", "/", "%", "++", "--", "!", "==", "!=", ">", ">=", "<", "<=", "||", "~",
    "<<", ">>", ">>>", "|", "(", ")", "{", "}", "[", "]", ",", ";", ".", "^", "&&", "&", "?", ":",
    "@",
];

/// Membership set for [`SYMBOLS`].
pub fn symbol_set() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| SYMBOLS.iter().copied().collect())
}

/// True when `text` lexes as the `Symbol` kind.
pub fn is_symbol(text: &str) -> bool {
    symbol_set().contains(text)
}

/// Reserved words, plus the literals `true`/`false`/`null`, which behave like
/// keywords for scoring purposes.
pub const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "true",
    "try",
    "void",
    "volatile",
    "while",
    "false",
    "null",
];

fn keyword_set() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| KEYWORDS.iter().copied().collect())
}

/// All operator spellings the lexer recognizes, longest first. Everything
/// here lexes as a single token; kind is `Symbol` only for [`SYMBOLS`]
/// members.
const OPERATORS: &[&str] = &[
    ">>>=", // 4 chars
    ">>>", "<<=", ">>=", // 3 chars
    "==", "!=", ">=", "<=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "<<", ">>", "->", "::", // 2 chars
    "=", "+", "-", "*", "/", "%", "!", ">", "<", "|", "&", "~", "^", "?", ":", ".", ",", ";", "(",
    ")", "{", "}", "[", "]", "@", // 1 char
];

/// FNV-1a, 64-bit. Stable across platforms and releases, which is all the
/// source hash needs.
pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x1_0000_0000_01b3);
    }
    hash
}

fn is_ident_start(c: char) -> bool {
    c == '_' || c == '$' || c.is_alphabetic()
}

fn is_ident_continue(c: char) -> bool {
    c == '_' || c == '$' || c.is_alphanumeric()
}

/// Lexes a snippet. Comments and whitespace are dropped; every remaining
/// character must belong to a token or lexing fails with a byte offset.
pub fn lex(source: &str) -> Result<TokenSequence, LexError> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut chars = source.char_indices().peekable();

    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }

        // Comments: // to end of line, /* to the matching */ (or EOF).
        if c == '/' {
            match peek_at(source, start + 1) {
                Some('/') => {
                    while let Some(&(_, ch)) = chars.peek() {
                        chars.next();
                        if ch == '\n' {
                            break;
                        }
                    }
                    continue;
                }
                Some('*') => {
                    chars.next(); // '/'
                    chars.next(); // '*'
                    let mut prev = '\0';
                    for (_, ch) in chars.by_ref() {
                        if prev == '*' && ch == '/' {
                            break;
                        }
                        prev = ch;
                    }
                    continue;
                }
                _ => {}
            }
        }

        if c == '"' {
            let end = scan_string(source, start)?;
            push_token(&mut tokens, source, start, end, TokenKind::StringLiteral);
            advance_to(&mut chars, end);
            continue;
        }

        if c == '\'' {
            let end = scan_char_literal(source, start)?;
            push_token(&mut tokens, source, start, end, TokenKind::CharLiteral);
            advance_to(&mut chars, end);
            continue;
        }

        if c.is_ascii_digit()
            || (c == '.' && peek_at(source, start + 1).is_some_and(|n| n.is_ascii_digit()))
        {
            let end = scan_number(source, start);
            push_token(&mut tokens, source, start, end, TokenKind::NumberLiteral);
            advance_to(&mut chars, end);
            continue;
        }

        if is_ident_start(c) {
            let mut end = start + c.len_utf8();
            while let Some(n) = peek_at(source, end) {
                if is_ident_continue(n) {
                    end += n.len_utf8();
                } else {
                    break;
                }
            }
            let kind = if keyword_set().contains(&source[start..end]) {
                TokenKind::Keyword
            } else {
                TokenKind::Identifier
            };
            push_token(&mut tokens, source, start, end, kind);
            advance_to(&mut chars, end);
            continue;
        }

        // Operators and punctuation, longest spelling first.
        let rest = &source[start..];
        if let Some(op) = OPERATORS.iter().find(|op| rest.starts_with(**op)) {
            let end = start + op.len();
            let kind = if is_symbol(op) {
                TokenKind::Symbol
            } else {
                TokenKind::Other
            };
            push_token(&mut tokens, source, start, end, kind);
            advance_to(&mut chars, end);
            continue;
        }

        return Err(LexError::UnrecognizedChar {
            found: c,
            offset: start,
        });
    }

    Ok(TokenSequence {
        tokens,
        source_hash: fnv1a64(bytes),
    })
}

fn push_token(tokens: &mut Vec<Token>, source: &str, start: usize, end: usize, kind: TokenKind) {
    tokens.push(Token {
        index: tokens.len(),
        text: source[start..end].to_string(),
        kind,
        byte_span: (start, end),
    });
}

fn peek_at(source: &str, byte: usize) -> Option<char> {
    source.get(byte..).and_then(|s| s.chars().next())
}

fn advance_to(chars: &mut std::iter::Peekable<std::str::CharIndices<'_>>, byte: usize) {
    while let Some(&(pos, _)) = chars.peek() {
        if pos < byte {
            chars.next();
        } else {
            break;
        }
    }
}

/// Consumes a `"..."` literal starting at `start`; returns the byte just past
/// the closing quote. Newlines are not allowed inside ordinary string
/// literals, so hitting one (or EOF) is an error.
fn scan_string(source: &str, start: usize) -> Result<usize, LexError> {
    let mut pos = start + 1;
    loop {
        match peek_at(source, pos) {
            None | Some('\n') => return Err(LexError::UnterminatedString { offset: start }),
            Some('\\') => {
                pos += 1;
                match peek_at(source, pos) {
                    None => return Err(LexError::UnterminatedString { offset: start }),
                    Some(esc) => pos += esc.len_utf8(),
                }
            }
            Some('"') => return Ok(pos + 1),
            Some(c) => pos += c.len_utf8(),
        }
    }
}

fn scan_char_literal(source: &str, start: usize) -> Result<usize, LexError> {
    let mut pos = start + 1;
    loop {
        match peek_at(source, pos) {
            None | Some('\n') => return Err(LexError::UnterminatedChar { offset: start }),
            Some('\\') => {
                pos += 1;
                match peek_at(source, pos) {
                    None => return Err(LexError::UnterminatedChar { offset: start }),
                    Some(esc) => pos += esc.len_utf8(),
                }
            }
            Some('\'') => return Ok(pos + 1),
            Some(c) => pos += c.len_utf8(),
        }
    }
}

/// Consumes a numeric literal: hex/binary with `0x`/`0b`, decimal with an
/// optional fraction (the `.` is taken only when a digit follows), exponent,
/// and a single type suffix.
fn scan_number(source: &str, start: usize) -> usize {
    let mut pos = start;
    let first = peek_at(source, pos);
    let second = peek_at(source, pos + 1);

    if first == Some('0') && matches!(second, Some('x') | Some('X') | Some('b') | Some('B')) {
        pos += 2;
        while let Some(c) = peek_at(source, pos) {
            if c.is_ascii_hexdigit() || c == '_' {
                pos += 1;
            } else {
                break;
            }
        }
        if matches!(peek_at(source, pos), Some('l') | Some('L')) {
            pos += 1;
        }
        return pos;
    }

    let eat_digits = |pos: &mut usize| {
        while let Some(c) = peek_at(source, *pos) {
            if c.is_ascii_digit() || c == '_' {
                *pos += 1;
            } else {
                break;
            }
        }
    };

    eat_digits(&mut pos);
    if peek_at(source, pos) == Some('.')
        && peek_at(source, pos + 1).is_some_and(|c| c.is_ascii_digit())
    {
        pos += 1;
        eat_digits(&mut pos);
    }
    if matches!(peek_at(source, pos), Some('e') | Some('E')) {
        let mut after = pos + 1;
        if matches!(peek_at(source, after), Some('+') | Some('-')) {
            after += 1;
        }
        if peek_at(source, after).is_some_and(|c| c.is_ascii_digit()) {
            pos = after;
            eat_digits(&mut pos);
        }
    }
    if matches!(
        peek_at(source, pos),
        Some('f') | Some('F') | Some('d') | Some('D') | Some('l') | Some('L')
    ) {
        pos += 1;
    }
    pos
}
