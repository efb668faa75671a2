//! Deterministic generator for the bundled fixture corpus.
//!
//! Emits JSONL records (`id`, `code`, usually `docstring`) containing single
//! Java methods in four size bands, with templates tuned so symbol tokens
//! hold roughly half of the corpus. Regenerate with
//!
//! ```text
//! cargo run -p slimcode --example gen_fixtures [-- PATH]
//! ```
//!
//! and commit the result; tests read the committed file, never this
//! program's output. The seed is fixed, so reruns are byte-identical.

use std::env;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde_json::{json, Map, Value};

use slimcode::lexer::{self, TokenKind};

const SEED: u64 = 0xC0FFEE;
const RECORDS: usize = 560;

#[rustfmt::skip]
const NOUNS: &[&str] = &[
    "value", "index", "total", "count", "buffer", "result", "item", "node", "key", "entry",
    "cache", "offset", "limit", "sum", "token", "label", "width", "height", "score", "state",
    "line", "word", "batch", "queue", "depth", "level", "cursor", "window", "delta", "weight",
];

#[rustfmt::skip]
const VERBS: &[&str] = &[
    "compute", "find", "merge", "apply", "build", "count", "filter", "resolve", "format",
    "parse", "update", "scan", "copy", "clamp", "wrap", "collect", "split", "reduce",
    "normalize", "describe", "trim", "rotate", "pack", "measure",
];

#[rustfmt::skip]
const RECEIVERS: &[&str] = &[
    "log", "sink", "cache", "registry", "listeners", "metrics", "helper", "tracker",
];

#[rustfmt::skip]
const CALLEES: &[&str] = &[
    "add", "accept", "put", "record", "update", "push", "emit", "append", "mark", "notify",
];

#[rustfmt::skip]
const WORDS: &[&str] = &[
    "empty", "missing entry", "overflow", "ready", "stale", "retry", "done", "header",
    "unknown label", "partial",
];

/// Per-method name scope, grouped by the type each name was declared with.
#[derive(Default)]
struct Scope {
    ints: Vec<String>,
    strs: Vec<String>,
    bools: Vec<String>,
    arrs: Vec<String>,
    fresh: usize,
}

struct Gen {
    rng: ChaCha12Rng,
}

impl Gen {
    fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    fn pick<'a>(&mut self, pool: &[&'a str]) -> &'a str {
        pool.choose(&mut self.rng).expect("non-empty pool")
    }

    fn chance(&mut self, percent: u32) -> bool {
        self.rng.random_range(0..100) < percent
    }

    fn fresh_name(&mut self, scope: &mut Scope) -> String {
        let base = self.pick(NOUNS);
        scope.fresh += 1;
        if scope.fresh > 1 {
            format!("{base}{}", scope.fresh)
        } else {
            base.to_string()
        }
    }

    // ---- expressions ------------------------------------------------------

    fn int_expr(&mut self, scope: &Scope, depth: usize) -> String {
        let var = scope.ints.choose(&mut self.rng).cloned();
        if depth >= 2 {
            return match var {
                Some(v) if self.chance(60) => v,
                _ => self.rng.random_range(0..100).to_string(),
            };
        }
        match self.rng.random_range(0..10) {
            0 | 1 => self.rng.random_range(0..100).to_string(),
            2 | 3 => var.unwrap_or_else(|| self.rng.random_range(0..100).to_string()),
            4 => format!(
                "{} {} {}",
                self.int_expr(scope, depth + 1),
                self.pick(&["+", "-", "*", "%"]),
                self.int_expr(scope, depth + 1)
            ),
            5 => format!(
                "({} + {}) * {}",
                self.int_expr(scope, depth + 1),
                self.int_expr(scope, depth + 1),
                self.rng.random_range(2..9)
            ),
            6 => format!(
                "Math.{}({}, {})",
                self.pick(&["max", "min"]),
                self.int_expr(scope, depth + 1),
                self.int_expr(scope, depth + 1)
            ),
            7 => match scope.arrs.choose(&mut self.rng) {
                Some(arr) if self.chance(50) => format!("{arr}.length"),
                Some(arr) => format!("{arr}[{}]", self.rng.random_range(0..4)),
                None => self.rng.random_range(0..100).to_string(),
            },
            8 => match scope.strs.choose(&mut self.rng) {
                Some(s) => format!("{s}.length()"),
                None => var.unwrap_or_else(|| "1".to_string()),
            },
            _ => format!(
                "{} ? {} : {}",
                self.bool_expr(scope, depth + 1),
                self.int_expr(scope, depth + 1),
                self.int_expr(scope, depth + 1)
            ),
        }
    }

    fn bool_expr(&mut self, scope: &Scope, depth: usize) -> String {
        if depth < 1 && self.chance(25) {
            return format!(
                "{} {} {}",
                self.bool_expr(scope, depth + 1),
                self.pick(&["&&", "||"]),
                self.bool_expr(scope, depth + 1)
            );
        }
        let comparison = |gen: &mut Self| {
            format!(
                "{} {} {}",
                gen.int_expr(scope, 2),
                gen.pick(&["<", "<=", ">", ">=", "==", "!="]),
                gen.int_expr(scope, 2)
            )
        };
        match self.rng.random_range(0..6) {
            0 => match scope.bools.choose(&mut self.rng) {
                Some(b) if self.chance(30) => format!("!{b}"),
                Some(b) => b.clone(),
                None => comparison(self),
            },
            1 => match scope.strs.choose(&mut self.rng) {
                Some(s) => format!("{s}.isEmpty()"),
                None => comparison(self),
            },
            _ => format!(
                "{} {} {}",
                self.int_expr(scope, 2),
                self.pick(&["<", "<=", ">", ">=", "==", "!="]),
                self.int_expr(scope, 2)
            ),
        }
    }

    fn str_expr(&mut self, scope: &Scope) -> String {
        match self.rng.random_range(0..5) {
            0 => format!("\"{}\"", self.pick(WORDS)),
            1 => match scope.strs.choose(&mut self.rng) {
                Some(s) => format!("{s}.trim()"),
                None => format!("\"{}\"", self.pick(WORDS)),
            },
            2 => format!("String.valueOf({})", self.int_expr(scope, 1)),
            3 => match scope.strs.choose(&mut self.rng) {
                Some(s) => format!("{s} + \"-{}\"", self.pick(NOUNS)),
                None => format!("\"{}\"", self.pick(WORDS)),
            },
            _ => scope
                .strs
                .choose(&mut self.rng)
                .cloned()
                .unwrap_or_else(|| format!("\"{}\"", self.pick(WORDS))),
        }
    }

    fn any_arg(&mut self, scope: &Scope) -> String {
        if self.chance(30) {
            self.str_expr(scope)
        } else {
            self.int_expr(scope, 1)
        }
    }

    // ---- statements -------------------------------------------------------

    fn call_stmt(&mut self, scope: &Scope) -> String {
        let recv = self.pick(RECEIVERS);
        let callee = self.pick(CALLEES);
        match self.rng.random_range(0..5) {
            0 => format!("{recv}.{callee}({});", self.any_arg(scope)),
            1 => format!(
                "{recv}.{callee}({}, {});",
                self.any_arg(scope),
                self.any_arg(scope)
            ),
            2 => format!("this.{recv}.{callee}({});", self.any_arg(scope)),
            3 => format!(
                "{recv}.{callee}({}).{}({});",
                self.any_arg(scope),
                self.pick(CALLEES),
                self.any_arg(scope)
            ),
            _ => format!("{recv}.{callee}();"),
        }
    }

    fn decl_stmt(&mut self, scope: &mut Scope) -> String {
        match self.rng.random_range(0..6) {
            0 | 1 => {
                let name = self.fresh_name(scope);
                let init = self.int_expr(scope, 1);
                scope.ints.push(name.clone());
                format!("int {name} = {init};")
            }
            2 => {
                let name = self.fresh_name(scope);
                let init = self.str_expr(scope);
                scope.strs.push(name.clone());
                format!("String {name} = {init};")
            }
            3 => {
                let name = self.fresh_name(scope);
                let init = self.bool_expr(scope, 1);
                scope.bools.push(name.clone());
                format!("boolean {name} = {init};")
            }
            4 => {
                let name = self.fresh_name(scope);
                let len = self.rng.random_range(2..9);
                scope.arrs.push(name.clone());
                format!("int[] {name} = new int[{len}];")
            }
            _ => {
                let name = self.fresh_name(scope);
                let init = self.int_expr(scope, 1);
                format!("long {name} = {init};")
            }
        }
    }

    fn assign_stmt(&mut self, scope: &Scope) -> String {
        let Some(target) = scope.ints.choose(&mut self.rng).cloned() else {
            return self.call_stmt(scope);
        };
        match self.rng.random_range(0..4) {
            0 => format!("{target} = {};", self.int_expr(scope, 1)),
            1 => format!(
                "{target} {}= {};",
                self.pick(&["+", "-", "*"]),
                self.int_expr(scope, 2)
            ),
            2 => format!("{target}++;"),
            _ => match scope.arrs.choose(&mut self.rng) {
                Some(arr) => format!(
                    "{arr}[{}] = {};",
                    self.rng.random_range(0..4),
                    self.int_expr(scope, 2)
                ),
                None => format!("{target} = {target} + 1;"),
            },
        }
    }

    fn block(&mut self, scope: &mut Scope, depth: usize, len: usize, indent: usize) -> Vec<String> {
        let mut out = Vec::new();
        for _ in 0..len {
            out.push(self.statement(scope, depth, indent));
        }
        out
    }

    fn statement(&mut self, scope: &mut Scope, depth: usize, indent: usize) -> String {
        let pad = "    ".repeat(indent);
        let inner_pad = "    ".repeat(indent + 1);
        let roll = if depth >= 2 {
            // leaves only
            self.rng.random_range(0..50)
        } else {
            self.rng.random_range(0..100)
        };
        match roll {
            0..=21 => format!("{pad}{}", self.decl_stmt(scope)),
            22..=35 => format!("{pad}{}", self.assign_stmt(scope)),
            36..=49 => format!("{pad}{}", self.call_stmt(scope)),
            50..=63 => {
                let cond = self.bool_expr(scope, 0);
                let len = self.rng.random_range(1..3);
                let body = self.block(scope, depth + 1, len, indent + 1);
                let mut text = format!("{pad}if ({cond}) {{\n{}\n{pad}}}", body.join("\n"));
                if self.chance(30) {
                    let alt = self.block(scope, depth + 1, 1, indent + 1);
                    text.push_str(&format!(" else {{\n{}\n{pad}}}", alt.join("\n")));
                }
                text
            }
            64..=75 => {
                let bound = match scope.arrs.choose(&mut self.rng) {
                    Some(arr) if self.chance(60) => format!("{arr}.length"),
                    _ => self.int_expr(scope, 2),
                };
                let mut inner = Scope {
                    ints: scope.ints.clone(),
                    strs: scope.strs.clone(),
                    bools: scope.bools.clone(),
                    arrs: scope.arrs.clone(),
                    fresh: scope.fresh + 1,
                };
                inner.ints.push("i".to_string());
                let len = self.rng.random_range(1..3);
                let body = self.block(&mut inner, depth + 1, len, indent + 1);
                format!(
                    "{pad}for (int i = 0; i < {bound}; i++) {{\n{}\n{pad}}}",
                    body.join("\n")
                )
            }
            76..=81 => match scope.arrs.choose(&mut self.rng).cloned() {
                Some(arr) => {
                    let mut inner = Scope {
                        ints: scope.ints.clone(),
                        strs: scope.strs.clone(),
                        bools: scope.bools.clone(),
                        arrs: scope.arrs.clone(),
                        fresh: scope.fresh + 1,
                    };
                    inner.ints.push("item".to_string());
                    let body = self.block(&mut inner, depth + 1, 1, indent + 1);
                    format!(
                        "{pad}for (int item : {arr}) {{\n{}\n{pad}}}",
                        body.join("\n")
                    )
                }
                None => format!("{pad}{}", self.decl_stmt(scope)),
            },
            82..=86 => {
                let cond = self.bool_expr(scope, 1);
                let len = self.rng.random_range(1..3);
                let body = self.block(scope, depth + 1, len, indent + 1);
                format!("{pad}while ({cond}) {{\n{}\n{pad}}}", body.join("\n"))
            }
            87..=90 => {
                let len = self.rng.random_range(1..3);
                let body = self.block(scope, depth + 1, len, indent + 1);
                let handler = format!("{inner_pad}{}", self.call_stmt(scope));
                format!(
                    "{pad}try {{\n{}\n{pad}}} catch (Exception e) {{\n{handler}\n{pad}}}",
                    body.join("\n")
                )
            }
            91..=93 => match scope.ints.choose(&mut self.rng).cloned() {
                Some(sel) => {
                    let case_pad = "    ".repeat(indent + 2);
                    let a = self.statement(scope, depth + 2, indent + 2);
                    let b = self.statement(scope, depth + 2, indent + 2);
                    let d = self.statement(scope, depth + 2, indent + 2);
                    format!(
                        "{pad}switch ({sel}) {{\n{inner_pad}case 0:\n{a}\n{case_pad}break;\n{inner_pad}case 1:\n{b}\n{case_pad}break;\n{inner_pad}default:\n{d}\n{pad}}}"
                    )
                }
                None => format!("{pad}{}", self.call_stmt(scope)),
            },
            94..=95 => format!(
                "{pad}if ({} < 0) {{\n{inner_pad}throw new IllegalArgumentException(\"{}\");\n{pad}}}",
                scope
                    .ints
                    .choose(&mut self.rng)
                    .cloned()
                    .unwrap_or_else(|| "0".to_string()),
                self.pick(WORDS)
            ),
            _ => format!("{pad}{}", self.assign_stmt(scope)),
        }
    }

    // ---- whole methods ----------------------------------------------------

    fn method(&mut self, index: usize) -> (String, Option<String>) {
        let band = match self.rng.random_range(0..100) {
            0..=14 => 0,
            15..=44 => 1,
            45..=74 => 2,
            _ => 3,
        };
        let target = match band {
            0 => self.rng.random_range(12..22),
            1 => self.rng.random_range(28..64),
            2 => self.rng.random_range(70..170),
            _ => self.rng.random_range(190..340),
        };

        let mut scope = Scope::default();
        let verb = self.pick(VERBS);
        let noun = self.pick(NOUNS);
        let name = format!("{verb}{}{}", noun[..1].to_uppercase(), &noun[1..]);

        let modifiers = match self.rng.random_range(0..10) {
            0..=5 => "public ",
            6 | 7 => "private ",
            8 => "public static ",
            _ => "",
        };
        let annotation = if self.chance(3) { "@Override\n" } else { "" };
        let ret = *["int", "int", "int", "boolean", "String", "void", "long"]
            .choose(&mut self.rng)
            .unwrap();

        let mut params = Vec::new();
        for _ in 0..self.rng.random_range(0..4u32) {
            let pname = self.fresh_name(&mut scope);
            match self.rng.random_range(0..5) {
                0 | 1 => {
                    scope.ints.push(pname.clone());
                    params.push(format!("int {pname}"));
                }
                2 => {
                    scope.strs.push(pname.clone());
                    params.push(format!("String {pname}"));
                }
                3 => {
                    scope.arrs.push(pname.clone());
                    params.push(format!("int[] {pname}"));
                }
                _ => {
                    scope.bools.push(pname.clone());
                    params.push(format!("boolean {pname}"));
                }
            }
        }
        let throws = if self.chance(8) {
            " throws IOException"
        } else {
            ""
        };
        let header = format!(
            "{annotation}{modifiers}{ret} {name}({}){throws} {{",
            params.join(", ")
        );

        let tail = match ret {
            "int" | "long" => {
                let expr = scope
                    .ints
                    .clone()
                    .choose(&mut self.rng)
                    .cloned()
                    .unwrap_or_else(|| "0".to_string());
                format!("    return {expr};")
            }
            "boolean" => format!("    return {};", self.bool_expr(&scope, 1)),
            "String" => format!("    return {};", self.str_expr(&scope)),
            _ => String::new(),
        };

        let mut body: Vec<String> = Vec::new();
        if band == 0 {
            // accessor-shaped: at most one statement before the return
            if self.chance(40) {
                body.push(self.statement(&mut scope, 2, 1));
            }
        } else {
            loop {
                let assembled = assemble(&header, &body, &tail);
                if token_len(&assembled) >= target || body.len() > 80 {
                    break;
                }
                body.push(self.statement(&mut scope, 0, 1));
            }
        }

        let code = assemble(&header, &body, &tail);
        let docstring = if self.chance(85) {
            Some(self.docstring(index))
        } else {
            None
        };
        (code, docstring)
    }

    fn docstring(&mut self, index: usize) -> String {
        let a = self.pick(NOUNS);
        let b = self.pick(NOUNS);
        let mut text = match index % 7 {
            0 => format!("Returns the {a} of the given {b}."),
            1 => format!("Computes the {a} for each {b} in the input."),
            2 => format!("Updates the internal {a} and returns the previous {b}."),
            3 => format!("Checks whether the {a} exceeds the configured {b}."),
            4 => format!("Merges {a} entries into the shared {b}."),
            5 => format!("Formats the {a} as a printable string."),
            _ => format!("Scans the {a} and records every matching {b}."),
        };
        if self.chance(30) {
            text.push_str(&format!(
                " Falls back to an empty {} when absent.",
                self.pick(NOUNS)
            ));
        }
        text
    }
}

fn assemble(header: &str, body: &[String], tail: &str) -> String {
    let mut out = String::from(header);
    for stmt in body {
        out.push('\n');
        out.push_str(stmt);
    }
    if !tail.is_empty() {
        out.push('\n');
        out.push_str(tail);
    }
    out.push_str("\n}");
    out
}

fn token_len(code: &str) -> usize {
    lexer::lex(code).map(|t| t.len()).unwrap_or(0)
}

fn main() {
    let out_path = env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus.jsonl")
    });
    if let Some(parent) = out_path.parent() {
        fs::create_dir_all(parent).expect("create fixture directory");
    }
    let file = File::create(&out_path).expect("create fixture file");
    let mut out = BufWriter::new(file);

    let mut gen = Gen::new(SEED);
    let mut total_tokens = 0u64;
    let mut symbol_tokens = 0u64;
    for i in 0..RECORDS {
        let (code, docstring) = gen.method(i);
        let tokens = lexer::lex(&code).expect("generated method must lex");
        total_tokens += tokens.len() as u64;
        symbol_tokens += tokens
            .tokens()
            .iter()
            .filter(|t| t.kind == TokenKind::Symbol)
            .count() as u64;

        let mut record = Map::new();
        record.insert("id".to_string(), json!(format!("fx{i:04}")));
        record.insert("code".to_string(), json!(code));
        if let Some(doc) = docstring {
            record.insert("docstring".to_string(), json!(doc));
        }
        writeln!(out, "{}", Value::Object(record)).expect("write record");
    }
    out.flush().expect("flush fixture file");

    eprintln!(
        "wrote {RECORDS} records to {} ({} tokens, symbol share {:.2}%)",
        out_path.display(),
        total_tokens,
        100.0 * symbol_tokens as f64 / total_tokens as f64
    );
}
