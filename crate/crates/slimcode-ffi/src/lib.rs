//! C ABI over the code simplifier: rank the tokens of a Java snippet and
//! remove the least important ones under a caller-chosen budget.
//!
//! Conventions:
//! - every fallible call returns a [`SlimcodeStatus`]; outputs come back
//!   through out-pointers, which are written only on `OK`;
//! - a successful [`slimcode_simplify`] yields an opaque [`SlimcodeResult`]
//!   owning all derived data; release it with [`slimcode_result_free`];
//! - strings returned from accessors stay valid until their owning result
//!   is freed and must not be freed by the caller;
//! - panics never unwind across the boundary; they surface as
//!   `INTERNAL_ERROR`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use slimcode::error::SimplifyError;
use slimcode::lexer;
use slimcode::pdg;
use slimcode::ranker::{self, Category, CategorySet, RankConfig};
use slimcode::scanner::StructuralSpans;
use slimcode::simplify::{self, RemovalMode, SimplificationConfig};

/// Category bit for method-signature members, for [`SlimcodeOptions::categories`].
pub const SLIMCODE_CATEGORY_SIGNATURE: u32 = 1 << 0;
/// Category bit for identifiers.
pub const SLIMCODE_CATEGORY_IDENTIFIER: u32 = 1 << 1;
/// Category bit for control-structure spans.
pub const SLIMCODE_CATEGORY_CONTROL: u32 = 1 << 2;
/// Category bit for method-invocation spans.
pub const SLIMCODE_CATEGORY_INVOCATION: u32 = 1 << 3;
/// Category bit for symbol tokens.
pub const SLIMCODE_CATEGORY_SYMBOL: u32 = 1 << 4;
/// Category bit for every remaining token.
pub const SLIMCODE_CATEGORY_OTHER: u32 = 1 << 5;

/// Status of a call. Anything but `OK` means out-pointers were not written.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlimcodeStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// The input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The source failed to tokenize (unterminated literal or a byte the
    /// lexer does not recognize).
    LexError = 3,
    /// The source tokenized but its structure could not be scanned
    /// (unbalanced delimiters in a control header).
    ScanError = 4,
    /// The options are out of range or inconsistent for the chosen mode.
    InvalidOptions = 5,
    /// The snippet has no tokens, so no ratio is defined for it.
    EmptySnippet = 6,
    /// An unexpected internal failure; never expected in normal use.
    InternalError = 7,
}

/// Token-removal strategy.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlimcodeMode {
    /// Remove highest-score (least important) tokens first until the
    /// retained length fits `(1 - ratio) * input_length`.
    Greedy = 0,
    /// Remove `round(ratio * n)` tokens uniformly at random, seeded.
    Random = 1,
    /// Remove every token belonging to the categories named by the
    /// `categories` bitmask.
    Category = 2,
    /// Remove statements with no data or control influence on the rest.
    SemanticPdg = 3,
}

/// Simplification parameters. Start from [`slimcode_options_default`] and
/// override fields as needed.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SlimcodeOptions {
    /// Fraction of tokens to remove, in `[0, 1]`.
    pub ratio: f64,
    /// Model input budget in tokens; at least 1.
    pub input_length: usize,
    pub mode: SlimcodeMode,
    /// Generator seed for `RANDOM` mode; ignored otherwise.
    pub seed: u64,
    /// `SLIMCODE_CATEGORY_*` bits for `CATEGORY` mode; ignored otherwise.
    pub categories: u32,
    /// Exchange the two span-interior scores (5 and 6), making
    /// control-structure interiors cheaper to remove than invocation
    /// interiors.
    pub swap_scores_5_6: bool,
}

/// Opaque result of one simplification; owns the simplified source text.
pub struct SlimcodeResult {
    code: CString,
    achieved_ratio: f64,
    retained: usize,
    removed: usize,
}

/// Baseline options: greedy mode at ratio 0.3 against a 200-token budget.
#[no_mangle]
pub extern "C" fn slimcode_options_default() -> SlimcodeOptions {
    SlimcodeOptions {
        ratio: 0.3,
        input_length: 200,
        mode: SlimcodeMode::Greedy,
        seed: simplify::DEFAULT_RANDOM_SEED,
        categories: 0,
        swap_scores_5_6: false,
    }
}

fn category_set(mask: u32) -> Option<CategorySet> {
    const BITS: [(u32, Category); 6] = [
        (SLIMCODE_CATEGORY_SIGNATURE, Category::Signature),
        (SLIMCODE_CATEGORY_IDENTIFIER, Category::Identifier),
        (SLIMCODE_CATEGORY_CONTROL, Category::ControlStructure),
        (SLIMCODE_CATEGORY_INVOCATION, Category::MethodInvocation),
        (SLIMCODE_CATEGORY_SYMBOL, Category::SymbolToken),
        (SLIMCODE_CATEGORY_OTHER, Category::Other),
    ];
    let known: u32 = BITS.iter().map(|(bit, _)| bit).sum();
    if mask == 0 || mask & !known != 0 {
        return None;
    }
    let mut set = CategorySet::empty();
    for (bit, category) in BITS {
        if mask & bit != 0 {
            set.insert(category);
        }
    }
    Some(set)
}

fn simplify_impl(code: &str, options: &SlimcodeOptions) -> Result<SlimcodeResult, SlimcodeStatus> {
    let mode = match options.mode {
        SlimcodeMode::Greedy => RemovalMode::Greedy,
        SlimcodeMode::Random => RemovalMode::Random { seed: options.seed },
        SlimcodeMode::Category => RemovalMode::Category(
            category_set(options.categories).ok_or(SlimcodeStatus::InvalidOptions)?,
        ),
        SlimcodeMode::SemanticPdg => RemovalMode::SemanticPdg,
    };
    let config = SimplificationConfig::new(options.ratio, options.input_length, mode);
    config
        .validate()
        .map_err(|_| SlimcodeStatus::InvalidOptions)?;

    let tokens = lexer::lex(code).map_err(|_| SlimcodeStatus::LexError)?;
    if tokens.is_empty() {
        return Err(SlimcodeStatus::EmptySnippet);
    }
    let spans = StructuralSpans::scan(&tokens).map_err(|_| SlimcodeStatus::ScanError)?;
    let rank = RankConfig {
        swap_control_invocation: options.swap_scores_5_6,
    };
    let ranked = ranker::assign_scores(&tokens, &spans, rank);
    let analysis = if matches!(mode, RemovalMode::SemanticPdg) {
        Some(pdg::analyze(&tokens, &spans).map_err(|_| SlimcodeStatus::ScanError)?)
    } else {
        None
    };
    let outcome =
        simplify::simplify(&ranked, &config, analysis.as_ref()).map_err(|err| match err {
            SimplifyError::EmptySnippet => SlimcodeStatus::EmptySnippet,
            SimplifyError::Config(_) => SlimcodeStatus::InvalidOptions,
            SimplifyError::MissingVerdict => SlimcodeStatus::InternalError,
        })?;

    let retained = outcome.retained.len();
    let removed = outcome.removed.len();
    let code =
        CString::new(outcome.retained.joined_text()).map_err(|_| SlimcodeStatus::InternalError)?;
    Ok(SlimcodeResult {
        code,
        achieved_ratio: outcome.achieved_ratio,
        retained,
        removed,
    })
}

/// Simplifies a NUL-terminated Java snippet and stores an owned result in
/// `*out_result` on `OK`.
///
/// # Safety
/// `code` must point to a NUL-terminated byte string and `out_result` to a
/// writable pointer slot; both must stay valid for the duration of the
/// call. `options` may alias anything readable but must not be null.
#[no_mangle]
pub unsafe extern "C" fn slimcode_simplify(
    code: *const c_char,
    options: *const SlimcodeOptions,
    out_result: *mut *mut SlimcodeResult,
) -> SlimcodeStatus {
    if code.is_null() || options.is_null() || out_result.is_null() {
        return SlimcodeStatus::NullPointer;
    }
    let Ok(code) = CStr::from_ptr(code).to_str() else {
        return SlimcodeStatus::InvalidUtf8;
    };
    let options = *options;
    guarded(|| match simplify_impl(code, &options) {
        Ok(result) => {
            *out_result = Box::into_raw(Box::new(result));
            SlimcodeStatus::Ok
        }
        Err(status) => status,
    })
}

/// Counts the tokens of a NUL-terminated Java snippet into `*out_count`.
///
/// # Safety
/// `code` must point to a NUL-terminated byte string and `out_count` to a
/// writable `size_t`; both must stay valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn slimcode_token_count(
    code: *const c_char,
    out_count: *mut usize,
) -> SlimcodeStatus {
    if code.is_null() || out_count.is_null() {
        return SlimcodeStatus::NullPointer;
    }
    let Ok(code) = CStr::from_ptr(code).to_str() else {
        return SlimcodeStatus::InvalidUtf8;
    };
    guarded(|| match lexer::lex(code) {
        Ok(tokens) => {
            *out_count = tokens.len();
            SlimcodeStatus::Ok
        }
        Err(_) => SlimcodeStatus::LexError,
    })
}

/// Returns the simplified source, space-joined and NUL-terminated. The
/// string is owned by `result`; do not free it separately.
///
/// # Safety
/// `result` must be a live pointer from [`slimcode_simplify`].
#[no_mangle]
pub unsafe extern "C" fn slimcode_result_code(result: *const SlimcodeResult) -> *const c_char {
    match result.as_ref() {
        Some(result) => result.code.as_ptr(),
        None => ptr::null(),
    }
}

/// Returns the achieved removal fraction, `removed / original`.
///
/// # Safety
/// `result` must be a live pointer from [`slimcode_simplify`] or null
/// (null yields a NaN).
#[no_mangle]
pub unsafe extern "C" fn slimcode_result_achieved_ratio(result: *const SlimcodeResult) -> f64 {
    match result.as_ref() {
        Some(result) => result.achieved_ratio,
        None => f64::NAN,
    }
}

/// Returns how many tokens the simplified snippet kept.
///
/// # Safety
/// `result` must be a live pointer from [`slimcode_simplify`] or null.
#[no_mangle]
pub unsafe extern "C" fn slimcode_result_retained_count(result: *const SlimcodeResult) -> usize {
    match result.as_ref() {
        Some(result) => result.retained,
        None => 0,
    }
}

/// Returns how many tokens were removed.
///
/// # Safety
/// `result` must be a live pointer from [`slimcode_simplify`] or null.
#[no_mangle]
pub unsafe extern "C" fn slimcode_result_removed_count(result: *const SlimcodeResult) -> usize {
    match result.as_ref() {
        Some(result) => result.removed,
        None => 0,
    }
}

/// Releases a result. Passing null is a no-op; passing the same pointer
/// twice is undefined behavior.
///
/// # Safety
/// `result` must be null or a pointer from [`slimcode_simplify`] that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn slimcode_result_free(result: *mut SlimcodeResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Returns a static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn slimcode_status_message(status: SlimcodeStatus) -> *const c_char {
    let message: &'static CStr = match status {
        SlimcodeStatus::Ok => c"ok",
        SlimcodeStatus::NullPointer => c"a required pointer argument was null",
        SlimcodeStatus::InvalidUtf8 => c"input was not valid UTF-8",
        SlimcodeStatus::LexError => c"source failed to tokenize",
        SlimcodeStatus::ScanError => c"source structure could not be scanned",
        SlimcodeStatus::InvalidOptions => c"options out of range or inconsistent",
        SlimcodeStatus::EmptySnippet => c"snippet has no tokens",
        SlimcodeStatus::InternalError => c"internal error",
    };
    message.as_ptr()
}

fn guarded<F: FnOnce() -> SlimcodeStatus>(f: F) -> SlimcodeStatus {
    panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or(SlimcodeStatus::InternalError)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplify_ok(code: &str, options: &SlimcodeOptions) -> *mut SlimcodeResult {
        let code = CString::new(code).unwrap();
        let mut result: *mut SlimcodeResult = ptr::null_mut();
        let status = unsafe { slimcode_simplify(code.as_ptr(), options, &mut result) };
        assert_eq!(status, SlimcodeStatus::Ok);
        assert!(!result.is_null());
        result
    }

    #[test]
    fn simplify_round_trip_accounts_for_every_token() {
        let source = "public int add(int a, int b) { return a + b; }";
        let mut options = slimcode_options_default();
        options.ratio = 0.5;
        options.input_length = 10;
        let result = simplify_ok(source, &options);

        let source_c = CString::new(source).unwrap();
        let mut total = 0usize;
        let status = unsafe { slimcode_token_count(source_c.as_ptr(), &mut total) };
        assert_eq!(status, SlimcodeStatus::Ok);

        unsafe {
            let retained = slimcode_result_retained_count(result);
            let removed = slimcode_result_removed_count(result);
            assert_eq!(retained + removed, total);
            assert_eq!(retained, 5); // floor(0.5 * 10)
            let ratio = slimcode_result_achieved_ratio(result);
            assert!((ratio - removed as f64 / total as f64).abs() < 1e-15);
            let text = CStr::from_ptr(slimcode_result_code(result))
                .to_str()
                .unwrap();
            assert_eq!(text.split(' ').count(), retained);
            slimcode_result_free(result);
        }
    }

    #[test]
    fn null_arguments_are_rejected() {
        let options = slimcode_options_default();
        let mut result: *mut SlimcodeResult = ptr::null_mut();
        let code = CString::new("int x;").unwrap();
        unsafe {
            assert_eq!(
                slimcode_simplify(ptr::null(), &options, &mut result),
                SlimcodeStatus::NullPointer
            );
            assert_eq!(
                slimcode_simplify(code.as_ptr(), ptr::null(), &mut result),
                SlimcodeStatus::NullPointer
            );
            assert_eq!(
                slimcode_simplify(code.as_ptr(), &options, ptr::null_mut()),
                SlimcodeStatus::NullPointer
            );
            let mut count = 0usize;
            assert_eq!(
                slimcode_token_count(ptr::null(), &mut count),
                SlimcodeStatus::NullPointer
            );
        }
    }

    #[test]
    fn invalid_inputs_map_to_distinct_statuses() {
        let mut result: *mut SlimcodeResult = ptr::null_mut();
        let options = slimcode_options_default();

        let bad_utf8 = [0xFFu8, 0];
        unsafe {
            assert_eq!(
                slimcode_simplify(bad_utf8.as_ptr().cast(), &options, &mut result),
                SlimcodeStatus::InvalidUtf8
            );
        }

        let unterminated = CString::new("String s = \"open").unwrap();
        unsafe {
            assert_eq!(
                slimcode_simplify(unterminated.as_ptr(), &options, &mut result),
                SlimcodeStatus::LexError
            );
        }

        let code = CString::new("int x = 1;").unwrap();
        let mut bad_ratio = slimcode_options_default();
        bad_ratio.ratio = 1.5;
        unsafe {
            assert_eq!(
                slimcode_simplify(code.as_ptr(), &bad_ratio, &mut result),
                SlimcodeStatus::InvalidOptions
            );
        }

        let mut zero_len = slimcode_options_default();
        zero_len.input_length = 0;
        unsafe {
            assert_eq!(
                slimcode_simplify(code.as_ptr(), &zero_len, &mut result),
                SlimcodeStatus::InvalidOptions
            );
        }

        let empty = CString::new("").unwrap();
        unsafe {
            assert_eq!(
                slimcode_simplify(empty.as_ptr(), &options, &mut result),
                SlimcodeStatus::EmptySnippet
            );
        }
        assert!(result.is_null(), "out-pointer must stay untouched on error");
    }

    #[test]
    fn category_mode_validates_and_applies_the_mask() {
        let code = "public int add(int a, int b) { return a + b; }";
        let mut options = slimcode_options_default();
        options.mode = SlimcodeMode::Category;

        // empty and unknown masks are rejected
        let code_c = CString::new(code).unwrap();
        let mut result: *mut SlimcodeResult = ptr::null_mut();
        unsafe {
            assert_eq!(
                slimcode_simplify(code_c.as_ptr(), &options, &mut result),
                SlimcodeStatus::InvalidOptions
            );
            options.categories = 1 << 13;
            assert_eq!(
                slimcode_simplify(code_c.as_ptr(), &options, &mut result),
                SlimcodeStatus::InvalidOptions
            );
        }

        options.categories = SLIMCODE_CATEGORY_SYMBOL | SLIMCODE_CATEGORY_OTHER;
        let result = simplify_ok(code, &options);
        unsafe {
            let text = CStr::from_ptr(slimcode_result_code(result))
                .to_str()
                .unwrap();
            assert_eq!(text, "public int add int a int b a b");
            slimcode_result_free(result);
        }
    }

    #[test]
    fn random_mode_is_reproducible_per_seed() {
        let mut options = slimcode_options_default();
        options.mode = SlimcodeMode::Random;
        options.ratio = 0.4;
        options.seed = 1234;
        let code = "void log(String s) { if (s != null) { sink.accept(s); } }";

        let texts: Vec<String> = (0..2)
            .map(|_| {
                let result = simplify_ok(code, &options);
                let text = unsafe {
                    CStr::from_ptr(slimcode_result_code(result))
                        .to_str()
                        .unwrap()
                        .to_string()
                };
                unsafe { slimcode_result_free(result) };
                text
            })
            .collect();
        assert_eq!(texts[0], texts[1]);

        options.seed = 4321;
        let result = simplify_ok(code, &options);
        let other = unsafe {
            CStr::from_ptr(slimcode_result_code(result))
                .to_str()
                .unwrap()
                .to_string()
        };
        unsafe { slimcode_result_free(result) };
        assert_ne!(texts[0], other, "different seeds should shuffle the pick");
    }

    #[test]
    fn semantic_mode_drops_uninfluential_statements() {
        // `c` is never read and `log` is never defined, so both middle
        // statements carry no dependence edge and get stripped.
        let code = "int run() { int a = 1; int c = 3; log.add(99); return a; }";
        let mut options = slimcode_options_default();
        options.mode = SlimcodeMode::SemanticPdg;
        let result = simplify_ok(code, &options);
        unsafe {
            let text = CStr::from_ptr(slimcode_result_code(result))
                .to_str()
                .unwrap();
            assert_eq!(text, "int run ( ) { int a = 1 ; return a ; }");
            slimcode_result_free(result);
        }
    }

    #[test]
    fn free_tolerates_null_and_messages_cover_all_statuses() {
        unsafe { slimcode_result_free(ptr::null_mut()) };
        for status in [
            SlimcodeStatus::Ok,
            SlimcodeStatus::NullPointer,
            SlimcodeStatus::InvalidUtf8,
            SlimcodeStatus::LexError,
            SlimcodeStatus::ScanError,
            SlimcodeStatus::InvalidOptions,
            SlimcodeStatus::EmptySnippet,
            SlimcodeStatus::InternalError,
        ] {
            let message = slimcode_status_message(status);
            assert!(!message.is_null());
            let text = unsafe { CStr::from_ptr(message).to_str().unwrap() };
            assert!(!text.is_empty());
        }
    }

    #[test]
    fn generated_header_declares_the_full_surface() {
        let header = std::fs::read_to_string(
            std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/slimcode.h"),
        )
        .expect("header generated at build time");
        for needle in [
            "SLIMCODE_H",
            "typedef struct SlimcodeResult SlimcodeResult;",
            "slimcode_simplify",
            "slimcode_result_free",
            "slimcode_status_message",
            "SLIMCODE_CATEGORY_SYMBOL",
        ] {
            assert!(header.contains(needle), "header lacks {needle:?}");
        }
    }
}
