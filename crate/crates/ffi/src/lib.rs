//! C ABI over `catbench`.
//!
//! Objects cross the boundary as opaque handles (`CatbenchCorpus`,
//! `CatbenchResult`) that the caller frees with the matching `*_free`
//! function. Every fallible call returns a [`CatbenchStatus`]; on failure
//! [`catbench_last_error`] describes what went wrong on the calling thread.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and must be released with [`catbench_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use catbench::info_gain::relative_entropy;
use catbench::{
    layout_map, parse_corpus, render_svg, run_benchmark, top_k, validate_corpus, BenchmarkRequest, BenchmarkResult,
    Corpus, DivergenceConfig, Error, ErrorKind, Indicator, LayoutOptions, LogBase, PrestigeOrder, Scale, SvgStyle,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatbenchStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Unreadable or malformed input data.
    InputError = 3,
    /// Unknown category, empty data, or an unusable distribution.
    DomainError = 4,
    InvalidArgument = 5,
    IndexOutOfRange = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatbenchIndicator {
    ImpactFactor = 0,
    Eigenfactor = 1,
    Immediacy = 2,
}

impl From<CatbenchIndicator> for Indicator {
    fn from(i: CatbenchIndicator) -> Self {
        match i {
            CatbenchIndicator::ImpactFactor => Indicator::ImpactFactor,
            CatbenchIndicator::Eigenfactor => Indicator::Eigenfactor,
            CatbenchIndicator::Immediacy => Indicator::Immediacy,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatbenchScale {
    /// Linear for impact factor and immediacy, logarithmic for Eigenfactor.
    Default = 0,
    Linear = 1,
    Log = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatbenchLogBase {
    Natural = 0,
    Base2 = 1,
}

impl From<CatbenchLogBase> for LogBase {
    fn from(b: CatbenchLogBase) -> Self {
        match b {
            CatbenchLogBase::Natural => LogBase::Natural,
            CatbenchLogBase::Base2 => LogBase::Base2,
        }
    }
}

/// Settings for one single-indicator benchmark run.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CatbenchBenchOptions {
    pub indicator: CatbenchIndicator,
    pub bin_count: usize,
    pub scale: CatbenchScale,
    pub alpha: f64,
    /// Ranking length kept; 0 keeps the full ranking.
    pub k: usize,
}

/// Parsed, immutable corpus.
pub struct CatbenchCorpus {
    inner: Corpus,
}

/// Ranking of one benchmark run.
pub struct CatbenchResult {
    inner: BenchmarkResult,
    names: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let msg = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_for(err: &Error) -> CatbenchStatus {
    match (err, err.kind()) {
        (Error::InvalidInput(_), _) => CatbenchStatus::InvalidArgument,
        (_, ErrorKind::Input) => CatbenchStatus::InputError,
        (_, ErrorKind::Domain) => CatbenchStatus::DomainError,
    }
}

fn fail(status: CatbenchStatus, message: impl Into<String>) -> CatbenchStatus {
    set_last_error(message);
    status
}

fn fail_with(err: Error) -> CatbenchStatus {
    fail(status_for(&err), err.to_string())
}

/// Runs `f`, turning panics into [`CatbenchStatus::Panic`].
fn guard(f: impl FnOnce() -> CatbenchStatus) -> CatbenchStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(CatbenchStatus::Panic, "internal panic"),
    }
}

unsafe fn borrow_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, CatbenchStatus> {
    if s.is_null() {
        return Err(fail(CatbenchStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(CatbenchStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> CatbenchStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            CatbenchStatus::Ok
        }
        Err(_) => fail(CatbenchStatus::InvalidArgument, "output contains an interior NUL byte"),
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next catbench call on the same thread.
#[no_mangle]
pub extern "C" fn catbench_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn catbench_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Defaults: impact factor, 20 bins, default scale, alpha 0.5, k 30.
#[no_mangle]
pub extern "C" fn catbench_bench_options_default() -> CatbenchBenchOptions {
    CatbenchBenchOptions {
        indicator: CatbenchIndicator::ImpactFactor,
        bin_count: catbench::histogram::DEFAULT_BIN_COUNT,
        scale: CatbenchScale::Default,
        alpha: catbench::histogram::DEFAULT_ALPHA,
        k: catbench::benchmark::DEFAULT_TOP_K,
    }
}

/// Parses corpus CSV text.
#[no_mangle]
pub unsafe extern "C" fn catbench_corpus_from_csv(text: *const c_char, out: *mut *mut CatbenchCorpus) -> CatbenchStatus {
    guard(|| {
        if out.is_null() {
            return fail(CatbenchStatus::NullPointer, "out is null");
        }
        let text = match borrow_str(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_corpus(text.as_bytes()) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CatbenchCorpus { inner }));
                CatbenchStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

/// Reads and parses a corpus CSV file.
#[no_mangle]
pub unsafe extern "C" fn catbench_corpus_from_path(path: *const c_char, out: *mut *mut CatbenchCorpus) -> CatbenchStatus {
    guard(|| {
        if out.is_null() {
            return fail(CatbenchStatus::NullPointer, "out is null");
        }
        let path = match borrow_str(path, "path") {
            Ok(p) => p,
            Err(s) => return s,
        };
        let parsed = std::fs::File::open(Path::new(path))
            .map_err(Error::from)
            .and_then(|f| parse_corpus(std::io::BufReader::new(f)));
        match parsed {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CatbenchCorpus { inner }));
                CatbenchStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn catbench_corpus_free(corpus: *mut CatbenchCorpus) {
    if !corpus.is_null() {
        drop(Box::from_raw(corpus));
    }
}

/// Number of (journal, category) records; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn catbench_corpus_record_count(corpus: *const CatbenchCorpus) -> usize {
    corpus.as_ref().map_or(0, |c| c.inner.len())
}

#[no_mangle]
pub unsafe extern "C" fn catbench_corpus_category_count(corpus: *const CatbenchCorpus) -> usize {
    corpus.as_ref().map_or(0, |c| c.inner.category_count())
}

/// Validation report as JSON.
#[no_mangle]
pub unsafe extern "C" fn catbench_corpus_validate_json(
    corpus: *const CatbenchCorpus,
    min_records: usize,
    out_json: *mut *mut c_char,
) -> CatbenchStatus {
    guard(|| {
        let Some(corpus) = corpus.as_ref() else {
            return fail(CatbenchStatus::NullPointer, "corpus is null");
        };
        if out_json.is_null() {
            return fail(CatbenchStatus::NullPointer, "out_json is null");
        }
        let report = validate_corpus(&corpus.inner, min_records);
        match serde_json::to_string(&report) {
            Ok(s) => write_string(out_json, s),
            Err(e) => fail(CatbenchStatus::Panic, e.to_string()),
        }
    })
}

/// Information gain `a * sum p_i log(p_i / q_i)` of two probability vectors
/// of length `len`.
#[no_mangle]
pub unsafe extern "C" fn catbench_information_gain(
    p: *const f64,
    q: *const f64,
    len: usize,
    scale_constant: f64,
    base: CatbenchLogBase,
    out: *mut f64,
) -> CatbenchStatus {
    guard(|| {
        if p.is_null() || q.is_null() || out.is_null() {
            return fail(CatbenchStatus::NullPointer, "p, q and out must be non-null");
        }
        if len == 0 {
            return fail(CatbenchStatus::InvalidArgument, "len must be >= 1");
        }
        let cfg = match DivergenceConfig::new(scale_constant, base.into()) {
            Ok(c) => c,
            Err(e) => return fail_with(e),
        };
        let (p, q) = (std::slice::from_raw_parts(p, len), std::slice::from_raw_parts(q, len));
        if p.iter().chain(q).any(|x| !x.is_finite() || *x < 0.0) {
            return fail(CatbenchStatus::InvalidArgument, "probabilities must be finite and >= 0");
        }
        match relative_entropy(p, q) {
            Ok(nats) => {
                *out = cfg.apply(nats);
                CatbenchStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

/// Ranks every other category against `reference` for one indicator.
#[no_mangle]
pub unsafe extern "C" fn catbench_benchmark_run(
    corpus: *const CatbenchCorpus,
    reference: *const c_char,
    options: *const CatbenchBenchOptions,
    out: *mut *mut CatbenchResult,
) -> CatbenchStatus {
    guard(|| {
        let Some(corpus) = corpus.as_ref() else {
            return fail(CatbenchStatus::NullPointer, "corpus is null");
        };
        if out.is_null() {
            return fail(CatbenchStatus::NullPointer, "out is null");
        }
        let reference = match borrow_str(reference, "reference") {
            Ok(r) => r,
            Err(s) => return s,
        };
        let opts = options.as_ref().copied().unwrap_or_else(|| catbench_bench_options_default());
        let indicator: Indicator = opts.indicator.into();
        let mut request = BenchmarkRequest::new(reference);
        request.indicators = vec![indicator];
        request.bin_count = opts.bin_count;
        match opts.scale {
            CatbenchScale::Default => {}
            CatbenchScale::Linear => {
                request.scales.insert(indicator, Scale::Linear);
            }
            CatbenchScale::Log => {
                request.scales.insert(indicator, Scale::Logarithmic);
            }
        }
        request.alpha = opts.alpha;
        match run_benchmark(&corpus.inner, &request) {
            Ok(mut results) => {
                let full = results.remove(0);
                let inner = if opts.k == 0 { full } else { top_k(&full, opts.k) };
                let names = inner
                    .ranking
                    .iter()
                    .map(|e| CString::new(e.category.replace('\0', " ")).unwrap_or_default())
                    .collect();
                *out = Box::into_raw(Box::new(CatbenchResult { inner, names }));
                CatbenchStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn catbench_result_free(result: *mut CatbenchResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Number of ranked categories; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn catbench_result_len(result: *const CatbenchResult) -> usize {
    result.as_ref().map_or(0, |r| r.inner.ranking.len())
}

/// Category at 0-based position `index`, or NULL when out of range. The
/// string is owned by `result` and lives as long as it does.
#[no_mangle]
pub unsafe extern "C" fn catbench_result_category(result: *const CatbenchResult, index: usize) -> *const c_char {
    result
        .as_ref()
        .and_then(|r| r.names.get(index))
        .map_or(ptr::null(), |c| c.as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn catbench_result_gain(result: *const CatbenchResult, index: usize, out: *mut f64) -> CatbenchStatus {
    guard(|| {
        let Some(r) = result.as_ref() else {
            return fail(CatbenchStatus::NullPointer, "result is null");
        };
        if out.is_null() {
            return fail(CatbenchStatus::NullPointer, "out is null");
        }
        match r.inner.ranking.get(index) {
            Some(e) => {
                *out = e.gain;
                CatbenchStatus::Ok
            }
            None => fail(
                CatbenchStatus::IndexOutOfRange,
                format!("index {index} out of range for {} entries", r.inner.ranking.len()),
            ),
        }
    })
}

/// Result serialized as JSON, the same document `catbench bench --out DIR` writes per indicator.
#[no_mangle]
pub unsafe extern "C" fn catbench_result_to_json(result: *const CatbenchResult, out_json: *mut *mut c_char) -> CatbenchStatus {
    guard(|| {
        let Some(r) = result.as_ref() else {
            return fail(CatbenchStatus::NullPointer, "result is null");
        };
        if out_json.is_null() {
            return fail(CatbenchStatus::NullPointer, "out_json is null");
        }
        match serde_json::to_string_pretty(&r.inner) {
            Ok(s) => write_string(out_json, s),
            Err(e) => fail(CatbenchStatus::Panic, e.to_string()),
        }
    })
}

/// Heliocentric map of `result` as SVG text. `prestige_path` may be NULL
/// for ascending-gain order.
#[no_mangle]
pub unsafe extern "C" fn catbench_result_render_svg(
    result: *const CatbenchResult,
    prestige_path: *const c_char,
    rings: bool,
    out_svg: *mut *mut c_char,
) -> CatbenchStatus {
    guard(|| {
        let Some(r) = result.as_ref() else {
            return fail(CatbenchStatus::NullPointer, "result is null");
        };
        if out_svg.is_null() {
            return fail(CatbenchStatus::NullPointer, "out_svg is null");
        }
        let prestige = if prestige_path.is_null() {
            None
        } else {
            let path = match borrow_str(prestige_path, "prestige_path") {
                Ok(p) => p,
                Err(s) => return s,
            };
            match PrestigeOrder::from_file(Path::new(path)) {
                Ok(o) => Some(o),
                Err(e) => return fail_with(e),
            }
        };
        let layout = match layout_map(&r.inner, prestige.as_ref(), LayoutOptions::default()) {
            Ok(l) => l,
            Err(e) => return fail_with(e),
        };
        let style = SvgStyle { rings, ..SvgStyle::default() };
        write_string(out_svg, render_svg(&layout, &style))
    })
}
