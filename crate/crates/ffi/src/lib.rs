//! C ABI for the tunnel-atlas library.
//!
//! Every fallible function returns a [`TaStatus`] and writes its result
//! through out parameters. Big integers cross the boundary as decimal
//! strings allocated here and released with `ta_string_free`. Compound
//! results (iteration traces, bridge sets, torus tables, search reports)
//! are opaque handles with accessors and a matching `_free`. On failure,
//! `ta_last_error` returns a message for the current thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use tunnel_atlas::bridge::{self, BridgeError, BridgeSetEntry, IterationTrace, SeedPair};
use tunnel_atlas::cabling::{parse_path, BinaryWord};
use tunnel_atlas::search::{self, SearchError, SearchReport};
use tunnel_atlas::torus::{self, SlopeValue, TorusError, TorusTunnelTable};

/// Result codes for every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NotRegular = 4,
    OutOfRange = 5,
    NotCoprime = 6,
    TrivialKnot = 7,
    CapExceeded = 8,
    IndexOutOfBounds = 9,
}

/// Summary invariants of a cabling word.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaProfile {
    pub cabling_count: u64,
    pub semisimple_count: u64,
    pub depth: u64,
    pub regular: bool,
}

/// Opaque iteration trace of the Fibonacci function.
pub struct TaTrace {
    inner: IterationTrace,
}

/// Opaque list of bridge-number candidates with their seed pairs.
pub struct TaBridgeSet {
    entries: Vec<BridgeSetEntry>,
}

/// Opaque middle-tunnel invariant table of a torus knot.
pub struct TaTorusTable {
    table: TorusTunnelTable,
    mirrored: bool,
}

/// Opaque result of an exhaustive extremal search.
pub struct TaSearchReport {
    report: SearchReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: TaStatus, message: impl AsRef<str>) -> TaStatus {
    let text = CString::new(message.as_ref().replace('\0', " "))
        .unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
    status
}

fn ok() -> TaStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    TaStatus::Ok
}

/// Message for the most recent failure on this thread, or null after a
/// success. The pointer stays valid until the next call on the thread.
#[no_mangle]
pub extern "C" fn ta_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |text| text.as_ptr())
    })
}

unsafe fn str_arg<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, TaStatus> {
    if ptr.is_null() {
        return Err(fail(TaStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(TaStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn word_arg(ptr: *const c_char) -> Result<BinaryWord, TaStatus> {
    let text = str_arg(ptr, "input")?;
    parse_path(text).map_err(|err| fail(TaStatus::ParseError, err.to_string()))
}

unsafe fn seed_arg(a: *const c_char, b: *const c_char) -> Result<SeedPair, TaStatus> {
    let parse = |ptr: *const c_char, name: &str| -> Result<_, TaStatus> {
        let text = str_arg(ptr, name)?;
        text.parse().map_err(|_| {
            fail(
                TaStatus::ParseError,
                format!("{name} must be a nonnegative decimal integer"),
            )
        })
    };
    SeedPair::new(parse(a, "seed a")?, parse(b, "seed b")?).map_err(bridge_status)
}

fn bridge_status(err: BridgeError) -> TaStatus {
    let status = match err {
        BridgeError::NotRegular => TaStatus::NotRegular,
        _ => TaStatus::OutOfRange,
    };
    fail(status, err.to_string())
}

fn torus_status(err: TorusError) -> TaStatus {
    let status = match err {
        TorusError::NotCoprime { .. } => TaStatus::NotCoprime,
        TorusError::TrivialKnot { .. } => TaStatus::TrivialKnot,
        _ => TaStatus::OutOfRange,
    };
    fail(status, err.to_string())
}

fn search_status(err: SearchError) -> TaStatus {
    let status = match err {
        SearchError::CapExceeded { .. } => TaStatus::CapExceeded,
        SearchError::Bridge(BridgeError::NotRegular) => TaStatus::NotRegular,
        _ => TaStatus::OutOfRange,
    };
    fail(status, err.to_string())
}

unsafe fn write_string(out: *mut *mut c_char, value: String) -> TaStatus {
    if out.is_null() {
        return fail(TaStatus::NullArgument, "out pointer is null");
    }
    match CString::new(value) {
        Ok(text) => {
            *out = text.into_raw();
            ok()
        }
        Err(_) => fail(TaStatus::InvalidUtf8, "result contains a NUL byte"),
    }
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> TaStatus {
    if out.is_null() {
        return fail(TaStatus::NullArgument, "out pointer is null");
    }
    *out = Box::into_raw(Box::new(value));
    ok()
}

/// Releases a string returned by any `ta_` function. Null is a no-op.
///
/// # Safety
/// `s` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn ta_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Profile (cabling count, semisimple count, depth, regularity) of a
/// binary word or step sequence.
///
/// # Safety
/// `input` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ta_path_profile(input: *const c_char, out: *mut TaProfile) -> TaStatus {
    let word = match word_arg(input) {
        Ok(word) => word,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail(TaStatus::NullArgument, "out pointer is null");
    }
    let profile = word.profile();
    *out = TaProfile {
        cabling_count: profile.cabling_count as u64,
        semisimple_count: profile.semisimple_count as u64,
        depth: profile.depth as u64,
        regular: profile.regular,
    };
    ok()
}

/// Converts either encoding of a principal path to its step sequence.
///
/// # Safety
/// `input` must be a NUL-terminated string; `out` receives a string to be
/// released with `ta_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ta_path_to_steps(input: *const c_char, out: *mut *mut c_char) -> TaStatus {
    match word_arg(input) {
        Ok(word) => write_string(out, word.to_steps().to_string()),
        Err(status) => status,
    }
}

/// Converts either encoding of a principal path to its binary word.
///
/// # Safety
/// As for `ta_path_to_steps`.
#[no_mangle]
pub unsafe extern "C" fn ta_path_to_word(input: *const c_char, out: *mut *mut c_char) -> TaStatus {
    match word_arg(input) {
        Ok(word) => write_string(out, word.to_string()),
        Err(status) => status,
    }
}

/// F(a, b) for a regular word; seeds and result are decimal strings.
///
/// # Safety
/// All pointers must be valid; the result string is released with
/// `ta_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ta_fibonacci_value(
    input: *const c_char,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> TaStatus {
    let word = match word_arg(input) {
        Ok(word) => word,
        Err(status) => return status,
    };
    let seed = match seed_arg(a, b) {
        Ok(seed) => seed,
        Err(status) => return status,
    };
    match bridge::fibonacci_value(&word, &seed) {
        Ok(value) => write_string(out, value.to_string()),
        Err(err) => bridge_status(err),
    }
}

/// Full iteration trace of F(a, b) as an opaque handle.
///
/// # Safety
/// As for `ta_fibonacci_value`; the handle is released with
/// `ta_trace_free`.
#[no_mangle]
pub unsafe extern "C" fn ta_fibonacci_trace_new(
    input: *const c_char,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut TaTrace,
) -> TaStatus {
    let word = match word_arg(input) {
        Ok(word) => word,
        Err(status) => return status,
    };
    let seed = match seed_arg(a, b) {
        Ok(seed) => seed,
        Err(status) => return status,
    };
    match bridge::fibonacci_trace(&word, &seed) {
        Ok(trace) => write_handle(out, TaTrace { inner: trace }),
        Err(err) => bridge_status(err),
    }
}

/// Number of entries in a trace; 0 for null.
///
/// # Safety
/// `trace` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ta_trace_len(trace: *const TaTrace) -> usize {
    trace.as_ref().map_or(0, |t| t.inner.len())
}

/// One trace entry as a decimal string.
///
/// # Safety
/// `trace` must be a live handle from `ta_fibonacci_trace_new`.
#[no_mangle]
pub unsafe extern "C" fn ta_trace_value(
    trace: *const TaTrace,
    index: usize,
    out: *mut *mut c_char,
) -> TaStatus {
    let Some(trace) = trace.as_ref() else {
        return fail(TaStatus::NullArgument, "trace handle is null");
    };
    match trace.inner.values().get(index) {
        Some(value) => write_string(out, value.to_string()),
        None => fail(
            TaStatus::IndexOutOfBounds,
            format!("trace has {} entries", trace.inner.len()),
        ),
    }
}

/// # Safety
/// `trace` must come from `ta_fibonacci_trace_new` and not be used again.
#[no_mangle]
pub unsafe extern "C" fn ta_trace_free(trace: *mut TaTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

/// The 2m-2 candidate bridge numbers of a regular word as an opaque list.
///
/// # Safety
/// `input` must be a NUL-terminated string; the handle is released with
/// `ta_bridge_set_free`.
#[no_mangle]
pub unsafe extern "C" fn ta_bridge_set_new(
    input: *const c_char,
    out: *mut *mut TaBridgeSet,
) -> TaStatus {
    let word = match word_arg(input) {
        Ok(word) => word,
        Err(status) => return status,
    };
    match bridge::bridge_set_entries(&word) {
        Ok(entries) => write_handle(out, TaBridgeSet { entries }),
        Err(err) => bridge_status(err),
    }
}

/// Number of candidates in a bridge set; 0 for null.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ta_bridge_set_len(set: *const TaBridgeSet) -> usize {
    set.as_ref().map_or(0, |s| s.entries.len())
}

/// # Safety
/// `set` must be a live handle from `ta_bridge_set_new`.
#[no_mangle]
pub unsafe extern "C" fn ta_bridge_set_value(
    set: *const TaBridgeSet,
    index: usize,
    out: *mut *mut c_char,
) -> TaStatus {
    let Some(set) = set.as_ref() else {
        return fail(TaStatus::NullArgument, "bridge set handle is null");
    };
    match set.entries.get(index) {
        Some(entry) => write_string(out, entry.value.to_string()),
        None => fail(
            TaStatus::IndexOutOfBounds,
            format!("bridge set has {} entries", set.entries.len()),
        ),
    }
}

/// Seed pair (a, b) that produces the candidate at `index`.
///
/// # Safety
/// `set` must be a live handle; `a` and `b` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ta_bridge_set_seed(
    set: *const TaBridgeSet,
    index: usize,
    a: *mut u64,
    b: *mut u64,
) -> TaStatus {
    let Some(set) = set.as_ref() else {
        return fail(TaStatus::NullArgument, "bridge set handle is null");
    };
    if a.is_null() || b.is_null() {
        return fail(TaStatus::NullArgument, "out pointer is null");
    }
    match set.entries.get(index) {
        Some(entry) => {
            *a = entry.seed_a;
            *b = entry.seed_b;
            ok()
        }
        None => fail(
            TaStatus::IndexOutOfBounds,
            format!("bridge set has {} entries", set.entries.len()),
        ),
    }
}

/// # Safety
/// `set` must come from `ta_bridge_set_new` and not be used again.
#[no_mangle]
pub unsafe extern "C" fn ta_bridge_set_free(set: *mut TaBridgeSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

macro_rules! scalar_bound {
    ($(#[$doc:meta])* $name:ident, $call:expr) => {
        $(#[$doc])*
        ///
        /// # Safety
        /// `out` receives a string to be released with `ta_string_free`.
        #[no_mangle]
        pub unsafe extern "C" fn $name(argument: u64, out: *mut *mut c_char) -> TaStatus {
            #[allow(clippy::redundant_closure_call)]
            match ($call)(argument) {
                Ok(value) => write_string(out, format!("{value}")),
                Err(err) => bridge_status(err),
            }
        }
    };
}

scalar_bound!(
    /// Minimum bridge number of a knot with a tunnel of the given depth.
    ta_min_bridge,
    bridge::min_bridge
);
scalar_bound!(
    /// Minimum bridge number of a torus knot whose middle tunnel has the
    /// given depth.
    ta_torus_min_bridge,
    bridge::torus_min_bridge
);
scalar_bound!(
    /// The k-th Fibonacci number with F_1 = F_2 = 1.
    ta_fibonacci_number,
    bridge::fibonacci_number
);
scalar_bound!(
    /// Maximum bridge number over all tunnels with the given cabling count.
    ta_max_bridge_overall,
    bridge::max_bridge_overall
);

/// Maximum bridge number for n cablings with semisimple count m.
///
/// # Safety
/// `out` receives a string to be released with `ta_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ta_max_bridge(
    cabling_count: u64,
    semisimple_count: u64,
    out: *mut *mut c_char,
) -> TaStatus {
    match bridge::max_bridge(cabling_count, semisimple_count) {
        Ok(value) => write_string(out, value.to_string()),
        Err(err) => bridge_status(err),
    }
}

/// Bridge-number range [2, n+1] of simple and semisimple tunnels.
///
/// # Safety
/// Both out parameters receive strings released with `ta_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ta_semisimple_range(
    cabling_count: u64,
    out_low: *mut *mut c_char,
    out_high: *mut *mut c_char,
) -> TaStatus {
    match bridge::semisimple_range(cabling_count) {
        Ok((low, high)) => {
            let status = write_string(out_low, low.to_string());
            if status != TaStatus::Ok {
                return status;
            }
            write_string(out_high, high.to_string())
        }
        Err(err) => bridge_status(err),
    }
}

/// Exact check of the closed form for the minimum bridge numbers up to the
/// given depth.
#[no_mangle]
pub extern "C" fn ta_closed_form_check(max_depth: u64) -> bool {
    search::closed_form_check(max_depth)
}

/// Middle-tunnel invariant table of the (p, q) torus knot. Parameters are
/// normalized internally; the mirror flag is recorded on the handle and
/// negates reported slopes.
///
/// # Safety
/// `out` receives a handle released with `ta_torus_table_free`.
#[no_mangle]
pub unsafe extern "C" fn ta_torus_table_new(
    p: i64,
    q: i64,
    out: *mut *mut TaTorusTable,
) -> TaStatus {
    let params = match torus::normalize_torus_params(p, q) {
        Ok(params) => params,
        Err(err) => return torus_status(err),
    };
    match torus::invariant_table(params.p, params.q) {
        Ok(table) => write_handle(
            out,
            TaTorusTable {
                table,
                mirrored: params.mirrored,
            },
        ),
        Err(err) => torus_status(err),
    }
}

/// Whether the input parameters described the mirror image.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ta_torus_table_mirrored(table: *const TaTorusTable) -> bool {
    table.as_ref().is_some_and(|t| t.mirrored)
}

/// Depth of the middle tunnel; 0 for null.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ta_torus_table_depth(table: *const TaTorusTable) -> u64 {
    table.as_ref().map_or(0, |t| t.table.depth as u64)
}

/// Number of cablings (table rows); 0 for null.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ta_torus_table_cabling_count(table: *const TaTorusTable) -> u64 {
    table.as_ref().map_or(0, |t| t.table.cabling_count() as u64)
}

unsafe fn table_string<F>(table: *const TaTorusTable, out: *mut *mut c_char, render: F) -> TaStatus
where
    F: FnOnce(&TaTorusTable) -> String,
{
    let Some(table) = table.as_ref() else {
        return fail(TaStatus::NullArgument, "table handle is null");
    };
    write_string(out, render(table))
}

/// Binary word of the cabling sequence.
///
/// # Safety
/// `table` must be a live handle from `ta_torus_table_new`.
#[no_mangle]
pub unsafe extern "C" fn ta_torus_table_word(
    table: *const TaTorusTable,
    out: *mut *mut c_char,
) -> TaStatus {
    table_string(table, out, |t| t.table.word.to_string())
}

/// Step sequence of the cabling sequence.
///
/// # Safety
/// As for `ta_torus_table_word`.
#[no_mangle]
pub unsafe extern "C" fn ta_torus_table_steps(
    table: *const TaTorusTable,
    out: *mut *mut c_char,
) -> TaStatus {
    table_string(table, out, |t| t.table.word.to_steps().to_string())
}

/// Continued fraction of p/q, rendered like [1,2,2,2,2].
///
/// # Safety
/// As for `ta_torus_table_word`.
#[no_mangle]
pub unsafe extern "C" fn ta_torus_table_cf(
    table: *const TaTorusTable,
    out: *mut *mut c_char,
) -> TaStatus {
    table_string(table, out, |t| t.table.cf.to_string())
}

/// Intermediate torus knot produced by cabling `index`.
///
/// # Safety
/// `table` must be a live handle; both out parameters receive strings.
#[no_mangle]
pub unsafe extern "C" fn ta_torus_table_knot(
    table: *const TaTorusTable,
    index: usize,
    out_p: *mut *mut c_char,
    out_q: *mut *mut c_char,
) -> TaStatus {
    let Some(handle) = table.as_ref() else {
        return fail(TaStatus::NullArgument, "table handle is null");
    };
    let Some(row) = handle.table.rows.get(index) else {
        return fail(
            TaStatus::IndexOutOfBounds,
            format!("table has {} cablings", handle.table.rows.len()),
        );
    };
    let status = write_string(out_p, row.knot.0.to_string());
    if status != TaStatus::Ok {
        return status;
    }
    write_string(out_q, row.knot.1.to_string())
}

/// Slope invariant of cabling `index`, sign-adjusted for mirrored input:
/// "1/5" or "-1/5" for the first cabling, a signed odd integer after it.
///
/// # Safety
/// As for `ta_torus_table_knot`.
#[no_mangle]
pub unsafe extern "C" fn ta_torus_table_slope(
    table: *const TaTorusTable,
    index: usize,
    out: *mut *mut c_char,
) -> TaStatus {
    let Some(handle) = table.as_ref() else {
        return fail(TaStatus::NullArgument, "table handle is null");
    };
    let Some(row) = handle.table.rows.get(index) else {
        return fail(
            TaStatus::IndexOutOfBounds,
            format!("table has {} cablings", handle.table.rows.len()),
        );
    };
    let slope: &SlopeValue = &row.slope;
    write_string(out, slope.render(handle.mirrored))
}

/// Running product matrix of cabling `index`, rendered like [[a,b],[c,d]].
///
/// # Safety
/// As for `ta_torus_table_knot`.
#[no_mangle]
pub unsafe extern "C" fn ta_torus_table_matrix(
    table: *const TaTorusTable,
    index: usize,
    out: *mut *mut c_char,
) -> TaStatus {
    let Some(handle) = table.as_ref() else {
        return fail(TaStatus::NullArgument, "table handle is null");
    };
    match handle.table.rows.get(index) {
        Some(row) => write_string(out, row.matrix.to_string()),
        None => fail(
            TaStatus::IndexOutOfBounds,
            format!("table has {} cablings", handle.table.rows.len()),
        ),
    }
}

/// # Safety
/// `table` must come from `ta_torus_table_new` and not be used again.
#[no_mangle]
pub unsafe extern "C" fn ta_torus_table_free(table: *mut TaTorusTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Exhaustive minimum of F(2,2) over regular words of the given depth and
/// length at most `max_length`; `cap` bounds the enumeration.
///
/// # Safety
/// `out` receives a handle released with `ta_search_report_free`.
#[no_mangle]
pub unsafe extern "C" fn ta_min_bridge_search(
    max_length: usize,
    depth: u64,
    cap: usize,
    out: *mut *mut TaSearchReport,
) -> TaStatus {
    match search::min_bridge_search(max_length, depth, None, cap) {
        Ok(report) => write_handle(out, TaSearchReport { report }),
        Err(err) => search_status(err),
    }
}

/// Exhaustive maximum of F(m, m+1) over words of length n-2 with
/// semisimple count m.
///
/// # Safety
/// As for `ta_min_bridge_search`.
#[no_mangle]
pub unsafe extern "C" fn ta_max_bridge_search(
    cabling_count: u64,
    semisimple_count: u64,
    cap: usize,
    out: *mut *mut TaSearchReport,
) -> TaStatus {
    match search::max_bridge_search(cabling_count, semisimple_count, None, cap) {
        Ok(report) => write_handle(out, TaSearchReport { report }),
        Err(err) => search_status(err),
    }
}

/// Extremal value found by a search, as a decimal string.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ta_search_report_value(
    report: *const TaSearchReport,
    out: *mut *mut c_char,
) -> TaStatus {
    let Some(report) = report.as_ref() else {
        return fail(TaStatus::NullArgument, "report handle is null");
    };
    write_string(out, report.report.value.to_string())
}

/// Number of witnesses attaining the extremal value; 0 for null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ta_search_report_witness_count(report: *const TaSearchReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.witnesses.len())
}

/// One witness word attaining the extremal value.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ta_search_report_witness(
    report: *const TaSearchReport,
    index: usize,
    out: *mut *mut c_char,
) -> TaStatus {
    let Some(report) = report.as_ref() else {
        return fail(TaStatus::NullArgument, "report handle is null");
    };
    match report.report.witnesses.get(index) {
        Some(witness) => write_string(out, witness.to_string()),
        None => fail(
            TaStatus::IndexOutOfBounds,
            format!("report has {} witnesses", report.report.witnesses.len()),
        ),
    }
}

/// Total number of words the search enumerated; 0 for null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ta_search_report_words_examined(report: *const TaSearchReport) -> u64 {
    report.as_ref().map_or(0, |r| r.report.words_examined)
}

/// # Safety
/// `report` must come from a search constructor and not be used again.
#[no_mangle]
pub unsafe extern "C" fn ta_search_report_free(report: *mut TaSearchReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
