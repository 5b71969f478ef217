//! C ABI over the stcut library: opaque handles, integer status codes, and
//! a thread-local last-error message. Vertices are 0-based here, matching
//! the library (the text format and CLI are 1-based).
//!
//! Every `*_free` accepts null. Pointers returned through out-parameters are
//! owned by the caller and must be released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use stcut::error::Error;
use stcut::exact::brute_force_min_st_cut;
use stcut::format::parse_graph;
use stcut::pipeline::{st_min_cut, PipelineConfig, PipelineResult};
use stcut::{ListOracle, WeightedGraph};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ParameterError = 4,
    SolveError = 5,
    InternalError = 6,
}

/// Opaque graph handle.
pub struct StcGraph {
    graph: WeightedGraph,
}

/// Opaque solve-result handle.
pub struct StcResult {
    result: PipelineResult,
    shore: Vec<u32>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn status_of(err: &Error) -> StcStatus {
    match err {
        Error::Parse { .. } => StcStatus::ParseError,
        Error::Parameter(_)
        | Error::SelfLoop(_)
        | Error::VertexOutOfRange(_, _)
        | Error::SourceIsSink
        | Error::TrivialShore
        | Error::OracleBound { .. } => StcStatus::ParameterError,
        Error::RetriesExhausted(_) | Error::SparsifierResample(_) => StcStatus::SolveError,
        _ => StcStatus::InternalError,
    }
}

fn fail(err: &Error) -> StcStatus {
    set_error(&err.to_string());
    status_of(err)
}

/// Message for the most recent error on this thread; empty string if none.
/// Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn stc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses the text graph format into a new graph handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stc_graph_parse(
    text: *const c_char,
    out: *mut *mut StcGraph,
) -> StcStatus {
    if text.is_null() || out.is_null() {
        set_error("null argument");
        return StcStatus::NullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let text = match unsafe { CStr::from_ptr(text) }.to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("graph text is not valid UTF-8");
            return StcStatus::InvalidUtf8;
        }
    };
    match parse_graph(text) {
        Ok(file) => {
            let handle = Box::new(StcGraph { graph: file.graph });
            unsafe { *out = Box::into_raw(handle) };
            StcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// # Safety
/// `g` must be null or a pointer from `stc_graph_parse`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stc_graph_free(g: *mut StcGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// # Safety
/// `g` must be a valid graph handle.
#[no_mangle]
pub unsafe extern "C" fn stc_graph_n(g: *const StcGraph) -> usize {
    unsafe { &*g }.graph.n()
}

/// # Safety
/// `g` must be a valid graph handle.
#[no_mangle]
pub unsafe extern "C" fn stc_graph_m(g: *const StcGraph) -> usize {
    unsafe { &*g }.graph.m()
}

/// # Safety
/// `g` must be a valid graph handle.
#[no_mangle]
pub unsafe extern "C" fn stc_graph_max_weight(g: *const StcGraph) -> u64 {
    unsafe { &*g }.graph.max_weight()
}

/// Exhaustive minimum s-t cut value (small n only).
///
/// # Safety
/// `g` must be a valid graph handle and `out_lambda` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stc_exact_min_cut(
    g: *const StcGraph,
    s: u32,
    t: u32,
    out_lambda: *mut u64,
) -> StcStatus {
    if g.is_null() || out_lambda.is_null() {
        set_error("null argument");
        return StcStatus::NullArgument;
    }
    match brute_force_min_st_cut(&unsafe { &*g }.graph, s, t) {
        Ok(cert) => {
            unsafe { *out_lambda = cert.value };
            StcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Runs the full pipeline over an adjacency-list oracle on the graph.
/// `eps` <= 0 selects the default rule min((nW)^{-1/3}, 1/4).
///
/// # Safety
/// `g` must be a valid graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stc_solve(
    g: *const StcGraph,
    s: u32,
    t: u32,
    seed: u64,
    eps: f64,
    out: *mut *mut StcResult,
) -> StcStatus {
    if g.is_null() || out.is_null() {
        set_error("null argument");
        return StcStatus::NullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let oracle = ListOracle::new(unsafe { &*g }.graph.clone());
    let config = PipelineConfig {
        seed,
        eps_override: (eps > 0.0).then_some(eps),
        ..PipelineConfig::default()
    };
    match st_min_cut(&oracle, s, t, &config) {
        Ok(result) => {
            let shore = result.shore.vertices();
            let handle = Box::new(StcResult { result, shore });
            unsafe { *out = Box::into_raw(handle) };
            StcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// # Safety
/// `r` must be null or a pointer from `stc_solve`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stc_result_free(r: *mut StcResult) {
    if !r.is_null() {
        drop(unsafe { Box::from_raw(r) });
    }
}

/// # Safety
/// `r` must be a valid result handle.
#[no_mangle]
pub unsafe extern "C" fn stc_result_lambda(r: *const StcResult) -> u64 {
    unsafe { &*r }.result.lambda
}

/// Number of vertices in the shore containing s.
///
/// # Safety
/// `r` must be a valid result handle.
#[no_mangle]
pub unsafe extern "C" fn stc_result_shore_len(r: *const StcResult) -> usize {
    unsafe { &*r }.shore.len()
}

/// Copies up to `cap` shore vertices (ascending, 0-based) into `buf`;
/// returns the number copied.
///
/// # Safety
/// `r` must be a valid result handle and `buf` writable for `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn stc_result_shore(
    r: *const StcResult,
    buf: *mut u32,
    cap: usize,
) -> usize {
    let shore = &unsafe { &*r }.shore;
    let k = shore.len().min(cap);
    if k > 0 && !buf.is_null() {
        unsafe { ptr::copy_nonoverlapping(shore.as_ptr(), buf, k) };
    }
    k
}

/// Total modeled quantum queries charged during the solve.
///
/// # Safety
/// `r` must be a valid result handle.
#[no_mangle]
pub unsafe extern "C" fn stc_result_modeled_queries(r: *const StcResult) -> u64 {
    unsafe { &*r }.result.ledger.modeled_total()
}
