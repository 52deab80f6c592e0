//! C interface to `score-core`.
//!
//! Graphs are opaque `ScoreGraph` handles created by one of the constructors
//! and released with [`score_graph_free`]. Every fallible call returns a
//! [`ScoreStatus`]; on failure a description is available from
//! [`score_last_error_message`] on the same thread. Labels cross the boundary
//! as 1-based `size_t` arrays owned by the caller.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use score_core::dcbm::{simulate, DegreeScale, Experiment};
use score_core::diagnostics::{error_rate, gap_statistic, LabelVector};
use score_core::spectral::{regularized_laplacian, top_eigenpairs, SymMatrix};
use score_core::{parse_edge_list, parse_gml, run_pipeline, Error, Graph, PipelineConfig};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    Disconnected = 5,
    NumericalFailure = 6,
    BufferTooSmall = 7,
    Unlabeled = 8,
    Panic = 9,
}

/// Opaque graph handle.
pub struct ScoreGraph {
    inner: Graph,
}

/// Pipeline settings; start from [`score_config_score`] or
/// [`score_config_score_plus`] and adjust fields.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreConfig {
    pub k: usize,
    pub pre_pca: bool,
    pub delta: f64,
    pub weight_by_eigenvalue: bool,
    pub extra_vector: bool,
    pub t: f64,
    pub threshold_ratios: bool,
    pub post_pca: bool,
    pub kmeans_restarts: usize,
    pub seed: u64,
}

/// Summary of one detection run.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ScoreDetection {
    /// Eigenvectors used: K or K + 1.
    pub m_used: usize,
    /// `1 - lambda_{K+1} / lambda_K`.
    pub gap: f64,
    pub lambda_k: f64,
    pub lambda_k_plus_1: f64,
    pub kmeans_objective: f64,
    pub nonempty_clusters: usize,
}

impl From<&PipelineConfig> for ScoreConfig {
    fn from(c: &PipelineConfig) -> Self {
        ScoreConfig {
            k: c.k,
            pre_pca: c.pre_pca,
            delta: c.delta,
            weight_by_eigenvalue: c.weight_by_eigenvalue,
            extra_vector: c.extra_vector,
            t: c.t,
            threshold_ratios: c.threshold_ratios,
            post_pca: c.post_pca,
            kmeans_restarts: c.kmeans_restarts,
            seed: c.seed,
        }
    }
}

impl From<&ScoreConfig> for PipelineConfig {
    fn from(c: &ScoreConfig) -> Self {
        PipelineConfig {
            k: c.k,
            pre_pca: c.pre_pca,
            delta: c.delta,
            weight_by_eigenvalue: c.weight_by_eigenvalue,
            extra_vector: c.extra_vector,
            t: c.t,
            threshold_ratios: c.threshold_ratios,
            post_pca: c.post_pca,
            kmeans_restarts: c.kmeans_restarts,
            seed: c.seed,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> ScoreStatus {
    match err {
        Error::Parse { .. } | Error::UnknownNode(_) | Error::MissingLabel(_) => ScoreStatus::ParseError,
        Error::Disconnected { .. } | Error::IsolatedNode { .. } => ScoreStatus::Disconnected,
        Error::NoConvergence { .. }
        | Error::ZeroEigenvalue { .. }
        | Error::VanishingLeadingEntry { .. } => ScoreStatus::NumericalFailure,
        Error::Unlabeled => ScoreStatus::Unlabeled,
        _ => ScoreStatus::InvalidArgument,
    }
}

/// Run `f`, recording any error or panic for [`score_last_error_message`].
fn guard(f: impl FnOnce() -> Result<(), (ScoreStatus, String)>) -> ScoreStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ScoreStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ScoreStatus::Panic
        }
    }
}

fn core(err: Error) -> (ScoreStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (ScoreStatus, String) {
    (ScoreStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (ScoreStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (ScoreStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn emit(out: *mut *mut ScoreGraph, g: Graph) {
    *out = Box::into_raw(Box::new(ScoreGraph { inner: g }));
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn score_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parse an edge list, with optional `node<TAB>label` text (may be NULL).
///
/// # Safety
/// `edges` and, when non-null, `labels` must be NUL-terminated strings;
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn score_graph_from_edge_list(
    edges: *const c_char,
    labels: *const c_char,
    out: *mut *mut ScoreGraph,
) -> ScoreStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(edges, "edges")?;
        let labels = if labels.is_null() { None } else { Some(read_str(labels, "labels")?) };
        let parsed = parse_edge_list(text, labels).map_err(core)?;
        emit(out, parsed.graph);
        Ok(())
    })
}

/// Parse a GML document.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn score_graph_from_gml(
    text: *const c_char,
    out: *mut *mut ScoreGraph,
) -> ScoreStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let parsed = parse_gml(read_str(text, "text")?).map_err(core)?;
        emit(out, parsed.graph);
        Ok(())
    })
}

/// Release a handle. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn score_graph_free(g: *mut ScoreGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Node count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn score_graph_node_count(g: *const ScoreGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.node_count())
}

/// Edge count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn score_graph_edge_count(g: *const ScoreGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// Number of ground-truth classes; 0 when unlabeled or NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn score_graph_class_count(g: *const ScoreGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.class_count())
}

/// Copy the 1-based ground-truth labels into `out[0..len]`.
///
/// # Safety
/// `g` must be a live handle and `out` must hold `len` writable elements.
#[no_mangle]
pub unsafe extern "C" fn score_graph_truth_labels(
    g: *const ScoreGraph,
    out: *mut usize,
    len: usize,
) -> ScoreStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        let labels = g.inner.labels().ok_or_else(|| core(Error::Unlabeled))?;
        write_labels(labels, out, len)
    })
}

unsafe fn write_labels(labels: &[usize], out: *mut usize, len: usize) -> Result<(), (ScoreStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    if len < labels.len() {
        return Err((
            ScoreStatus::BufferTooSmall,
            format!("need room for {} labels, got {len}", labels.len()),
        ));
    }
    slice::from_raw_parts_mut(out, labels.len()).copy_from_slice(labels);
    Ok(())
}

/// New handle holding the largest connected component of `g`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn score_graph_largest_component(
    g: *const ScoreGraph,
    out: *mut *mut ScoreGraph,
) -> ScoreStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        emit(out, g.inner.largest_connected_component().map_err(core)?);
        Ok(())
    })
}

/// Orthodox SCORE defaults for `k` communities.
#[no_mangle]
pub extern "C" fn score_config_score(k: usize) -> ScoreConfig {
    (&PipelineConfig::score(k)).into()
}

/// SCORE+ defaults for `k` communities: `(t, delta) = (0.1, 0.1)`, 100 restarts.
#[no_mangle]
pub extern "C" fn score_config_score_plus(k: usize) -> ScoreConfig {
    (&PipelineConfig::score_plus(k)).into()
}

/// Run the pipeline. Labels (1-based) go to `labels[0..len]`; `summary` may
/// be NULL.
///
/// # Safety
/// `g` and `config` must be valid; `labels` must hold `len` elements.
#[no_mangle]
pub unsafe extern "C" fn score_detect(
    g: *const ScoreGraph,
    config: *const ScoreConfig,
    labels: *mut usize,
    len: usize,
    summary: *mut ScoreDetection,
) -> ScoreStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        let cfg = PipelineConfig::from(config.as_ref().ok_or_else(|| null("config"))?);
        if labels.is_null() {
            return Err(null("labels"));
        }
        if len < g.inner.node_count() {
            return Err((
                ScoreStatus::BufferTooSmall,
                format!("need room for {} labels, got {len}", g.inner.node_count()),
            ));
        }
        let r = run_pipeline(&g.inner, &cfg).map_err(core)?;
        write_labels(&r.labels, labels, len)?;
        if let Some(s) = summary.as_mut() {
            *s = ScoreDetection {
                m_used: r.m_used,
                gap: r.gap,
                lambda_k: r.eigenvalues[cfg.k - 1],
                lambda_k_plus_1: r.eigenvalues[cfg.k],
                kmeans_objective: r.kmeans_objective,
                nonempty_clusters: r.nonempty_clusters,
            };
        }
        Ok(())
    })
}

/// Minimum over relabelings of the estimate of the number of misclustered
/// nodes. Both arrays hold `n` labels starting at 1.
///
/// # Safety
/// `est` and `truth` must each hold `n` readable elements.
#[no_mangle]
pub unsafe extern "C" fn score_error_rate(
    est: *const usize,
    truth: *const usize,
    n: usize,
    count: *mut usize,
    rate: *mut f64,
) -> ScoreStatus {
    guard(|| {
        if est.is_null() || truth.is_null() {
            return Err(null("labels"));
        }
        let e = LabelVector::new(slice::from_raw_parts(est, n).to_vec()).map_err(core)?;
        let t = LabelVector::new(slice::from_raw_parts(truth, n).to_vec()).map_err(core)?;
        let r = error_rate(&e, &t).map_err(core)?;
        if let Some(c) = count.as_mut() {
            *c = r.count;
        }
        if let Some(x) = rate.as_mut() {
            *x = r.rate;
        }
        Ok(())
    })
}

/// `1 - lambda_{K+1} / lambda_K` of the adjacency matrix, or of `L_delta`
/// when `laplacian` is set.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn score_gap_statistic(
    g: *const ScoreGraph,
    laplacian: bool,
    delta: f64,
    k: usize,
    out: *mut f64,
) -> ScoreStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let m = if laplacian {
            regularized_laplacian(&g.inner, delta).map_err(core)?
        } else {
            SymMatrix::adjacency(&g.inner)
        };
        let basis = top_eigenpairs(&m, k + 1).map_err(core)?;
        *out = gap_statistic(&basis, k).map_err(core)?;
        Ok(())
    })
}

/// Sample one replicate of simulation experiment 1 or 2.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn score_simulate(
    experiment: u8,
    n: usize,
    seed: u64,
    literal_scale: bool,
    out: *mut *mut ScoreGraph,
) -> ScoreStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let e = match experiment {
            1 => Experiment::One,
            2 => Experiment::Two,
            x => return Err((ScoreStatus::InvalidArgument, format!("unknown experiment {x}"))),
        };
        let scale = if literal_scale { DegreeScale::Literal } else { DegreeScale::Calibrated };
        emit(out, simulate(e.p_matrix(), n, scale, seed).map_err(core)?.graph);
        Ok(())
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn score_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
