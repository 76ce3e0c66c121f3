//! C ABI over `graphprint`.
//!
//! Every fallible call returns a [`GpStatus`] and writes its result through
//! an out pointer. On failure [`gp_last_error`] describes the problem until
//! the next call on the same thread. Strings handed out by the library must
//! be released with [`gp_string_free`], graphs with [`gp_graph_free`] and
//! indexes with [`gp_index_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graphprint::index::IndexStore;
use graphprint::slabel::{equivalent, fingerprint, Family, Fingerprint, Method, Mode};
use graphprint::walk::w_equivalent;
use graphprint::{parse_graph, Error, Format, Graph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Unsupported = 5,
    NodeOutOfRange = 6,
    BoundExceeded = 7,
    Store = 8,
    Io = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpFormat {
    Graph6 = 0,
    Sparse6 = 1,
    Edgelist = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpFamily {
    S = 0,
    T = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpMode {
    Exact = 0,
    Hashed = 1,
}

/// Opaque graph handle.
pub struct GpGraph {
    graph: Graph,
}

/// Opaque read-only view of an index store.
pub struct GpIndex {
    store: IndexStore,
}

impl From<GpFormat> for Format {
    fn from(f: GpFormat) -> Self {
        match f {
            GpFormat::Graph6 => Format::Graph6,
            GpFormat::Sparse6 => Format::Sparse6,
            GpFormat::Edgelist => Format::Edgelist,
        }
    }
}

impl From<GpFamily> for Family {
    fn from(f: GpFamily) -> Self {
        match f {
            GpFamily::S => Family::S,
            GpFamily::T => Family::T,
        }
    }
}

impl From<GpMode> for Mode {
    fn from(m: GpMode) -> Self {
        match m {
            GpMode::Exact => Mode::Exact,
            GpMode::Hashed => Mode::Hashed,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(GpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => GpStatus::Parse,
            Error::Unsupported(_) => GpStatus::Unsupported,
            Error::InvalidArgument(_) => GpStatus::InvalidArgument,
            Error::NodeOutOfRange { .. } => GpStatus::NodeOutOfRange,
            Error::BoundExceeded(_) => GpStatus::BoundExceeded,
            Error::Store { .. } => GpStatus::Store,
            Error::Io(_) => GpStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(GpStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any error or panic for [`gp_last_error`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GpStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            GpStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GpStatus::Utf8, format!("{what} is not valid UTF-8")))
}

unsafe fn graph_arg<'a>(g: *const GpGraph, what: &str) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.graph).ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn gp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates an edgeless graph on `n` nodes.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn gp_graph_new(n: usize, out: *mut *mut GpGraph) -> GpStatus {
    guard(|| write_out(out, Box::into_raw(Box::new(GpGraph { graph: Graph::empty(n) }))))
}

/// Parses one graph from a nul-terminated string.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be valid for a
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn gp_graph_parse(text: *const c_char, format: GpFormat, out: *mut *mut GpGraph) -> GpStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let graph = parse_graph(text.trim_end().as_bytes(), format.into())?;
        write_out(out, Box::into_raw(Box::new(GpGraph { graph })))
    })
}

/// Adds the edge `{i, j}` (a loop if `i == j`). Adding an existing edge is
/// not an error.
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gp_graph_add_edge(g: *mut GpGraph, i: usize, j: usize) -> GpStatus {
    guard(|| {
        let g = g.as_mut().ok_or_else(|| null("graph"))?;
        g.graph.add_edge(i, j)?;
        Ok(())
    })
}

/// Node count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gp_graph_node_count(g: *const GpGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.n())
}

/// Edge count including loops, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gp_graph_edge_count(g: *const GpGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.edge_count())
}

/// Releases a graph. NULL is ignored.
///
/// # Safety
/// `g` must be NULL or a live graph handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gp_graph_free(g: *mut GpGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Fingerprint line `family k iters mode hashver digest [wide]` with the
/// full iteration budget. Free the result with [`gp_string_free`].
///
/// # Safety
/// `g` must be a live graph handle; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn gp_fingerprint(
    g: *const GpGraph,
    family: GpFamily,
    k: usize,
    mode: GpMode,
    wide: bool,
    out: *mut *mut c_char,
) -> GpStatus {
    guard(|| {
        let g = graph_arg(g, "graph")?;
        let fp = fingerprint(g, &Method::new(family.into(), k, mode.into()), wide)?;
        write_out(out, into_c_string(fp.to_line()))
    })
}

/// Exact `s^k` / `t^k` equivalence.
///
/// # Safety
/// `g1`, `g2` must be live graph handles; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn gp_equivalent(
    g1: *const GpGraph,
    g2: *const GpGraph,
    family: GpFamily,
    k: usize,
    out: *mut bool,
) -> GpStatus {
    guard(|| {
        let (a, b) = (graph_arg(g1, "g1")?, graph_arg(g2, "g2")?);
        let same = equivalent(a, b, family.into(), k)?;
        write_out(out, same)
    })
}

/// Walk-label equivalence.
///
/// # Safety
/// `g1`, `g2` must be live graph handles; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn gp_w_equivalent(g1: *const GpGraph, g2: *const GpGraph, out: *mut bool) -> GpStatus {
    guard(|| {
        let (a, b) = (graph_arg(g1, "g1")?, graph_arg(g2, "g2")?);
        write_out(out, w_equivalent(a, b))
    })
}

/// Opens an existing index store read-only.
///
/// # Safety
/// `path` must be a nul-terminated string; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn gp_index_open(path: *const c_char, out: *mut *mut GpIndex) -> GpStatus {
    guard(|| {
        let store = IndexStore::open(str_arg(path, "path")?)?;
        write_out(out, Box::into_raw(Box::new(GpIndex { store })))
    })
}

/// Number of records, or 0 for NULL.
///
/// # Safety
/// `idx` must be NULL or a live index handle.
#[no_mangle]
pub unsafe extern "C" fn gp_index_len(idx: *const GpIndex) -> usize {
    idx.as_ref().map_or(0, |h| h.store.len())
}

/// Candidate ids for a fingerprint line, newline-separated (empty string
/// if none). Free the result with [`gp_string_free`].
///
/// # Safety
/// `idx` must be a live index handle; `line` a nul-terminated string;
/// `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn gp_index_query(idx: *const GpIndex, line: *const c_char, out: *mut *mut c_char) -> GpStatus {
    guard(|| {
        let idx = idx.as_ref().ok_or_else(|| null("index"))?;
        let fp: Fingerprint = str_arg(line, "line")?.parse()?;
        write_out(out, into_c_string(idx.store.query(&fp).join("\n")))
    })
}

/// Releases an index handle. NULL is ignored.
///
/// # Safety
/// `idx` must be NULL or a live index handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gp_index_free(idx: *mut GpIndex) {
    if !idx.is_null() {
        drop(Box::from_raw(idx));
    }
}
