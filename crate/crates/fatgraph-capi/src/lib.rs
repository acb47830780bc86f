//! C ABI over the fatgraph spine library.
//!
//! Conventions: spines travel as opaque `FgGraph` handles, every function
//! returns an `FgStatus` code (0 = ok), and outputs go through out
//! pointers. Strings are UTF-8; buffers are caller-allocated with the
//! usual two-call length dance. `fg_last_error` describes the most
//! recent failure on the calling thread.

use fatgraph::enumerate::{enumerate, EnumTask};
use fatgraph::graph::{Dart, Fatgraph, GraphKind};
use fatgraph::marking::initial_marking;
use fatgraph::xi::{xi, xi_punctured};
use libc::{c_char, c_int, size_t};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::ptr;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum FgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidGraph = 4,
    BadEdge = 5,
    BufferTooSmall = 6,
    Unsupported = 7,
    InternalError = 8,
}

/// Opaque spine handle.
pub struct FgGraph {
    inner: Fatgraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn err(status: FgStatus, msg: &str) -> FgStatus {
    set_error(msg);
    status
}

/// Message describing the most recent failure on this thread. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fg_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parse a spine from `fatgraph v1` text. On success stores a new handle
/// in `out`; free it with `fg_free`.
/// # Safety
/// `text` must point at a NUL-terminated string and `out` at a valid
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn fg_parse(text: *const c_char, out: *mut *mut FgGraph) -> FgStatus {
    if text.is_null() || out.is_null() {
        return err(FgStatus::NullArgument, "null argument");
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return err(FgStatus::InvalidUtf8, "input is not UTF-8");
    };
    match fatgraph::io::parse(text) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(FgGraph { inner: g }));
            FgStatus::Ok
        }
        Err(e) => err(FgStatus::ParseError, &e.to_string()),
    }
}

/// Release a handle returned by this library.
///
/// # Safety
/// `graph` must be a pointer from `fg_parse` or `fg_flip` that has not
/// been freed yet; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fg_free(graph: *mut FgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Validate a spine; on success writes genus, vertex count and edge
/// count through the out pointers (any of which may be null).
/// # Safety
/// `graph` must be a live handle from this library; out pointers must
/// be valid or null.
#[no_mangle]
pub unsafe extern "C" fn fg_validate(
    graph: *const FgGraph,
    genus: *mut size_t,
    vertices: *mut size_t,
    edges: *mut size_t,
) -> FgStatus {
    let Some(g) = graph.as_ref() else {
        return err(FgStatus::NullArgument, "null graph");
    };
    match g.inner.validate() {
        Ok(report) => {
            if !genus.is_null() {
                *genus = report.genus;
            }
            if !vertices.is_null() {
                *vertices = report.vertices;
            }
            if !edges.is_null() {
                *edges = report.edges;
            }
            FgStatus::Ok
        }
        Err(e) => err(FgStatus::InvalidGraph, &e.to_string()),
    }
}

/// 1 for bordered spines, 0 for punctured.
/// # Safety
/// `graph` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_is_bordered(graph: *const FgGraph, out: *mut c_int) -> FgStatus {
    let Some(g) = graph.as_ref() else {
        return err(FgStatus::NullArgument, "null graph");
    };
    if out.is_null() {
        return err(FgStatus::NullArgument, "null out");
    }
    *out = c_int::from(g.inner.kind() == GraphKind::Bordered);
    FgStatus::Ok
}

unsafe fn write_text(text: &str, buf: *mut c_char, cap: size_t, len: *mut size_t) -> FgStatus {
    let bytes = text.as_bytes();
    if !len.is_null() {
        *len = bytes.len() + 1;
    }
    if buf.is_null() {
        return FgStatus::Ok; // length query
    }
    if cap < bytes.len() + 1 {
        return err(FgStatus::BufferTooSmall, "buffer too small");
    }
    ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
    *buf.add(bytes.len()) = 0;
    FgStatus::Ok
}

/// Serialize a spine into `fatgraph v1` text. Call with a null `buf` to
/// query the needed length (including the terminator).
/// # Safety
/// `graph` must be a live handle; `buf` must hold `cap` bytes when not
/// null; `len` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn fg_serialize(
    graph: *const FgGraph,
    buf: *mut c_char,
    cap: size_t,
    len: *mut size_t,
) -> FgStatus {
    let Some(g) = graph.as_ref() else {
        return err(FgStatus::NullArgument, "null graph");
    };
    write_text(&g.inner.serialize(), buf, cap, len)
}

/// Canonical form: equal strings exactly when the spines are isomorphic
/// (tail-preserving for bordered spines).
/// # Safety
/// `graph` must be a live handle; `buf` must hold `cap` bytes when not
/// null; `len` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn fg_canonical(
    graph: *const FgGraph,
    buf: *mut c_char,
    cap: size_t,
    len: *mut size_t,
) -> FgStatus {
    let Some(g) = graph.as_ref() else {
        return err(FgStatus::NullArgument, "null graph");
    };
    match g.inner.canonical_form() {
        Ok(text) => write_text(&text, buf, cap, len),
        Err(e) => err(FgStatus::InvalidGraph, &e.to_string()),
    }
}

/// Flip an edge, producing a new handle.
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer slot.
#[no_mangle]
pub unsafe extern "C" fn fg_flip(
    graph: *const FgGraph,
    edge: size_t,
    out: *mut *mut FgGraph,
) -> FgStatus {
    let Some(g) = graph.as_ref() else {
        return err(FgStatus::NullArgument, "null graph");
    };
    if out.is_null() {
        return err(FgStatus::NullArgument, "null out");
    }
    match g.inner.flip(edge) {
        Ok(mv) => {
            *out = Box::into_raw(Box::new(FgGraph { inner: mv.result }));
            FgStatus::Ok
        }
        Err(e) => err(FgStatus::BadEdge, &e.to_string()),
    }
}

/// The homology-valued invariant of a bordered spine, written as `rank`
/// signed coordinates. Call with null `coords` to query the rank.
/// # Safety
/// `graph` must be a live handle; `coords` must hold `cap` values when
/// not null; `rank` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn fg_xi(
    graph: *const FgGraph,
    coords: *mut i64,
    cap: size_t,
    rank: *mut size_t,
) -> FgStatus {
    let Some(g) = graph.as_ref() else {
        return err(FgStatus::NullArgument, "null graph");
    };
    if g.inner.kind() != GraphKind::Bordered {
        return err(
            FgStatus::Unsupported,
            "invariant coordinates need a bordered spine",
        );
    }
    if let Err(e) = g.inner.validate() {
        return err(FgStatus::InvalidGraph, &e.to_string());
    }
    let value = (|| -> Result<Vec<i64>, fatgraph::GraphError> {
        let bo = g.inner.boundary_order()?;
        let m = initial_marking(&g.inner, &bo)?;
        Ok(xi(&g.inner, &bo, &m)?.xi.0)
    })();
    match value {
        Ok(v) => {
            if !rank.is_null() {
                *rank = v.len();
            }
            if coords.is_null() {
                return FgStatus::Ok;
            }
            if cap < v.len() {
                return err(FgStatus::BufferTooSmall, "coordinate buffer too small");
            }
            ptr::copy_nonoverlapping(v.as_ptr(), coords, v.len());
            FgStatus::Ok
        }
        Err(e) => err(FgStatus::InternalError, &e.to_string()),
    }
}

/// The punctured invariant's pairing vector against the canonical cycle
/// basis.
/// # Safety
/// `graph` must be a live handle; `pairings` must hold `cap` values
/// when not null; `rank` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn fg_xi_punctured(
    graph: *const FgGraph,
    pairings: *mut i64,
    cap: size_t,
    rank: *mut size_t,
) -> FgStatus {
    let Some(g) = graph.as_ref() else {
        return err(FgStatus::NullArgument, "null graph");
    };
    if g.inner.kind() != GraphKind::Punctured {
        return err(
            FgStatus::Unsupported,
            "pairing vector needs a punctured spine",
        );
    }
    if let Err(e) = g.inner.validate() {
        return err(FgStatus::InvalidGraph, &e.to_string());
    }
    match xi_punctured(&g.inner) {
        Ok(x) => {
            if !rank.is_null() {
                *rank = x.pairings.len();
            }
            if pairings.is_null() {
                return FgStatus::Ok;
            }
            if cap < x.pairings.len() {
                return err(FgStatus::BufferTooSmall, "pairing buffer too small");
            }
            ptr::copy_nonoverlapping(x.pairings.as_ptr(), pairings, x.pairings.len());
            FgStatus::Ok
        }
        Err(e) => err(FgStatus::InternalError, &e.to_string()),
    }
}

/// Number of isomorphism classes at the given genus (1..=3).
/// `bordered` selects the spine kind.
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_count_classes(
    genus: size_t,
    bordered: c_int,
    out: *mut size_t,
) -> FgStatus {
    if out.is_null() {
        return err(FgStatus::NullArgument, "null out");
    }
    let kind = if bordered != 0 {
        GraphKind::Bordered
    } else {
        GraphKind::Punctured
    };
    match enumerate(EnumTask {
        genus,
        kind,
        limit: None,
    }) {
        Ok(classes) => {
            *out = classes.len();
            FgStatus::Ok
        }
        Err(e) => err(FgStatus::Unsupported, &e.to_string()),
    }
}

/// Head vertex of a dart, for callers walking the structure.
/// # Safety
/// `graph` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fg_dart_head(
    graph: *const FgGraph,
    dart: size_t,
    out: *mut size_t,
) -> FgStatus {
    let Some(g) = graph.as_ref() else {
        return err(FgStatus::NullArgument, "null graph");
    };
    if out.is_null() {
        return err(FgStatus::NullArgument, "null out");
    }
    if dart >= g.inner.num_darts() {
        return err(FgStatus::BadEdge, "dart out of range");
    }
    *out = g.inner.head(Dart(dart));
    FgStatus::Ok
}
