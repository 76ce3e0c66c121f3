use std::ffi::{CStr, CString};
use std::ptr;

use graphprint_ffi::*;

fn parse(text: &str) -> *mut GpGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gp_graph_parse(c.as_ptr(), GpFormat::Graph6, &mut g) }, GpStatus::Ok);
    g
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { gp_string_free(s) };
    out
}

fn cycle(n: usize) -> *mut GpGraph {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(gp_graph_new(n, &mut g), GpStatus::Ok);
        for i in 0..n {
            assert_eq!(gp_graph_add_edge(g, i, (i + 1) % n), GpStatus::Ok);
        }
    }
    g
}

#[test]
fn graphs_and_fingerprints() {
    let c6 = cycle(6);
    let tt = parse("EwCW");
    unsafe {
        assert_eq!(gp_graph_node_count(c6), 6);
        assert_eq!(gp_graph_edge_count(tt), 6);
        let mut same = true;
        assert_eq!(gp_w_equivalent(c6, tt, &mut same), GpStatus::Ok);
        assert!(!same);
        assert_eq!(gp_equivalent(c6, tt, GpFamily::S, 1, &mut same), GpStatus::Ok);
        assert!(!same);
        let mut line = ptr::null_mut();
        assert_eq!(gp_fingerprint(c6, GpFamily::S, 2, GpMode::Hashed, false, &mut line), GpStatus::Ok);
        let line = take(line);
        assert!(line.starts_with("s 2 full hashed h1 "), "{line}");
        assert_eq!(line.split(' ').count(), 6);
        gp_graph_free(c6);
        gp_graph_free(tt);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let bad = CString::new("not a graph\u{7f}").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(gp_graph_parse(bad.as_ptr(), GpFormat::Graph6, &mut g), GpStatus::Parse);
        assert!(g.is_null());
        let msg = CStr::from_ptr(gp_last_error()).to_str().unwrap();
        assert!(msg.contains("byte"), "{msg}");

        let c = cycle(3);
        assert_eq!(gp_graph_add_edge(c, 0, 7), GpStatus::NodeOutOfRange);
        assert_eq!(gp_graph_add_edge(c, 0, 1), GpStatus::Ok);
        assert!(gp_last_error().is_null());
        let mut line = ptr::null_mut();
        assert_eq!(gp_fingerprint(c, GpFamily::S, 4, GpMode::Hashed, false, &mut line), GpStatus::InvalidArgument);
        assert_eq!(gp_fingerprint(ptr::null(), GpFamily::S, 1, GpMode::Hashed, false, &mut line), GpStatus::NullPointer);
        assert_eq!(gp_fingerprint(c, GpFamily::S, 1, GpMode::Hashed, false, ptr::null_mut()), GpStatus::NullPointer);
        gp_graph_free(c);
        gp_graph_free(ptr::null_mut());
        gp_string_free(ptr::null_mut());
        assert_eq!(gp_graph_node_count(ptr::null()), 0);
    }
}

#[test]
fn index_lookup() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("store.tsv");
    let c6 = cycle(6);
    let mut line = ptr::null_mut();
    unsafe {
        assert_eq!(gp_fingerprint(c6, GpFamily::S, 2, GpMode::Hashed, true, &mut line), GpStatus::Ok);
    }
    let line = take(line);
    let (method, rest) = line.split_at(line.find(" h1 ").unwrap() + 3);
    let mut fields = rest.split_whitespace();
    let (digest, wide) = (fields.next().unwrap(), fields.next().unwrap());
    std::fs::write(
        &path,
        format!("#graphprint-index\t1\th1\n{method}\t{digest}\t{wide}\tc6\tmanual\n"),
    )
    .unwrap();
    let cpath = CString::new(path.to_str().unwrap()).unwrap();
    let mut idx = ptr::null_mut();
    unsafe {
        assert_eq!(gp_index_open(cpath.as_ptr(), &mut idx), GpStatus::Ok);
        assert_eq!(gp_index_len(idx), 1);
        let q = CString::new(line.clone()).unwrap();
        let mut ids = ptr::null_mut();
        assert_eq!(gp_index_query(idx, q.as_ptr(), &mut ids), GpStatus::Ok);
        assert_eq!(take(ids), "c6");
        let junk = CString::new("s 2").unwrap();
        assert_eq!(gp_index_query(idx, junk.as_ptr(), &mut ids), GpStatus::InvalidArgument);
        gp_index_free(idx);
        let missing = CString::new(dir.path().join("none").to_str().unwrap()).unwrap();
        assert_eq!(gp_index_open(missing.as_ptr(), &mut idx), GpStatus::Io);
        gp_graph_free(c6);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/graphprint.h")).unwrap();
    for name in [
        "GRAPHPRINT_H",
        "typedef struct GpGraph GpGraph",
        "typedef struct GpIndex GpIndex",
        "GP_STATUS_OK = 0",
        "gp_graph_parse",
        "gp_fingerprint",
        "gp_index_query",
        "gp_string_free",
        "gp_last_error",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
