use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use score_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = score_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn two_triangles() -> *mut ScoreGraph {
    let edges = cstr("1 2\n2 3\n3 1\n4 5\n5 6\n6 4\n3 4\n");
    let labels = cstr("1\ta\n2\ta\n3\ta\n4\tb\n5\tb\n6\tb\n");
    let mut g = ptr::null_mut();
    let st = unsafe { score_graph_from_edge_list(edges.as_ptr(), labels.as_ptr(), &mut g) };
    assert_eq!(st, ScoreStatus::Ok);
    g
}

#[test]
fn detect_round_trip() {
    let g = two_triangles();
    unsafe {
        assert_eq!(score_graph_node_count(g), 6);
        assert_eq!(score_graph_edge_count(g), 7);
        assert_eq!(score_graph_class_count(g), 2);

        let mut truth = [0usize; 6];
        assert_eq!(score_graph_truth_labels(g, truth.as_mut_ptr(), 6), ScoreStatus::Ok);
        assert_eq!(truth, [1, 1, 1, 2, 2, 2]);

        let cfg = score_config_score(2);
        let mut labels = [0usize; 6];
        let mut summary = ScoreDetection::default();
        let st = score_detect(g, &cfg, labels.as_mut_ptr(), 6, &mut summary);
        assert_eq!(st, ScoreStatus::Ok, "{}", last_error());
        assert_eq!(summary.m_used, 2);
        assert!((summary.gap - (1.0 - summary.lambda_k_plus_1 / summary.lambda_k)).abs() < 1e-12);

        let (mut count, mut rate) = (usize::MAX, -1.0);
        let st = score_error_rate(labels.as_ptr(), truth.as_ptr(), 6, &mut count, &mut rate);
        assert_eq!(st, ScoreStatus::Ok);
        assert_eq!(count, 0);
        assert_eq!(rate, 0.0);

        let mut gap = 0.0;
        assert_eq!(score_gap_statistic(g, false, 0.1, 2, &mut gap), ScoreStatus::Ok);
        assert!((gap - summary.gap).abs() < 1e-12);
        score_graph_free(g);
    }
}

#[test]
fn score_plus_defaults() {
    let c = score_config_score_plus(3);
    assert_eq!(c.k, 3);
    assert!(c.pre_pca && c.weight_by_eigenvalue && c.extra_vector && c.post_pca);
    assert!(!c.threshold_ratios);
    assert_eq!((c.delta, c.t, c.kmeans_restarts), (0.1, 0.1, 100));
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = cstr("1 2\nthree\n");
        assert_eq!(score_graph_from_edge_list(bad.as_ptr(), ptr::null(), &mut g), ScoreStatus::ParseError);
        assert!(g.is_null());
        assert!(last_error().contains("line 2"), "{}", last_error());

        assert_eq!(
            score_graph_from_edge_list(ptr::null(), ptr::null(), &mut g),
            ScoreStatus::NullPointer
        );

        let split = cstr("1 2\n2 3\n3 1\n4 5\n5 6\n6 4\n");
        assert_eq!(score_graph_from_edge_list(split.as_ptr(), ptr::null(), &mut g), ScoreStatus::Ok);
        let cfg = score_config_score(2);
        let mut labels = [0usize; 6];
        let st = score_detect(g, &cfg, labels.as_mut_ptr(), 6, ptr::null_mut());
        assert_eq!(st, ScoreStatus::Disconnected);
        assert_eq!(score_detect(g, &cfg, labels.as_mut_ptr(), 5, ptr::null_mut()), ScoreStatus::BufferTooSmall);
        let mut truth = [0usize; 6];
        assert_eq!(score_graph_truth_labels(g, truth.as_mut_ptr(), 6), ScoreStatus::Unlabeled);

        let mut lcc = ptr::null_mut();
        assert_eq!(score_graph_largest_component(g, &mut lcc), ScoreStatus::Ok);
        assert_eq!(score_graph_node_count(lcc), 3);
        score_graph_free(lcc);
        score_graph_free(g);
        score_graph_free(ptr::null_mut());
        assert_eq!(score_graph_node_count(ptr::null()), 0);
    }
}

#[test]
fn successful_call_clears_error() {
    unsafe {
        let mut g = ptr::null_mut();
        score_graph_from_edge_list(ptr::null(), ptr::null(), &mut g);
        assert!(!score_last_error_message().is_null());
        let g = two_triangles();
        assert!(score_last_error_message().is_null());
        score_graph_free(g);
    }
}

#[test]
fn gml_and_simulation() {
    unsafe {
        let text = cstr("graph [ node [ id 0 value 0 ] node [ id 1 value 1 ] edge [ source 0 target 1 ] ]");
        let mut g = ptr::null_mut();
        assert_eq!(score_graph_from_gml(text.as_ptr(), &mut g), ScoreStatus::Ok);
        assert_eq!(score_graph_node_count(g), 2);
        assert_eq!(score_graph_class_count(g), 2);
        score_graph_free(g);

        let mut s = ptr::null_mut();
        assert_eq!(score_simulate(2, 200, 3, false, &mut s), ScoreStatus::Ok);
        assert_eq!(score_graph_node_count(s), 200);
        assert_eq!(score_graph_class_count(s), 4);
        score_graph_free(s);
        assert_eq!(score_simulate(3, 200, 3, false, &mut s), ScoreStatus::InvalidArgument);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(score_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/score_ffi.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in [
        "score_graph_from_edge_list",
        "score_graph_from_gml",
        "score_graph_free",
        "score_detect",
        "score_error_rate",
        "score_gap_statistic",
        "score_simulate",
        "score_last_error_message",
        "typedef struct ScoreGraph ScoreGraph;",
        "SCORE_STATUS_OK = 0",
    ] {
        assert!(text.contains(f), "header lacks {f}");
    }
    // the header must compile as plain C when a compiler is around
    if let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"]).arg(&header).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
