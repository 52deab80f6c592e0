use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use score_core::manifest::RunManifest;

fn score(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_score")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("score-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn manifest(path: &Path) -> RunManifest {
    RunManifest::parse(&fs::read_to_string(path).unwrap()).unwrap()
}

fn simulate(dir: &Path, seed: &str) -> String {
    let prefix = dir.join("sim").to_string_lossy().into_owned();
    let out = score(&["simulate", "--n", "400", "--experiment", "2", "--seed", seed, "--out", &prefix]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    prefix
}

#[test]
fn detect_on_simulated_graph_records_rate_and_reproduces() {
    let dir = scratch("detect");
    let sim = simulate(&dir, "4");
    let edges = format!("{sim}.edges");
    let labels = format!("{sim}.labels");
    let out_path = dir.join("est").to_string_lossy().into_owned();
    let args = [
        "detect", edges.as_str(), "--labels", &labels, "--largest-component",
        "--method", "score+", "--seed", "3", "--restarts", "20", "--out", &out_path,
    ];
    let out = score(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("errors="));

    let first = manifest(Path::new(&format!("{out_path}.manifest")));
    let rate: f64 = first.get("error_rate").unwrap().parse().unwrap();
    assert!((0.0..=1.0).contains(&rate));
    assert_eq!(first.get("k"), Some("4"));
    assert_eq!(first.get("graph_sha256").map(str::len), Some(64));

    // rerunning the recorded command gives the same result summary
    let recorded: Vec<String> = first.get("command").unwrap().split(' ').skip(1).map(String::from).collect();
    let recorded: Vec<&str> = recorded.iter().map(String::as_str).collect();
    assert!(score(&recorded).status.success());
    let second = manifest(Path::new(&format!("{out_path}.manifest")));
    for key in ["errors", "error_rate", "m_used", "gap", "kmeans_objective", "graph_sha256"] {
        assert_eq!(first.get(key), second.get(key), "{key}");
    }
    let assigned = fs::read_to_string(&out_path).unwrap();
    assert_eq!(assigned.lines().count(), first.get("n").unwrap().parse::<usize>().unwrap());
    fs::remove_dir_all(dir).ok();
}

#[test]
fn simulate_is_seeded() {
    let (a, b) = (scratch("seed-a"), scratch("seed-b"));
    let (pa, pb) = (simulate(&a, "9"), simulate(&b, "9"));
    assert_eq!(
        fs::read(format!("{pa}.edges")).unwrap(),
        fs::read(format!("{pb}.edges")).unwrap()
    );
    let m = manifest(Path::new(&format!("{pa}.manifest")));
    assert!(m.get("p").unwrap().contains("0.6666666666666666"));
    fs::remove_dir_all(a).ok();
    fs::remove_dir_all(b).ok();
}

#[test]
fn disconnected_graph_suggests_largest_component() {
    let dir = scratch("split");
    let g = dir.join("split.edges");
    fs::write(&g, "1 2\n2 3\n3 1\n4 5\n5 6\n6 4\n").unwrap();
    let out = score(&["detect", g.to_str().unwrap(), "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--largest-component"));
    fs::remove_dir_all(dir).ok();
}

#[test]
fn bad_inputs_fail_cleanly() {
    let dir = scratch("bad");
    let prefix = dir.join("x").to_string_lossy().into_owned();
    let out = score(&["simulate", "--n", "0", "--experiment", "1", "--out", &prefix]);
    assert_eq!(out.status.code(), Some(2));

    let p = dir.join("p.txt");
    fs::write(&p, "1 0.5\n0.5 oops\n").unwrap();
    let out = score(&["simulate", "--n", "50", "--p-matrix", p.to_str().unwrap(), "--out", &prefix]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
    fs::remove_dir_all(dir).ok();
}

#[test]
fn report_emits_plot_data() {
    let dir = scratch("report");
    let sim = simulate(&dir, "2");
    let tsv = dir.join("scree.tsv");
    let edges = format!("{sim}.edges");
    let labels = format!("{sim}.labels");
    let out = score(&[
        "report", &edges, "--labels", &labels, "--largest-component", "--depth", "6",
        "--out", tsv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&tsv).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "matrix\tindex\teigenvalue\tabs_eigenvalue\trayleigh_quotient");
    assert_eq!(rows.len(), 1 + 2 * 6);
    fs::remove_dir_all(dir).ok();
}

#[test]
fn bench_without_data_reports_missing_and_fails() {
    let dir = scratch("bench");
    let empty = dir.join("empty");
    fs::create_dir_all(&empty).unwrap();
    let out_dir = dir.join("tables");
    let out = score(&[
        "bench", "--suite", "realdata", "--data-dir", empty.to_str().unwrap(),
        "--out", out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let table = fs::read_to_string(out_dir.join("realdata.tsv")).unwrap();
    assert!(table.starts_with("# suite=realdata"));
    assert_eq!(table.matches("# missing dataset:").count(), 8);
    fs::remove_dir_all(dir).ok();
}
