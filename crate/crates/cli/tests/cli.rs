use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn prgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = prgraph(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn read(p: &Path) -> String {
    fs::read_to_string(p).unwrap()
}

#[test]
fn explore_finite_graph_writes_three_formats() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g");
    let status = prgraph(&["explore", "--group", "Zmod:3", "--n", "2", "--radius", "99", "--out", out.to_str().unwrap()]);
    assert_eq!(status.status.code(), Some(0));

    let doc: Value = serde_json::from_str(&read(&out.join("graph.json"))).unwrap();
    let vertices = doc["graph"]["vertices"].as_array().unwrap();
    // Pairs in ℤ/3 generate unless both entries are 0: 3² − 1 of them.
    assert_eq!(vertices.len(), 3 * 3 - 1);
    assert!(vertices.iter().all(|v| v["complete"] == true));
    assert_eq!(doc["graph"]["truncated"], false);
    assert_eq!(doc["manifest"]["command"], "explore");
    assert_eq!(doc["manifest"]["outputs"].as_array().unwrap().len(), 3);

    let csv = read(&out.join("graph.csv"));
    assert!(csv.starts_with("# manifest: {"));
    assert_eq!(csv.lines().nth(1), Some("src,dst,side,sign,i,j"));
    let dot = read(&out.join("graph.dot"));
    assert!(dot.starts_with("// manifest: {"));
    assert_eq!(dot.lines().nth(1), Some("graph pr {"));
    // Every vertex has degree 8, a loop contributing both of its ends.
    let mut degree = vec![0; vertices.len()];
    for e in doc["graph"]["edges"].as_array().unwrap() {
        degree[e["src"].as_u64().unwrap() as usize] += 1;
        degree[e["dst"].as_u64().unwrap() as usize] += 1;
    }
    assert!(degree.iter().all(|&d| d == 8), "{degree:?}");
}

#[test]
fn radius_zero_is_a_single_vertex() {
    let doc = json_ok(&["explore", "--group", "Z^2", "--radius", "0"]);
    let vertices = doc["graph"]["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 1);
    assert_eq!(vertices[0]["tuple"], "1,0;0,1");
    assert_eq!(doc["graph"]["edges"].as_array().unwrap().len(), 0);
}

#[test]
fn user_errors_exit_two() {
    for args in [
        &["explore", "--group", "Z^2", "--root", "1,0;2,0"][..],
        &["explore", "--group", "Zmod:0"],
        &["explore", "--group", "Foo"],
        &["explore", "--group", "Zmod:4", "--root", "2;0"],
        &["verify", "no-such-check"],
        &["metrics", "--group", "Z", "--which", "volume"],
        &["sample", "--group", "Z", "--emit", "coord:9"],
    ] {
        let out = prgraph(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?} printed no diagnostic");
    }
}

#[test]
fn truncated_exploration_is_flagged() {
    let out = prgraph(&["explore", "--group", "Z", "--radius", "10", "--cap", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("partial"));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["graph"]["truncated"], true);
    assert_eq!(doc["graph"]["vertices"].as_array().unwrap().len(), 20);
}

#[test]
fn manifest_args_reproduce_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = out.to_str().unwrap();
    prgraph(&["--workers", "3", "sample", "--group", "D:4", "--steps", "12", "--trials", "500", "--seed", "9", "--out", o]);
    let first: Vec<String> = ["sample.json", "histogram.csv"].iter().map(|f| read(&out.join(f))).collect();
    let doc: Value = serde_json::from_str(&first[0]).unwrap();
    let args: Vec<String> = doc["manifest"]["args"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a.as_str().unwrap().to_string())
        .collect();
    assert!(!args.iter().any(|a| a.starts_with("--workers")));
    fs::remove_dir_all(&out).unwrap();
    let replay = Command::new(env!("CARGO_BIN_EXE_prgraph")).args(&args).output().unwrap();
    assert_eq!(replay.status.code(), Some(0));
    let second: Vec<String> = ["sample.json", "histogram.csv"].iter().map(|f| read(&out.join(f))).collect();
    assert_eq!(first, second);
}

/// `p⁽ᵏ⁾` at `(1;0)` in Γ₂(ℤ) by pushing the walk distribution over pairs.
fn z_pair_return_counts(k_max: usize) -> Vec<u128> {
    let mut dist: HashMap<(i64, i64), u128> = HashMap::from([((1, 0), 1)]);
    let mut counts = vec![1];
    for _ in 0..k_max {
        let mut next = HashMap::new();
        for (&(a, b), &c) in &dist {
            // In an abelian group left and right moves coincide, so each
            // neighbor appears twice.
            for t in [(a, b + a), (a, b - a), (a + b, b), (a - b, b)] {
                *next.entry(t).or_insert(0) += 2 * c;
            }
        }
        dist = next;
        counts.push(dist.get(&(1, 0)).copied().unwrap_or(0));
    }
    counts
}

#[test]
fn return_probability_csv_matches_walk_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m");
    let status = prgraph(&[
        "metrics", "--group", "Z", "--which", "return", "--kmax", "12", "--radius", "6", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    let csv = read(&out.join("return_probs.csv"));
    let oracle = z_pair_return_counts(12);
    let mut rows = csv.lines().skip(2);
    for (k, &walks) in oracle.iter().enumerate() {
        let row = rows.next().unwrap();
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f[0], k.to_string());
        let (num, den): (u128, u128) = (f[1].parse().unwrap(), f[2].parse().unwrap());
        // Cross-multiplied against walks / 8ᵏ.
        assert_eq!(num * 8u128.pow(k as u32), walks * den, "k = {k}");
    }
    assert!(rows.next().is_none());
}

#[test]
fn metrics_on_finite_graph_and_graph_file_agree() {
    let direct = json_ok(&["metrics", "--group", "Zmod:3", "--kmax", "6"]);
    let report = &direct["report"];
    assert_eq!(report["cheeger"]["unrestricted"]["value"], "0");
    assert_eq!(report["cheeger"]["half"]["value"], "2");
    let lambda2 = report["spectral_gap"]["lambda2"].as_f64().unwrap();
    // Second eigenvalue (1 + √3)/4 of the 8-vertex graph.
    assert!((lambda2 - (1.0 + 3f64.sqrt()) / 4.0).abs() < 1e-9);
    assert!(report["errors"].as_object().unwrap().is_empty());

    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g");
    prgraph(&["explore", "--group", "Zmod:3", "--radius", "4", "--cap", "200000", "--out", g.to_str().unwrap()]);
    let from_file = json_ok(&["metrics", "--graph", g.join("graph.json").to_str().unwrap(), "--kmax", "6"]);
    assert_eq!(from_file["report"], direct["report"]);
}

#[test]
fn metrics_errors_are_per_metric() {
    let empty = json_ok(&["metrics", "--group", "Z", "--which", ""]);
    for key in ["cheeger", "spectral_gap", "return_probs", "rho_estimates"] {
        assert!(empty["report"][key].is_null(), "{key}");
    }
    // Infinite graph: Cheeger and the gap fail, walks succeed.
    let partial = json_ok(&["metrics", "--group", "Z", "--radius", "2", "--kmax", "4"]);
    let errors = partial["report"]["errors"].as_object().unwrap();
    assert!(errors.contains_key("cheeger") && errors.contains_key("spectral"));
    assert!(partial["report"]["return_probs"].is_array());
    // Only infeasible metrics requested: nonzero exit.
    let out = prgraph(&["metrics", "--group", "Z", "--radius", "2", "--which", "cheeger,spectral"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok());
}

#[test]
fn verify_examples_pass() {
    let quad = json_ok(&["verify", "quadrant-tree", "--N", "100"]);
    assert_eq!(quad["passed"], true);
    assert_eq!(quad["check"], "quadrant-tree");

    let dom = json_ok(&["verify", "domination", "--G", "Z", "--H", "Zmod:5", "--kmax", "10"]);
    assert_eq!(dom["passed"], true);
    // Even k = 0, 2, …, 10.
    assert_eq!(dom["report"]["rows"].as_array().unwrap().len(), 6);

    let lip = json_ok(&["verify", "lipschitz", "--group", "Sym:3", "--n", "2", "--radius", "3"]);
    assert_eq!(lip["passed"], true);
    assert!(lip["report"]["max_distance"].as_u64().unwrap() <= 2);

    let fibers = json_ok(&["verify", "fibers", "--group", "Q8", "--root", "i;j"]);
    assert_eq!(fibers["report"]["fibers"].as_array().unwrap().len(), 4);

    for args in [
        &["verify", "local-iso", "--G", "D:4", "--H", "center"][..],
        &["verify", "center-cheeger", "--group", "D:4"],
        &["verify", "reduce", "--G", "Z", "--H", "Zmod:2", "--n", "3", "--root", "3;5;7"],
        &["verify", "embed", "--group", "Z^3", "--prefix", "1,0,0", "--basis", "0,1,0;0,0,1"],
    ] {
        assert_eq!(json_ok(args)["passed"], true, "{args:?}");
    }
}

#[test]
fn sample_is_seeded_and_worker_independent() {
    let base = ["sample", "--group", "Zmod:5", "--steps", "30", "--trials", "10000", "--seed", "17"];
    let a = prgraph(&[&["--workers", "1"][..], &base].concat());
    let b = prgraph(&[&["--workers", "4"][..], &base].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["support"], 5);
    assert!(doc["mixing"]["chi_square"]["p_value"].as_f64().unwrap() > 1e-3);

    let still = json_ok(&["sample", "--group", "Zmod:5", "--steps", "0", "--trials", "50", "--emit", "tuple"]);
    assert_eq!(still["histogram"], serde_json::json!([{ "value": "1;0", "count": 50 }]));
}

#[test]
fn export_reproduces_explore_formats() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g");
    prgraph(&["explore", "--group", "Dinf", "--n", "2", "--radius", "2", "--out", g.to_str().unwrap()]);
    let graph = g.join("graph.json");
    for (fmt, file) in [("dot", "graph.dot"), ("csv", "graph.csv")] {
        let out = prgraph(&["export", "--graph", graph.to_str().unwrap(), "--format", fmt]);
        assert_eq!(out.status.code(), Some(0));
        let exported = String::from_utf8(out.stdout).unwrap();
        let original = read(&g.join(file));
        let body = |s: &str| s.split_once('\n').unwrap().1.to_string();
        assert_eq!(body(&exported), body(&original), "{fmt}");
    }
    let target = dir.path().join("out.json");
    let out = prgraph(&["export", "--group", "Dinf", "--radius", "2", "--format", "json", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let a: Value = serde_json::from_str(&read(&target)).unwrap();
    let b: Value = serde_json::from_str(&read(&graph)).unwrap();
    assert_eq!(a["graph"], b["graph"]);
}
