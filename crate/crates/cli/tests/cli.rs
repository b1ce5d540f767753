use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussjacobi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn pairs(text: &str, sep: char) -> Vec<(f64, f64)> {
    text.lines()
        .map(|l| {
            let (x, w) = l.split_once(sep).unwrap();
            (x.parse().unwrap(), w.parse().unwrap())
        })
        .collect()
}

fn metrics(text: &str) -> Vec<f64> {
    text.split_whitespace()
        .map(|v| v.parse().unwrap())
        .collect()
}

#[test]
fn chebyshev_text() {
    let o = run(&[
        "compute", "--n", "4", "--alpha", "-0.5", "--beta", "-0.5", "--format", "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    for line in out.lines() {
        assert_eq!(line.split_whitespace().nth(1), Some("0.7853981633974483"));
    }
    let xs: Vec<f64> = pairs(&out, ' ').iter().map(|p| p.0).collect();
    for (k, x) in xs.iter().enumerate() {
        let want = -((2 * k + 1) as f64 * std::f64::consts::PI / 8.0).cos();
        assert!((x - want).abs() <= 2.0 * f64::EPSILON, "{x} vs {want}");
    }
}

#[test]
fn single_node_json() {
    let o = run(&[
        "compute", "--n", "1", "--alpha", "0", "--beta", "2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nodes"], serde_json::json!([0.5]));
    assert_eq!(v["weights"], serde_json::json!([2.6666666666666665]));
    for key in [
        "n",
        "alpha",
        "beta",
        "method",
        "scheme",
        "stats",
        "flushed_underflow_count",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["mean_iters", "max_iters", "mean_terms", "max_terms"] {
        assert!(v["stats"].get(key).is_some(), "missing stats.{key}");
    }
    assert_eq!(v["method"], "fixedpoint");
    assert_eq!(v["n"], 1);
}

#[test]
fn gw_json_has_no_scheme_or_stats() {
    let o = run(&[
        "compute", "--n", "5", "--alpha", "1", "--beta", "2", "--method", "gw", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["scheme"].is_null() && v["stats"].is_null());
    assert_eq!(v["nodes"].as_array().unwrap().len(), 5);
}

#[test]
fn csv_round_trips_text() {
    let args = ["compute", "--n", "37", "--alpha", "-0.3", "--beta", "4.5"];
    let text = stdout(&run(&args));
    let csv = stdout(&run(&[&args[..], &["--format", "csv"]].concat()));
    let (head, body) = csv.split_once('\n').unwrap();
    assert_eq!(head, "x,w");
    // shortest round-trip decimals: parsing and printing again is the identity
    let rows = pairs(body, ',');
    assert_eq!(rows, pairs(&text, ' '));
    for (line, (x, w)) in body.lines().zip(&rows) {
        assert_eq!(line, format!("{x:?},{w:?}"));
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "compute", "--n", "200", "--alpha", "0.7", "--beta", "-0.6", "--format", "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rule.csv");
    let args = [
        "compute", "--n", "9", "--alpha", "2", "--beta", "0", "--format", "csv",
    ];
    let o = run(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&run(&args)));
}

#[test]
fn compare_examples() {
    let o = run(&["compare", "--n", "20", "--alpha", "1", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let m = metrics(&stdout(&o));
    assert_eq!(m.len(), 3);
    assert!(m.iter().all(|&e| e <= 1e-12), "{m:?}");

    let m = metrics(&stdout(&run(&[
        "compare", "--n", "4", "--alpha", "-0.5", "--beta", "-0.5",
    ])));
    assert!(m.iter().all(|&e| e <= 1e-14), "{m:?}");

    let m = metrics(&stdout(&run(&[
        "compare", "--n", "90", "--alpha", "-0.99", "--beta", "2",
    ])));
    assert!(m[2] <= 1e-11, "{m:?}");
}

#[test]
fn compare_tolerance_gates_exit() {
    let args = [
        "compare", "--n", "20", "--alpha", "1", "--beta", "1", "--tol",
    ];
    assert_eq!(
        run(&[&args[..], &["1e-10"]].concat()).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&[&args[..], &["1e-30"]].concat()).status.code(),
        Some(3)
    );
}

#[test]
fn stats_reports_iterations() {
    let o = run(&[
        "stats", "--n", "1000", "--alpha", "-0.8", "--beta", "-0.8", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mean = v["mean_iters"].as_f64().unwrap();
    assert!(mean > 1.0 && mean <= 3.5, "{mean}");
    assert!(v["mean_terms"].as_f64().unwrap() <= 120.0);

    let text = stdout(&run(&["stats", "--n", "10", "--alpha", "0", "--beta", "0"]));
    let keys: Vec<&str> = text
        .lines()
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(keys, ["mean_iters", "max_iters", "mean_terms", "max_terms"]);
}

#[test]
fn check_examples() {
    for (args, tol) in [
        (["check", "--n", "10", "--alpha", "0", "--beta", "0"], 1e-12),
        (
            ["check", "--n", "30", "--alpha", "-0.9", "--beta", "4"],
            1e-11,
        ),
        (
            ["check", "--n", "3", "--alpha", "-0.5", "--beta", "-0.5"],
            1e-14,
        ),
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let d: f64 = stdout(&o).trim().parse().unwrap();
        assert!(d <= tol, "{args:?}: {d}");
    }
}

#[test]
fn check_failure_exits_3() {
    let o = run(&[
        "check", "--n", "10", "--alpha", "0", "--beta", "0", "--tol", "0",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["compute", "--n", "4", "--alpha", "-1", "--beta", "0"][..],
        &["compute", "--n", "0", "--alpha", "0", "--beta", "0"],
        &["compute", "--n", "4", "--alpha", "0"],
        &[
            "compute", "--n", "4", "--alpha", "0", "--beta", "0", "--format", "xml",
        ],
        &["check", "--n", "41", "--alpha", "0", "--beta", "0"],
        &[
            "stats", "--n", "4", "--alpha", "0", "--beta", "0", "--method", "gw",
        ],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn help_exits_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn large_degree_runs() {
    let o = run(&[
        "compute", "--n", "100000", "--alpha", "0.3", "--beta", "1.7", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 100_001);
}
