use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn annulus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_annulus"))
        .args(args)
        .env_remove("ANNULUS_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn cycle_chromatic_number_is_three() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "inst.json");
    let out = annulus(&["gen", "cycle1d", "--x", "2", "-o", &inst]);
    assert_eq!(out.status.code(), Some(0));
    let out = annulus(&["exact", "chi", &inst]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["result"]["value"], 3);
    assert_eq!(report["command"], "exact chi");
    assert_eq!(report["mode"], "exact-integer(scale=1/100)");
    assert!(report["quantity"].as_str().unwrap().contains("chromatic"));
    assert_eq!(
        json(&annulus(&["exact", "omega", &inst]))["result"]["value"],
        2
    );
    assert_eq!(
        json(&annulus(&["exact", "alpha", &inst]))["result"]["value"],
        2
    );
}

#[test]
fn sweep_report_is_proper() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "box.json");
    let gen = [
        "gen", "uniform", "--d", "2", "--n", "40", "--r1", "0.5", "--r2", "1", "--side", "4",
    ];
    assert_eq!(
        annulus(&[&gen[..], &["--seed", "3", "-o", &inst]].concat())
            .status
            .code(),
        Some(0)
    );
    let out = annulus(&["color", "sweep", &inst]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["result"]["proper"], true);
    assert_eq!(report["result"]["token_invariants"]["ok"], true);
    assert_eq!(
        report["result"]["coloring"]["colors"]
            .as_array()
            .unwrap()
            .len(),
        40
    );
}

#[test]
fn ratio_exponent_beats_threshold() {
    let out = annulus(&["bounds", "ratio", "--x", "1.2", "--delta", "1e-4"]);
    assert_eq!(out.status.code(), Some(0));
    let e = json(&out)["result"]["exponent"].as_f64().unwrap();
    assert!(e > 1.003f64.ln());
}

#[test]
fn bound_subcommands() {
    let sweep = json(&annulus(&[
        "bounds", "sweep", "--d", "2", "--r1", "1", "--r2", "2",
    ]));
    let nu = sweep["result"]["nu_witness_count"].as_u64().unwrap();
    assert_eq!(sweep["result"]["sweep_bound"].as_u64().unwrap(), nu * 49);
    let vol = json(&annulus(&[
        "bounds",
        "clique-volume",
        "--d",
        "2",
        "--r1",
        "1",
        "--r2",
        "1",
    ]));
    assert_eq!(vol["result"]["bound"], 9);
    let kl = json(&annulus(&["bounds", "kl", "--phi", "1.5707963267948966"]));
    assert!(kl["result"]["kl_exponent"].as_f64().unwrap().abs() < 1e-12);
    let an = json(&annulus(&["bounds", "analysis"]));
    let max = an["result"]["max"].as_f64().unwrap();
    assert!(max > 0.996 && max < 0.997);
    let rep = json(&annulus(&[
        "bounds", "report", "--d", "3", "--r1", "1", "--r2", "1.2",
    ]));
    assert!(rep["result"]["ratio_exponent"].as_f64().is_some());
}

#[test]
fn csv_grids() {
    let out = annulus(&[
        "bounds", "kl", "--phi", "1.5", "--steps", "10", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# annulus "));
    assert_eq!(lines[1], "phi,kl_exponent");
    assert_eq!(lines.len(), 2 + 11);
    let out = annulus(&[
        "bounds", "sweep", "--d", "2", "--r1", "1", "--r2", "2", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = annulus(&["gen", "cycle1d", "--x", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical() {
    let runs: [&[&str]; 4] = [
        &[
            "gen", "sphere", "--d", "3", "--x", "1.5", "--eps", "0.5", "--seed", "7",
        ],
        &[
            "gen", "sphere", "--d", "3", "--x", "1.5", "--method", "poisson", "--lambda", "2",
            "--seed", "7",
        ],
        &[
            "probe",
            "forbidden",
            "--kind",
            "three-points",
            "--d",
            "2",
            "--count",
            "3",
            "--restarts",
            "8",
        ],
        &["verify", "--only", "bounds", "--seed", "11"],
    ];
    for args in runs {
        let (a, b) = (annulus(args), annulus(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = annulus(&[
        "gen", "uniform", "--d", "2", "--n", "5", "--r1", "0", "--r2", "1", "--side", "2",
        "--seed", "1",
    ]);
    let b = annulus(&[
        "gen", "uniform", "--d", "2", "--n", "5", "--r1", "0", "--r2", "1", "--side", "2",
        "--seed", "2",
    ]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(annulus(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(annulus(&["gen", "cycle1d"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.json");
    std::fs::write(&bad, "{\"dim\": 2, \"points\": 3}").unwrap();
    assert_eq!(annulus(&["exact", "omega", &bad]).status.code(), Some(1));
    let missing = path(dir.path(), "missing.json");
    assert_eq!(
        annulus(&["color", "sweep", &missing]).status.code(),
        Some(1)
    );
    assert_eq!(
        annulus(&["gen", "cycle1d", "--x", "0.5"]).status.code(),
        Some(1)
    );
    assert_eq!(
        annulus(&[
            "probe",
            "forbidden",
            "--kind",
            "bipartite",
            "--d",
            "1",
            "--margin",
            "0"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn budget_failures_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "big.json");
    let gen = [
        "gen", "uniform", "--d", "2", "--n", "100", "--r1", "0", "--r2", "1", "--side", "5",
    ];
    assert_eq!(
        annulus(&[&gen[..], &["-o", &inst]].concat()).status.code(),
        Some(0)
    );
    assert_eq!(annulus(&["exact", "chi", &inst]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_annulus"))
        .args(["exact", "omega", &inst])
        .env("ANNULUS_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn strict_boundaries_reject_ambiguous_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "edge.json");
    std::fs::write(
        &inst,
        r#"{"dim":1,"r1":1.0,"r2":2.0,"mode":{"kind":"float","tolerance":1e-9},"points":[[0.0],[1.0]]}"#,
    )
    .unwrap();
    let loose = annulus(&["exact", "omega", &inst]);
    assert_eq!(json(&loose)["result"]["value"], 2);
    assert_eq!(
        annulus(&["exact", "omega", &inst, "--strict-boundaries"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn embedding_probe() {
    let dir = tempfile::tempdir().unwrap();
    let graph = path(dir.path(), "c5.json");
    std::fs::write(&graph, r#"{"n":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]]}"#).unwrap();
    let out = annulus(&[
        "probe", "embed", &graph, "--d", "1", "--r1", "1", "--r2", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert!(report["result"]["residual"].as_f64().unwrap() < 1e-6);
    assert_eq!(report["result"]["verified"], true);
    let out = annulus(&["probe", "forbidden", "--kind", "bipartite", "--d", "1"]);
    let stats = json(&out)["result"]["restart_stats"]
        .as_array()
        .unwrap()
        .clone();
    assert_eq!(stats.len(), 100);
    assert!(stats.iter().all(|s| s.as_f64().unwrap() >= 0.09));
}

#[test]
fn verify_default_passes() {
    let out = annulus(&["verify"]);
    let report = json(&out);
    assert_eq!(out.status.code(), Some(0), "{report:#}");
    assert_eq!(report["failed"], 0);
    assert!(report["passed"].as_u64().unwrap() >= 20);
}

#[test]
fn verify_fault_injection_fails() {
    let out = annulus(&["verify", "--tolerance", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let report = json(&out);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"float-matches-exact"), "{failed:?}");
    assert!(failed.contains(&"boundary-margin"), "{failed:?}");
}

#[test]
fn verify_only_filters_groups() {
    let out = annulus(&["verify", "--only", "sweep"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["only"], "sweep");
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["group"] == "sweep"));
    assert_eq!(
        annulus(&["verify", "--only", "nothing"]).status.code(),
        Some(1)
    );
}

#[test]
fn lattice_and_easy_lemma_generators() {
    let out = annulus(&[
        "gen", "lattice", "--d", "2", "--x", "1.1", "--eps", "1/10", "--n", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let inst = json(&out);
    assert_eq!(inst["mode"]["kind"], "exact-integer");
    assert_eq!(inst["mode"]["scale"], "1/10");
    let out = annulus(&["gen", "easy-lemma", "--d", "4"]);
    assert_eq!(json(&out)["points"].as_array().unwrap().len(), 10);
}
