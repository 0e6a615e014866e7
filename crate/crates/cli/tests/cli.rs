use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn schurlab(args: &[&str], cache: &Path) -> Output {
    schurlab_env(args, &[("SCHURLAB_CACHE", cache.to_str().unwrap())])
}

fn schurlab_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_schurlab"));
    cmd.args(args).env_remove("SCHURLAB_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn ok_json(args: &[&str], cache: &Path) -> Value {
    let out = schurlab(args, cache);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    check_schema(&v);
    v
}

fn ok_csv(args: &[&str], cache: &Path) -> Vec<Vec<String>> {
    let mut all = args.to_vec();
    all.extend(["--format", "csv"]);
    let out = schurlab(&all, cache);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    csv::Reader::from_reader(out.stdout.as_slice())
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect()
}

fn schema_for(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("schemas/{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn check_schema(v: &Value) {
    let name = v["schema"]
        .as_str()
        .unwrap()
        .trim_start_matches("schurlab.");
    let validator = jsonschema::validator_for(&schema_for(name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(
        errors.is_empty(),
        "{name} output does not match its schema: {errors:?}"
    );
}

fn error_of(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    check_schema(&v);
    v
}

#[test]
fn dist_delta_example() {
    let c = TempDir::new().unwrap();
    let v = ok_json(&["dist", "--k", "3", "--d", "3"], c.path());
    assert_eq!(v["result"]["delta"]["exact"], "11/27");
    let rows = ok_csv(&["dist", "--k", "3", "--d", "3"], c.path());
    assert_eq!(rows.len(), 3);
    assert!(rows
        .iter()
        .all(|r| r[7] == "11/27" && r[8] == "0.407407407407"));
}

#[test]
fn dist_single_row() {
    let c = TempDir::new().unwrap();
    let rows = ok_csv(&["dist", "--k", "1"], c.path());
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "(1)");
    assert_eq!(rows[0][1], "1/1");
    assert_eq!(rows[0][2], "1.00000000000");
}

#[test]
fn dist_compare_both_rows() {
    let c = TempDir::new().unwrap();
    let rows = ok_csv(
        &["dist", "--k", "2", "--d", "5", "--compare", "both"],
        c.path(),
    );
    let labels: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(labels, ["(2)", "(1,1)"]);
    // Schur(2,5) = (d+1)/2d, (d-1)/2d
    assert_eq!(rows[0][3], "3/5");
    assert_eq!(rows[1][3], "2/5");
    assert_eq!(rows[0][7], "1/5");
}

#[test]
fn dist_csv_header_is_stable() {
    let c = TempDir::new().unwrap();
    let out = schurlab(&["dist", "--k", "2", "--format", "csv"], c.path());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "partition,planch,planch_decimal,schur,schur_decimal,abs_diff,abs_diff_decimal,delta,delta_decimal"
    );
}

#[test]
fn dist_bounds_and_sweep() {
    let c = TempDir::new().unwrap();
    let v = ok_json(
        &[
            "dist", "--k", "4", "--d", "6", "--bounds", "--d2", "3", "--r", "2",
        ],
        c.path(),
    );
    let names: Vec<&str> = v["result"]["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "delta_lower",
            "delta_upper_squared",
            "bhattacharyya_lower",
            "monotonicity"
        ]
    );
    assert_eq!(v["result"]["all_bounds_hold"], true);

    let v = ok_json(
        &["dist", "--sweep", "--k-max", "4", "--d-max", "5"],
        c.path(),
    );
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    // Δ_{2,d} = 1/d
    for r in rows
        .iter()
        .filter(|r| r["k"] == 2 && r["d"].as_u64().unwrap() >= 2)
    {
        assert_eq!(r["delta"]["exact"], format!("1/{}", r["d"]));
    }
}

#[test]
fn hsp_fourier_examples() {
    let c = TempDir::new().unwrap();
    let v = ok_json(
        &[
            "hsp",
            "--group",
            "sym:3",
            "--subgroup",
            "gen:(12)",
            "--mode",
            "fourier",
        ],
        c.path(),
    );
    let probs: Vec<(&str, &str)> = v["result"]["fourier"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["label"].as_str().unwrap(),
                r["probability"]["exact"].as_str().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        probs,
        [("(3)", "1/3"), ("(2,1)", "2/3"), ("(1,1,1)", "0/1")]
    );
    assert_eq!(v["result"]["subgroup"]["order"], 2);

    let rows = ok_csv(
        &["hsp", "--group", "sym:3", "--subgroup", "trivial"],
        c.path(),
    );
    let exact: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(exact, ["1/6", "2/3", "1/6"]);
}

#[test]
fn hsp_joint_multiplicity_free_is_plancherel() {
    let c = TempDir::new().unwrap();
    let v = ok_json(
        &[
            "hsp",
            "--group",
            "dihedral:3",
            "--subgroup",
            "trivial",
            "--k",
            "2",
            "--mode",
            "joint",
        ],
        c.path(),
    );
    let joint = &v["result"]["joint"];
    assert!(joint["multiplicity_free_max_deviation"].as_f64().unwrap() < 1e-9);
    let mut seen = 0;
    for t in joint["types"].as_array().unwrap() {
        let idx: Vec<u64> = t["indices"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .collect();
        if idx[0] != idx[1] {
            seen += 1;
            for p in t["conditional"].as_array().unwrap() {
                assert!((p.as_f64().unwrap() - 0.5).abs() < 1e-9);
            }
        }
    }
    assert_eq!(seen, 3);
    assert!((joint["total"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn hsp_schur_matches_formula() {
    let c = TempDir::new().unwrap();
    let v = ok_json(
        &[
            "hsp",
            "--group",
            "dihedral:3",
            "--subgroup",
            "reflection:1",
            "--k",
            "2",
            "--mode",
            "schur",
        ],
        c.path(),
    );
    assert!(v["result"]["schur"]["max_abs_diff"].as_f64().unwrap() < 1e-9);
    assert_eq!(
        v["result"]["subgroup"]["elements"]
            .as_array()
            .unwrap()
            .len(),
        2
    );
}

#[test]
fn collision_examples() {
    let c = TempDir::new().unwrap();
    let v = ok_json(
        &["collision", "advantage", "--d", "4", "--r", "2", "--k", "2"],
        c.path(),
    );
    assert_eq!(v["result"]["success"]["exact"], "9/16");
    let v = ok_json(&["collision", "plan", "--d", "512", "--r", "8"], c.path());
    assert_eq!(v["result"]["plan"]["total_queries"], 168);
    assert_eq!(v["result"]["unknown_input_grover_iters"], 5);
}

#[test]
fn montecarlo_fixture() {
    let c = TempDir::new().unwrap();
    let args = [
        "collision",
        "montecarlo",
        "--d",
        "64",
        "--r",
        "4",
        "--trials",
        "10000",
        "--seed",
        "42",
    ];
    let v = ok_json(&args, c.path());
    let reports = v["result"]["reports"].as_array().unwrap();
    assert_eq!(reports[0]["case"], "one_to_one");
    assert_eq!(reports[0]["success_rate"], 0.0);
    assert_eq!(reports[1]["case"], "r_to_one");
    assert_eq!(reports[1]["success_rate"], 0.7565592745647122);
    assert_eq!(v["manifest"]["seed"], 42);

    let one = schurlab_env(&args, &[("SCHURLAB_CACHE", ""), ("SCHURLAB_THREADS", "1")]);
    let three = schurlab_env(&args, &[("SCHURLAB_CACHE", ""), ("SCHURLAB_THREADS", "3")]);
    assert!(one.status.success() && three.status.success());
    assert_eq!(one.stdout, three.stdout);
}

#[test]
fn swaptest_examples() {
    let c = TempDir::new().unwrap();
    let v = ok_json(
        &[
            "swaptest", "--m", "3", "--dim", "2", "--trials", "50", "--seed", "7",
        ],
        c.path(),
    );
    let r = &v["result"];
    assert_eq!(r["rows"].as_array().unwrap().len(), 50);
    assert!(r["min_fidelity"].as_f64().unwrap() >= 0.5);
    assert_eq!(r["bound"], 0.5);
    assert_eq!(r["all_pass"], true);
    assert_eq!(r["vacuous"], false);

    let v = ok_json(
        &["swaptest", "--m", "1", "--trials", "10", "--seed", "1"],
        c.path(),
    );
    assert_eq!(v["result"]["bound"], -1.0);
    assert_eq!(v["result"]["vacuous"], true);
    assert_eq!(v["result"]["all_pass"], true);
}

#[test]
fn exit_codes() {
    let c = TempDir::new().unwrap();
    let cases: &[(&[&str], i32, &str)] = &[
        (&["dist", "--k", "99"], 3, "cap_exceeded"),
        (&["dist", "--k", "3", "--nope"], 2, "invalid_argument"),
        (&["dist", "--k", "0"], 2, "invalid_argument"),
        (
            &["dist", "--k", "3", "--format", "both"],
            2,
            "invalid_argument",
        ),
        (
            &["dist", "--k", "3", "--compare", "schur"],
            2,
            "invalid_argument",
        ),
        (&["hsp", "--group", "sym:9"], 3, "cap_exceeded"),
        (&["hsp", "--group", "torus:3"], 2, "invalid_argument"),
        (
            &["hsp", "--group", "sym:3", "--subgroup", "gen:(45)"],
            2,
            "invalid_argument",
        ),
        (
            &["hsp", "--group", "cyclic:12", "--k", "4", "--mode", "joint"],
            3,
            "cap_exceeded",
        ),
        (
            &["collision", "plan", "--d", "10", "--r", "3"],
            2,
            "invalid_argument",
        ),
        (
            &[
                "collision",
                "advantage",
                "--d",
                "10",
                "--r",
                "3",
                "--k",
                "2",
            ],
            2,
            "invalid_argument",
        ),
        (&["swaptest", "--m", "9"], 3, "cap_exceeded"),
        (
            &["swaptest", "--m", "2", "--max-branches", "500"],
            3,
            "cap_exceeded",
        ),
    ];
    for (args, code, kind) in cases {
        let out = schurlab(args, c.path());
        assert_eq!(out.status.code(), Some(*code), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        let e = error_of(&out);
        assert_eq!(e["error"]["kind"], *kind, "{args:?}");
        assert_eq!(e["error"]["exit_code"], *code, "{args:?}");
    }
    let out = schurlab_env(&["dist", "--k", "2"], &[("SCHURLAB_THREADS", "zero")]);
    assert_eq!(out.status.code(), Some(2));
    let out = schurlab(&["--help"], c.path());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn cache_does_not_change_output() {
    let c = TempDir::new().unwrap();
    let runs: &[&[&str]] = &[
        &["dist", "--k", "5", "--d", "4", "--bounds"],
        &[
            "hsp",
            "--group",
            "wreath_s2:3",
            "--subgroup",
            "gen:0,1",
            "--k",
            "2",
        ],
        &[
            "hsp",
            "--group",
            "sym:3",
            "--subgroup",
            "gen:(123)",
            "--k",
            "2",
            "--mode",
            "joint",
        ],
    ];
    for args in runs {
        let cold = schurlab(args, c.path());
        let warm = schurlab(args, c.path());
        let none = schurlab_env(args, &[("SCHURLAB_CACHE", "")]);
        assert!(cold.status.success(), "{args:?}");
        assert_eq!(cold.stdout, warm.stdout, "{args:?}");
        assert_eq!(cold.stdout, none.stdout, "{args:?}");
    }
    let files: Vec<_> = std::fs::read_dir(c.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert!(!files.is_empty());

    // a corrupted entry is recomputed
    for f in &files {
        std::fs::write(c.path().join(f), b"{\"format\":1,\"value\":{}}").unwrap();
    }
    for args in runs {
        let corrupt = schurlab(args, c.path());
        let none = schurlab_env(args, &[("SCHURLAB_CACHE", "")]);
        assert_eq!(corrupt.stdout, none.stdout, "{args:?}");
    }
}

#[test]
fn out_dir_files_and_manifest() {
    let c = TempDir::new().unwrap();
    let out = TempDir::new().unwrap();
    let dir = out.path().to_str().unwrap();
    let status = schurlab(
        &[
            "dist", "--k", "3", "--d", "3", "--out", dir, "--format", "both",
        ],
        c.path(),
    );
    assert!(status.status.success());
    let json: Value =
        serde_json::from_slice(&std::fs::read(out.path().join("dist.json")).unwrap()).unwrap();
    check_schema(&json);
    assert_eq!(
        json["manifest"]["outputs"],
        serde_json::json!(["dist.json", "dist.csv"])
    );
    assert!(json["manifest"].get("timestamp").is_none());
    let csv = std::fs::read_to_string(out.path().join("dist.csv")).unwrap();
    assert!(csv.contains("11/27"));

    let status = schurlab(
        &[
            "swaptest", "--m", "2", "--trials", "3", "--out", dir, "--format", "csv", "--stamp",
        ],
        c.path(),
    );
    assert!(status.status.success());
    let m: Value =
        serde_json::from_slice(&std::fs::read(out.path().join("swaptest.manifest.json")).unwrap())
            .unwrap();
    let validator = jsonschema::validator_for(&schema_for("manifest")).unwrap();
    assert!(validator.is_valid(&m));
    assert_eq!(m["seed"], 0);
    assert!(m["timestamp"].as_u64().unwrap() > 0);

    let mut names: Vec<String> = std::fs::read_dir(out.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "dist.csv",
            "dist.json",
            "swaptest.csv",
            "swaptest.manifest.json"
        ]
    );
}

#[test]
fn reruns_are_byte_identical() {
    let c = TempDir::new().unwrap();
    let runs: &[&[&str]] = &[
        &["dist", "--k", "6", "--d", "3", "--bounds"],
        &[
            "hsp",
            "--group",
            "dihedral:4",
            "--subgroup",
            "reflection:1",
            "--k",
            "3",
            "--mode",
            "joint",
        ],
        &[
            "collision",
            "advantage",
            "--d",
            "12",
            "--r",
            "3",
            "--k",
            "4",
        ],
        &[
            "collision",
            "montecarlo",
            "--d",
            "48",
            "--r",
            "3",
            "--trials",
            "500",
            "--seed",
            "3",
        ],
        &["swaptest", "--m", "4", "--trials", "20", "--seed", "11"],
    ];
    for args in runs {
        let a = schurlab(args, c.path());
        let b = schurlab(args, c.path());
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
