use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oa-jgeom")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn certify_binary_strength_two() {
    let out = run(&["certify", "--n", "2", "--k", "3", "--s", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("dim=1, T={}, span U_3"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn certify_passes_on_acceptance_parameters() {
    let sets = [
        ["3", "2", "1", "1"],
        ["2", "3", "2", "1"],
        ["3", "3", "1", "1"],
        ["3", "4", "2", "1"],
        ["4", "4", "2", "1"],
        ["2", "3", "3", "1"],
        ["3", "2", "2", "1"],
        ["2", "4", "4", "1"],
        ["2", "4", "3", "1"],
        ["2", "5", "2", "2"],
    ];
    for [n, k, s, l] in sets {
        let out = run(&["certify", "--n", n, "--k", k, "--s", s, "--lambda", l, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "({n},{k},{s},{l}): {}", stderr(&out));
        let cert = json(&out);
        assert_eq!(cert["complete"], true);
    }
}

#[test]
fn dims_large_case() {
    let out = run(&["dims", "--n", "10", "--k", "6", "--s", "2", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["dimensions"], serde_json::json!([998730, 467289]));
}

#[test]
fn dims_forced_mode_is_checked() {
    let out = run(&["dims", "--n", "3", "--k", "4", "--s", "2", "--mode", "n2-even-s"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_names_first_violated_margin() {
    let out = run(&["verify", &data("not_oa.txt"), "--s", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("columns {0,1} at symbols (0,0)"), "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["strength"], false);
    assert_eq!(report["first_violation"]["columns"], serde_json::json!([0, 1]));
}

#[test]
fn verify_accepts_latin_square() {
    for file in ["oa_2_3_2.txt", "oa_counts.json"] {
        let out = run(&["verify", &data(file), "--s", "2"]);
        assert_eq!(out.status.code(), Some(0), "{file}: {}", stderr(&out));
        let report = json(&out);
        assert_eq!(report["strength"], true);
        assert_eq!(report["congruence"]["violations"], serde_json::json!([]));
    }
}

#[test]
fn transform_latin_square() {
    let out = run(&["transform", &data("oa_2_3_2.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let top = doc["j"]["blocks"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(top["u"], serde_json::json!([0, 1, 2]));
    assert_eq!(top["values_on_u"][0], 4);
    assert_eq!(top["values_on_u"][7], -4);
    assert_eq!(doc["signed"]["entries"][0], 4);
    // array file and frequency file describe the same array
    let other = run(&["transform", &data("oa_counts.json")]);
    assert_eq!(out.stdout, other.stdout);
}

#[test]
fn enumerate_is_deterministic_across_workers_and_seeds() {
    let base = run(&["enumerate", "--n", "3", "--k", "3", "--s", "1"]);
    assert_eq!(base.status.code(), Some(0));
    assert_eq!(stdout(&base).lines().count(), 36);
    for extra in [&["--workers", "4"][..], &["--seed", "9"], &["--seed", "9", "--workers", "3"]] {
        let mut args = vec!["enumerate", "--n", "3", "--k", "3", "--s", "1"];
        args.extend_from_slice(extra);
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(out.stdout, base.stdout, "{extra:?}");
    }
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = run(&["enumerate", "--n", "3", "--k", "3", "--s", "1", "--budget-nodes", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["certify", "--n", "3", "--k", "3", "--s", "1", "--budget-nodes", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["enumerate", "--n", "3", "--k", "6", "--s", "1"]);
    assert_eq!(out.status.code(), Some(3), "size limit counts as exhaustion");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["dims", "--n", "2", "--k", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["dims", "--n", "2", "--k", "3", "--s", "4"]).status.code(), Some(2));
    assert_eq!(run(&["emit", "--n", "2", "--k", "2", "--s", "1", "--format", "mps"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent/array.txt", "--s", "1"]).status.code(), Some(2));
}

#[test]
fn emit_formats() {
    let lp = run(&["emit", "--n", "2", "--k", "2", "--s", "1"]);
    assert_eq!(lp.status.code(), Some(0));
    let text = stdout(&lp);
    assert!(text.contains("constraints\n") && text.contains(" m0_0: +1 x_0 +1 x_1 = 1\n") && text.ends_with("end\n"));

    let js = run(&["emit", "--n", "2", "--k", "3", "--s", "2", "--system", "j", "--T", "0", "--format", "json"]);
    assert_eq!(js.status.code(), Some(0));
    let doc = json(&js);
    // J rows for orders 0, 1, 2, then the 8 forced order-3 rows
    let rows = doc["constraints"].as_array().unwrap();
    assert_eq!(rows.len(), 1 + 6 + 12 + 8);
    assert!(rows.last().unwrap()["name"].as_str().unwrap().starts_with("j012_"));
}

#[test]
fn constraints_family_rows() {
    let out = run(&["constraints", "--n", "2", "--k", "3", "--s", "2", "--T", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["forced_block_sizes"], serde_json::json!([3]));
    assert_eq!(doc["rows"].as_array().unwrap().len(), 8);
    let empty = run(&["constraints", "--n", "2", "--k", "3", "--s", "2"]);
    assert_eq!(json(&empty)["rows"], serde_json::json!([]));
}

#[test]
fn orbit_tables() {
    let out = run(&["orbits", "--n", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["group_order"], 72);
    assert_eq!(doc["pair_orbits"], 3);
    assert_eq!(doc["burnside"][1]["orbits"], 3);

    let od = run(&["orbits", "--n", "2", "--k", "4", "--group", "od", "--max-power", "3"]);
    let doc = json(&od);
    assert_eq!(doc["group_order"], 1920);
    assert_eq!(doc["burnside"][1]["orbits"], 3);

    assert_eq!(run(&["orbits", "--n", "3", "--k", "2", "--group", "od"]).status.code(), Some(2));

    let custom = run(&["orbits", "--n", "2", "--k", "2", "--generators", &data("cyclic_swap.json")]);
    assert_eq!(custom.status.code(), Some(0), "{}", stderr(&custom));
    assert_eq!(json(&custom)["group_order"], 2);
}

#[test]
fn out_flag_writes_file_with_same_bytes() {
    let path = std::env::temp_dir().join(format!("oa-jgeom-dims-{}.json", std::process::id()));
    let to_file = run(&["dims", "--n", "3", "--k", "4", "--s", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    let direct = run(&["dims", "--n", "3", "--k", "4", "--s", "2"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_file(path).unwrap();
}
