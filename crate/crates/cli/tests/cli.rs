use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn gindex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gindex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = gindex(args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    gindex(args).status.code().expect("exit code")
}

#[test]
fn expand_text_rows() {
    assert_eq!(stdout(&["expand", "--n", "1"]), "(c) f1\n");
    assert_eq!(
        stdout(&["expand", "--n", "4", "--format", "text"]),
        "(c c1^3 + 4 c^2 c1 c2 + c^3 c3) f1 + (7 c^2 c1^2 + 4 c^3 c2) f2 + (6 c^3 c1) f3 + (c^4) f4\n"
    );
}

/// Published LaTeX rows, compared with whitespace and braces removed.
#[test]
fn expand_latex_matches_published_rows() {
    let rows = [
        r"(cD)f&=(c)  {\mathbf{f}}_1,\\",
        r"(cD)^2f&=(c c_1 )  {\mathbf{f}}_1 +(c^2 )  {\mathbf{f}}_2,\\",
        r"(cD)^3f&=(c c_1^2  +c^2 c_2 )  {\mathbf{f}}_1 +(3c^2 c_1 )  {\mathbf{f}}_2 +(c^3 )  {\mathbf{f}}_3,\\",
        r"(cD)^4f&=(c c_1^3  +4c^2 c_1 c_2  +c^3 c_3 )  {\mathbf{f}}_1 +(7c^2 c_1^2  +4c^3 c_2 )  {\mathbf{f}}_2 +(6c^3 c_1 )  {\mathbf{f}}_3 +(c^4 )  {\mathbf{f}}_4,\\",
    ];
    let squash = |s: &str| s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}').collect::<String>();
    for (i, row) in rows.iter().enumerate() {
        let n = (i + 1).to_string();
        let got = stdout(&["expand", "--n", &n, "--format", "latex"]);
        assert_eq!(squash(&got), squash(row), "n = {n}");
    }
}

#[test]
fn expand_types_json() {
    let v: Value = serde_json::from_str(&stdout(&["expand", "--n", "3", "--grouping", "type", "--format", "json"])).unwrap();
    let types = v["types"].as_array().unwrap();
    let ps: Vec<i64> = types.iter().map(|t| t["p"].as_i64().unwrap()).collect();
    assert_eq!(ps, [1, 3, 1, 1]);
    assert_eq!(types[1]["k"], 2);
    assert_eq!(types[1]["mu"], serde_json::json!([1, 0]));
}

#[test]
fn expand_json_slices() {
    let v: Value = serde_json::from_str(&stdout(&["expand", "--n", "2", "--format", "json"])).unwrap();
    assert_eq!(v, serde_json::json!({ "n": 2, "slices": { "1": [[1, { "0": 1, "1": 1 }]], "2": [[1, { "0": 2 }]] } }));
}

#[test]
fn json_outputs_round_trip() {
    let commands: [&[&str]; 9] = [
        &["expand", "--n", "5", "--format", "json"],
        &["expand", "--n", "4", "--grouping", "type", "--format", "json"],
        &["expand", "--n", "4", "--grouping", "tableau", "--format", "json"],
        &["family", "--id", "second-order", "--k", "3", "--n", "6", "--format", "json"],
        &["tableaux", "--n", "4", "--g-index", "--fibers", "--format", "json"],
        &["pkmu", "--k", "3", "--mu", "2,1,1", "--method", "all", "--format", "json"],
        &["oracle", "--name", "simsun", "--n", "5", "--format", "json"],
        &["grammar", "--rules", "x -> x*y; y -> x", "--target", "x", "--n", "4", "--format", "json"],
        &["verify", "--suite", "table1", "--format", "json"],
    ];
    for args in commands {
        let first = stdout(args);
        let parsed: Value = serde_json::from_str(&first).unwrap();
        let mut again = serde_json::to_string_pretty(&parsed).unwrap();
        again.push('\n');
        assert_eq!(again, first, "{args:?}");
        assert_eq!(stdout(args), first, "{args:?} is not deterministic");
    }
}

#[test]
fn pkmu_and_family_values() {
    assert_eq!(stdout(&["pkmu", "--k", "3", "--mu", "2,1,1", "--n", "7"]), "896\n");
    assert_eq!(stdout(&["pkmu", "--k", "3", "--mu", "2,1,1,0,0,0", "--method", "tableau"]), "896\n");
    assert_eq!(stdout(&["family", "--id", "andre", "--n", "3"]), "x + 4x^2\n");
    assert_eq!(stdout(&["family", "--id", "eulerian", "--n", "3", "--format", "bfile"]), "1 1\n2 1\n3 1\n4 1\n5 4\n6 1\n");
}

#[test]
fn tableaux_g_index_style() {
    let out = stdout(&["tableaux", "--n", "7", "--shape-k", "2", "--shape-mu", "3,2", "--g-index"]);
    assert!(out.contains("g = (1,1,1,2,1,1,2)  G = 1*1*1*2*1*1*2 = 4\n"));
    let total = out.lines().last().unwrap().rsplit(' ').next().unwrap().to_string();
    let p = stdout(&["pkmu", "--k", "2", "--mu", "3,2", "--method", "all"]);
    assert_eq!(p, format!("recurrence {total}\ntableau {total}\nenumeration {total}\n"));
}

#[test]
fn tableaux_sum_to_factorial() {
    let out = stdout(&["tableaux", "--n", "5", "--g-index"]);
    assert!(out.ends_with("26 tableaux, sum of G = 120\n"), "{out}");
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "--suite", "pkmu", "--nmax", "9"][..],
        &["verify", "--suite", "thm1.1", "--nmax", "5", "--kmax", "3"],
        &["verify", "--suite", "syt-families", "--nmax", "8"],
        &["verify", "--suite", "all", "--nmax", "6"],
    ] {
        let out = stdout(args);
        assert!(!out.contains("FAIL"), "{out}");
    }
}

#[test]
fn oracle_outputs() {
    assert_eq!(stdout(&["oracle", "--name", "des", "--n", "4"]), "x + 11x^2 + 11x^3 + x^4\n");
    assert_eq!(stdout(&["oracle", "--name", "alternating", "--n", "6", "--format", "bfile"]), "6 61\n");
    assert_eq!(stdout(&["oracle", "--name", "simsun", "--n", "3", "--format", "bfile"]), "0 0\n1 1\n2 4\n");
}

#[test]
fn grammar_command() {
    let out = stdout(&["grammar", "--rules", "x -> y; y -> y", "--u", "x", "--target", "y", "--n", "4", "--set-one", "y", "--check"]);
    assert_eq!(out, "x^4 + 11*x^3 + 11*x^2 + x\nexpansion agrees\n");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["verify", "--suite", "nope"]), 2);
    assert_eq!(code(&["expand", "--n", "0"]), 2);
    assert_eq!(code(&["expand", "--n", "11"]), 2);
    assert_eq!(code(&["expand", "--n", "3", "--format", "bfile"]), 2);
    assert_eq!(code(&["family", "--id", "nope", "--n", "3"]), 2);
    assert_eq!(code(&["pkmu", "--k", "3", "--mu", "2,1", "--n", "7"]), 2);
    assert_eq!(code(&["grammar", "--rules", "x -> q", "--target", "x", "--n", "1"]), 2);
    assert_eq!(code(&["grammar", "--rules", "x -> x +", "--target", "x", "--n", "1"]), 2);
    assert_eq!(code(&["oracle", "--name", "des", "--n", "12"]), 3);
    assert_eq!(code(&["pkmu", "--k", "1", "--mu", "6,5", "--method", "enumeration"]), 3);
    assert_eq!(code(&["verify", "--suite", "fibers", "--nmax", "20"]), 3);
    assert_eq!(code(&["verify", "--suite", "thm1.1", "--order", "5"]), 3);
}

#[test]
fn cache_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["pkmu", "--k", "3", "--mu", "2,1,1", "--cache", p]), "896\n");
    let doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema"], "gindex-pkmu-cache/1");
    assert_eq!(doc["entries"]["3|2,1,1"], "896");
    assert_eq!(doc["entries"]["3|2,1"], "120");

    // a planted wrong value is read back, so the three-way comparison fails
    let planted = r#"{"schema": "gindex-pkmu-cache/1", "entries": {"3|2,1,1": "1"}}"#;
    fs::write(&path, planted).unwrap();
    let out = gindex(&["pkmu", "--k", "3", "--mu", "2,1,1", "--method", "all", "--cache", p]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "recurrence 1\ntableau 896\nenumeration 896\n");
}

#[test]
fn stale_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let p = path.to_str().unwrap();
    fs::write(&path, r#"{"schema": "gindex-pkmu-cache/0", "entries": {"3|2,1,1": "1"}}"#).unwrap();
    assert_eq!(stdout(&["pkmu", "--k", "3", "--mu", "2,1,1", "--cache", p]), "896\n");
    fs::write(&path, "not json").unwrap();
    assert_eq!(stdout(&["pkmu", "--k", "3", "--mu", "2,1,1", "--cache", p]), "896\n");
    let doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["entries"]["3|2,1,1"], "896");
}
