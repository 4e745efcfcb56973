use std::process::{Command, Output};

fn cqtkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cqtkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("cqtkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn slq2_classify_reports_four_candidates() {
    let o = cqtkit(&["check", "builtin:slq2", "--suite", "classify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().any(|l| l == "CQT candidates: 4"));
    let o = cqtkit(&["classify", "builtin:slq2", "--eval", "t=i"]);
    assert!(stdout(&o).lines().any(|l| l == "CQT candidates: 2"));
}

#[test]
fn lorentz_flip_at_one_reports_sixteen_and_eight() {
    let o = cqtkit(&["check", "builtin:lorentz-flip", "--suite", "classify", "--eval", "t=1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in ["CQT candidates: 16", "CT candidates: 8", "CQT* candidates: 8", "CT* candidates: 4"] {
        assert!(out.lines().any(|l| l == line), "missing {line}\n{out}");
    }
}

#[test]
fn malformed_file_exits_two_with_position() {
    let path = scratch("bad.qg");
    std::fs::write(&path, "gen w : 2\nmat E : [] -> [w w] { 2,1 = 1 ;\n  3 1 = q }\n").unwrap();
    let o = cqtkit(&["check", path.to_str().unwrap(), "--suite", "validate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("3:5"), "{}", stderr(&o));
}

#[test]
fn missing_file_and_unknown_builtin_exit_two() {
    let o = cqtkit(&["check", "/nonexistent/datum.qg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/nonexistent/datum.qg"));
    assert_eq!(cqtkit(&["check", "builtin:nothing"]).status.code(), Some(2));
}

#[test]
fn failing_check_exits_one_with_witness_row() {
    let o = cqtkit(&["check", "builtin:poincare-negative", "--suite", "validate"]);
    assert_eq!(o.status.code(), Some(1));
    let fails: Vec<String> = stdout(&o).lines().filter(|l| l.starts_with("FAIL")).map(String::from).collect();
    assert_eq!(fails.len(), 1, "{fails:?}");
    assert!(fails[0].contains("structure/a3-zt") && fails[0].contains(" at ("));
}

#[test]
fn json_reports_are_byte_stable_and_parse() {
    let (a, b) = (scratch("a.json"), scratch("b.json"));
    for p in [&a, &b] {
        let o = cqtkit(&["check", "builtin:slq2", "--suite", "validate,classify", "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        for key in ["check_id", "status", "witness", "suite", "datum"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert_eq!(r["datum"], "slq2");
    }
    let suites: Vec<&str> = reports.iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert!(suites.windows(2).all(|w| !(w[0] == "classify" && w[1] == "validate")));
}

#[test]
fn json_witness_values_are_exact_strings() {
    let p = scratch("neg.json");
    cqtkit(&["check", "builtin:poincare-negative", "--suite", "validate", "--json", p.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
    let fail = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["status"] == "fail")
        .unwrap();
    assert_eq!(fail["witness"]["value"], "2*i");
    assert_eq!(fail["witness"]["index"], serde_json::json!([1, 2, 4]));
}

#[test]
fn declared_candidate_file_runs_cqt_star_ct() {
    let path = scratch("flip.qg");
    std::fs::write(
        &path,
        "gen w : 2\nmat E : [] -> [w w] { 2,1 = 1 ; 3,1 = -1 }\nmat Ep : [w w] -> [] { 1,2 = -1 ; 1,3 = 1 }\nrel E\nrel Ep\ncand w w = flip(2,2)\n",
    )
    .unwrap();
    let o = cqtkit(&["check", path.to_str().unwrap(), "--suite", "cqt,star,ct"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("paths-agree/w"));
}

#[test]
fn mor_and_show_print_matrices() {
    let o = cqtkit(&["mor", "builtin:slq2", "--src", "w,w", "--dst", "w,w"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(": 2 basis elements"), "{}", stdout(&o));
    let o = cqtkit(&["show", "builtin:poincare-classical", "m0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("m0:"));
    assert_eq!(cqtkit(&["show", "builtin:slq2", "Q"]).status.code(), Some(2));
}

#[test]
fn uea_suite_with_dual_row() {
    let o = cqtkit(&["check", "builtin:poincare-classical", "--suite", "uea", "--max-len", "1", "--with-n", "n0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("xkx+n"));
}
