use std::process::{Command, Output};

fn jacktop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacktop")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn kl_top_formats() {
    let o = jacktop(&["kl-top", "2", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "R3 + R2*g");
    let o = jacktop(&["kl-top", "1"]);
    assert_eq!(stdout(&o).trim(), r#"[{"gamma":0,"mu":[2],"coeff":"1"}]"#);
    let o = jacktop(&["kl-top", "4", "--format", "text"]);
    assert_eq!(stdout(&o).trim(), "R5 + 6*R4*g + R2^2*g + 11*R3*g^2 + 6*R2*g^3");
}

#[test]
fn budget_violations_exit_2() {
    assert_eq!(jacktop(&["kl-top", "99"]).status.code(), Some(2));
    assert_eq!(jacktop(&["--budget", "3", "kl-top", "4"]).status.code(), Some(2));
    assert_eq!(jacktop(&["eval", "ch", "2", "9"]).status.code(), Some(2));
    assert_eq!(jacktop(&["eval", "chtop", "9", "1"]).status.code(), Some(2));
}

#[test]
fn parse_errors_exit_1() {
    assert_eq!(jacktop(&["eval", "ch", "2", "1,x"]).status.code(), Some(1));
    assert_eq!(jacktop(&["eval", "ch", "2", "1,2"]).status.code(), Some(1));
    assert_eq!(jacktop(&["verify", "nosuch", "2"]).status.code(), Some(1));
    assert_eq!(jacktop(&["--jobs", "0", "kl-top", "1"]).status.code(), Some(1));
    assert_eq!(jacktop(&["eval", "M", "1,1", "2"]).status.code(), Some(1));
    assert_eq!(jacktop(&["--help"]).status.code(), Some(0));
}

#[test]
fn eval_examples() {
    assert_eq!(stdout(&jacktop(&["eval", "ch", "2", "2"])).trim(), r#"{"1":"2"}"#);
    assert_eq!(stdout(&jacktop(&["eval", "R", "2", "3,1"])).trim(), r#"{"0":"4"}"#);
    assert_eq!(stdout(&jacktop(&["eval", "ch", "3", "1"])).trim(), "{}");
    assert_eq!(stdout(&jacktop(&["eval", "ch", "1,1", "3,1", "--format", "text"])).trim(), "12");
    assert_eq!(stdout(&jacktop(&["eval", "chtop", "1", "2,2"])).trim(), r#"{"0":"4"}"#);
    assert_eq!(stdout(&jacktop(&["eval", "K", "1", "3"])).trim(), r#"{"0":"3"}"#);
    assert_eq!(stdout(&jacktop(&["eval", "M", "1", "3"])).trim(), r#"{"0":"3"}"#);
    assert!(jacktop(&["eval", "T", "3", "2,1"]).status.success());
    assert!(jacktop(&["eval", "S", "3", "2,1"]).status.success());
}

#[test]
fn verify_suites() {
    for (suite, n) in [("prologue-tables", "4"), ("vanishing", "5"), ("orbits", "5"), ("catalan", "5")] {
        let o = jacktop(&["verify", suite, n]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        for r in v.as_array().unwrap() {
            assert_eq!(r["pass"], true);
            let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
            assert_eq!(keys.len(), 4);
        }
    }
    let o = jacktop(&["verify", "orbits", "5", "--format", "text"]);
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS") || l.ends_with("0 failed")), "{text}");
    assert_eq!(jacktop(&["verify", "equivalence", "9"]).status.code(), Some(2));
}

#[test]
fn output_independent_of_workers() {
    for args in [&["kl-top", "5"][..], &["census", "4"], &["verify", "equivalence", "3"]] {
        let one = jacktop(&[&["--jobs", "1"], args].concat());
        let four = jacktop(&[&["--jobs", "4"], args].concat());
        assert!(one.status.success());
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(one.stdout, jacktop(args).stdout);
    }
}

#[test]
fn warm_cache_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cold = jacktop(&["kl-top", "5"]);
    let first = jacktop(&["--cache-dir", d, "kl-top", "5"]);
    let warm = jacktop(&["--cache-dir", d, "kl-top", "5"]);
    assert_eq!(cold.stdout, first.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    let stored: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("kltop_5.json")).unwrap()).unwrap();
    assert_eq!(stored["kind"], "kl_top");
    assert!(stored["schema"].is_number());

    let cold = jacktop(&["eval", "ch", "2,1", "3,2"]);
    let first = jacktop(&["--cache-dir", d, "eval", "ch", "2,1", "3,2"]);
    let warm = jacktop(&["--cache-dir", d, "eval", "ch", "2,1", "3,2"]);
    assert_eq!(cold.stdout, first.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    assert!(dir.path().join("jack_3-2.json").exists());
}

#[test]
fn census_lists_orbits() {
    let o = jacktop(&["census", "3", "--format", "text"]);
    let text = stdout(&o);
    assert!(text.lines().count() > 0);
    assert!(text.lines().all(|l| l.ends_with("| 2")), "{text}");
}

#[test]
fn tampered_cache_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let path = dir.path().join("kltop_2.json");
    let bogus = |schema: u32| {
        format!(r#"{{"schema":{schema},"kind":"kl_top","data":[{{"gamma":0,"mu":[3],"coeff":"2"}}]}}"#)
    };
    std::fs::write(&path, bogus(1)).unwrap();
    let o = jacktop(&["--cache-dir", d, "verify", "prologue-tables", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("\"pass\":false"));
    // a stale schema is ignored and recomputed
    std::fs::write(&path, bogus(0)).unwrap();
    let o = jacktop(&["--cache-dir", d, "verify", "prologue-tables", "2"]);
    assert_eq!(o.status.code(), Some(0));
}
