use std::process::Command;

fn wkernel(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_wkernel")).args(args).output().expect("binary runs")
}

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn table1_lists_nine_rows() {
    let o = wkernel(&["table1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 10);
    assert!(text.contains("E8") && text.contains("57"));
    let o = wkernel(&["table1", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 9);
}

#[test]
fn verify_writes_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = wkernel(&["verify", "table1", "parity", "--seed", "3", "--format", "json", "--out", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["schema"], "wkernel-report/1");
    assert_eq!(report["summary"]["failed"], 0);
}

#[test]
fn unknown_suite_exits_nonzero() {
    let o = wkernel(&["verify", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}

#[test]
fn derive_then_check_def() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("w.json");
    let o = wkernel(&["derive-walgebra", "C", "2", "--out", doc.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = wkernel(&["check-def", doc.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("6 generators"));
}

#[test]
fn check_def_reports_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("w1.json");
    std::fs::write(&good, r#"{"name":"W1","generators":["z","d"],"relations":[{"pair":["d","z"],"normal":"z*d - 1"}]}"#).unwrap();
    let o = wkernel(&["check-def", good.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("round trip: pass"));

    let unknown = dir.path().join("q.json");
    std::fs::write(&unknown, r#"{"name":"W1","generators":["z","d"],"relations":[{"pair":["d","z"],"normal":"q*d"}]}"#).unwrap();
    let o = wkernel(&["check-def", unknown.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown generator `q`"));

    let broken = dir.path().join("b.json");
    std::fs::write(&broken, "{\"name\": \"W1\",\n\"generators\": [").unwrap();
    let o = wkernel(&["check-def", broken.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn extra_definitions_join_the_consistency_suite() {
    let dir = tempfile::tempdir().unwrap();
    let def = dir.path().join("sl2.json");
    std::fs::write(&def, r#"{"constructor":"sln","n":2}"#).unwrap();
    let o = wkernel(&["verify", "consistency", "--degree", "3", "--def", def.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("sl2.json: overlaps resolve"));
}
