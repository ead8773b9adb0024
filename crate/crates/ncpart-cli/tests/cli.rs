use std::process::{Command, Output};

fn ncpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncpart")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ncpart(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_elements() {
    let s = stdout(&["count", "elements", "--n", "6"]);
    for v in ["closed=132", "closed=203", "closed=374"] {
        assert!(s.contains(v), "{s}");
    }
    assert!(!s.contains("MISMATCH"));
    assert!(stdout(&["count", "elements", "--type", "B", "--n", "3"]).contains("closed=20 "));
}

#[test]
fn count_apartments() {
    let s = stdout(&["count", "apartments", "--n", "6"]);
    for v in ["273", "1296", "83328"] {
        assert!(s.contains(&format!("enumerated={v}")), "{s}");
    }
}

#[test]
fn guard_falls_back_to_closed_form() {
    let out = ncpart(&["count", "elements", "--n", "12"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("NCPART_MAX_N"));
    assert!(String::from_utf8_lossy(&out.stdout).contains("closed=208012"));
}

#[test]
fn distances() {
    let s = stdout(&["dist", "--n", "5", "(1 3)(4 5)(1 2)(3 5)", "(2 4)(1 5)(2 3)(1 4)"]);
    assert_eq!(s.trim(), "d_building=6 d_pn=6 d_ncp=7");
    let s = stdout(&["dist", "--n", "6", "(1 2)(3 6)(4 5)(2 6)(3 5)", "(2 4)(1 4)(5 6)(2 3)(4 6)"]);
    assert!(s.contains("d_building=7") && s.contains("d_ncp=8"), "{s}");
    let s = stdout(&["dist", "--n", "4", "(1 2)(2 3)(3 4)", "(1 2)(2 3)(3 4)"]);
    assert_eq!(s.trim(), "d_building=0 d_pn=0 d_ncp=0");
    let s = stdout(&["--json", "dist", "--n", "5", "(1 3)(4 5)(1 2)(3 5)", "(2 4)(1 5)(2 3)(1 4)", "--hull"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["d_ncp"], 7);
}

#[test]
fn bad_chamber_is_an_error() {
    let out = ncpart(&["dist", "--n", "5", "(1 2)(1 2)", "(1 2)(2 3)(3 4)(4 5)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn checks() {
    assert!(stdout(&["check", "link-property", "--n", "5"]).starts_with("PASS"));
    let s = stdout(&["check", "link-property", "--n", "4"]);
    assert!(s.starts_with("REPORT") && s.contains("111"), "{s}");
    assert!(stdout(&["check", "antiauto-extension", "--type", "D", "--n", "4", "--p", "3"]).starts_with("PASS"));
    let out = ncpart(&["check", "nope"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("link-property"));
}

#[test]
fn check_all_runs_the_suite() {
    let s = stdout(&["check", "all", "--small"]);
    assert_eq!(s.lines().filter(|l| l.starts_with('[')).count(), 16);
    assert!(!s.contains("FAIL"));
}

#[test]
fn draw() {
    let s = stdout(&["draw", "{1,3,4|2|5,6}"]);
    assert!(s.starts_with("<?xml") && s.contains("<svg"));
    assert_eq!(s.matches("<polygon").count(), 2);
    let s = stdout(&["draw", "hasse", "--type", "A", "--n", "4"]);
    assert_eq!(s.matches("<circle").count(), 14);
}

#[test]
fn aut_and_hurwitz() {
    let s = stdout(&["aut", "--type", "A", "--n", "5"]);
    assert!(s.contains("l = (1 2)(3 5)") && s.contains("r = (2 5)(3 4)"), "{s}");
    let s = stdout(&["--json", "aut", "--type", "D", "--n", "4", "--full"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["dihedral_star"], 12);
    assert!(v["full"].as_u64().unwrap() > 12);
    assert!(stdout(&["hurwitz", "--type", "A", "--n", "4"]).contains("radius 3"));
}

#[test]
fn enumerate_and_metric() {
    assert_eq!(stdout(&["enumerate", "ncp", "--n", "4"]).lines().count(), 14);
    assert_eq!(stdout(&["enumerate", "chambers", "--n", "4", "--tag", "pn"]).lines().count(), 18);
    assert_eq!(stdout(&["enumerate", "reflections", "--type", "B", "--n", "3"]).lines().count(), 9);
    assert!(stdout(&["metric", "scan", "12"]).contains("length π"));
    assert!(stdout(&["metric", "link", "1", "2", "3"]).contains("exact cos(total) = -1"));
}
