use std::path::PathBuf;
use std::process::{Command, Output};

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data")
}

fn jsuper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jsuper"))
        .args(args)
        .env("JSUPER_DATA", data())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn witness(name: &str) -> String {
    data()
        .join("witnesses")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn verify_catalog_passes() {
    let o = jsuper(&["verify-catalog"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("149 algebras verified"));
    assert!(!out.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn single_witness_is_verified_graded() {
    let o = jsuper(&["degenerate", &witness("geo1_J5_J2.wit")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Verified (graded)"));
}

#[test]
fn parity_mixing_witness_is_verified_ungraded() {
    let o = jsuper(&["degenerate", &witness("geo1_J3_J1.wit")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Verified (ungraded)"));
}

#[test]
fn screen_reports_orbit_dimension() {
    let o = jsuper(&["screen", "J7", "J5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("orbit-dimension violation: 7 ≤ 12"));
}

#[test]
fn screen_rejects_cross_type_pairs() {
    let o = jsuper(&["screen", "J7", "Jc1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(jsuper(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(jsuper(&["orbit", "J5", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        jsuper(&["closedset", "x.cs", "--trials", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn missing_files_exit_with_two() {
    assert_eq!(
        jsuper(&["check", "/no/such/file.alg"]).status.code(),
        Some(2)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_jsuper"))
        .args(["orbit", "J5"])
        .env("JSUPER_DATA", "/no/such/root")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_identity_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.alg");
    std::fs::write(
        &path,
        "[algebra]\nname = Bad\ntype = 1,1\neven = e\nodd = f\nproduct: e*e = 1 e\nproduct: e*f = 2 f\n",
    )
    .unwrap();
    let o = jsuper(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL identity:Bad"));
}

#[test]
fn exit_status_tracks_fail_lines() {
    for args in [
        vec!["orbit", "J15"],
        vec!["derive", "J15"],
        vec!["envelope", "J1", "-k", "4"],
        vec!["components", "1,3"],
    ] {
        let o = jsuper(&args);
        let fails = stdout(&o).lines().filter(|l| l.starts_with("FAIL")).count();
        assert_eq!(o.status.code() == Some(0), fails == 0, "{args:?}");
    }
}

#[test]
fn derivation_and_orbit_values() {
    assert!(stdout(&jsuper(&["derive", "J15"])).contains("even 9 odd 3"));
    assert!(stdout(&jsuper(&["orbit", "Jf1"])).starts_with("PASS orbit:Jf1 computed 15"));
}

#[test]
fn closed_set_reports_are_reproducible() {
    let cs = data().join("closedsets/geo1_J12.cs");
    let args = [
        "closedset",
        cs.to_str().unwrap(),
        "--trials",
        "40",
        "--seed",
        "3",
    ];
    let (a, b) = (jsuper(&args), jsuper(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("PASS closedset:geo1_J12:stability 40/40"));
}

#[test]
fn components_of_every_type() {
    for (kind, count, dim) in [
        ("1,3", "11 = 11 rigid + 0 family", "12 via"),
        ("2,2", "25 = 24 rigid + 1 family", "13 via"),
        ("3,1", "21 = 21 rigid + 0 family", "15 via"),
    ] {
        let o = jsuper(&["components", kind]);
        let out = stdout(&o);
        assert_eq!(o.status.code(), Some(0), "{out}");
        assert!(out.contains(count), "{out}");
        assert!(out.contains(dim), "{out}");
    }
}

#[test]
fn dot_export_to_file_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dot");
    let o = jsuper(&["graph", "1,3", "--dot", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let file = std::fs::read_to_string(&path).unwrap();
    assert!(file.contains("\"J5\" -> \"J2\""));
    let o = jsuper(&["graph", "1,3", "--dot", "-"]);
    assert_eq!(stdout(&o), file);
}

#[test]
fn tsv_format_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.tsv");
    let o = jsuper(&[
        "--format",
        "tsv",
        "-o",
        path.to_str().unwrap(),
        "orbit",
        "J15",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "PASS\torbit:J15\tcomputed 4, published 4\n"
    );
}
