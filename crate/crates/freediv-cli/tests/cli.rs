use std::process::{Command, Output};

fn freediv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freediv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn wme_whitney_certifies() {
    let out = freediv(&[
        "wme",
        "--ring",
        "x:4,y:2,z:4",
        "--f",
        "z*(x^2 - y^2*z)",
        "--deriv",
        "2*x; 2*y; 0",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("der0 exponents: [1, 3]"), "{text}");
}

#[test]
fn oracle_rejects_nonfree() {
    let out = freediv(&["oracle", "is-free", "--ring", "x:1,y:1,z:2", "--f", "x^2 - y^2*z"]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("not free"), "{text}");
}

#[test]
fn parse_error_reports_column() {
    let out = freediv(&["wdeg", "--ring", "x,y", "--f", "x + * y"]);
    assert_eq!(code(&out), 2);
    let text = String::from_utf8(out.stderr).unwrap();
    assert!(text.contains("column 5"), "{text}");
}

#[test]
fn usage_error_is_exit_2() {
    let out = freediv(&["wdeg", "--ring", "x:0,y", "--f", "x"]);
    assert_eq!(code(&out), 2);
    let out = freediv(&["no-such-verb"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn emit_verify_round_trip_and_mutations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("whitney.json");
    let out = freediv(&[
        "emit",
        "--ring",
        "x:4,y:2,z:4",
        "--f",
        "z*(x^2 - y^2*z)",
        "--deriv",
        "2*x; 2*y; 0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);

    let out = freediv(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let text = std::fs::read_to_string(&path).unwrap();
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, text.replace("[1,1,3]", "[1,2,3]")).unwrap();
    let out = freediv(&["verify", tampered.to_str().unwrap()]);
    assert_eq!(code(&out), 1);

    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    let out = freediv(&["verify", truncated.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn family_cone_matches_table() {
    let out = freediv(&["family", "reflection", "--n", "1,2,3", "--k", "3", "--cone"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("certified: exponents [1, 1, 4, 6]"), "{text}");
}

#[test]
fn member_exit_codes() {
    let out = freediv(&["member", "--ring", "x,y", "--f", "x*y", "--deriv", "x; 0"]);
    assert_eq!(code(&out), 0);
    let out = freediv(&["member", "--ring", "x,y", "--f", "x*y", "--deriv", "1; 0"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "family", "pencil", "--n", "2", "--m", "0", "--r", "1,1,1", "--scalars", "1,1",
    ];
    let a = freediv(&args);
    let b = freediv(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cone_refusal_exits_1() {
    // the pure reflection basis for n = (1,1,2) has degree sum 9, deg f = 8
    let out = freediv(&[
        "cone",
        "--ring",
        "x1,x2,x3",
        "--f",
        "x1*x2*x3*(x1-x2)*(x1-x3^2)*(x2-x3^2)",
        "--deriv",
        "2*x1; 2*x2; x3",
        "--deriv",
        "2*x1^2; 2*x2^2; x3^3",
        "--deriv",
        "2*x1^3; 2*x2^3; x3^5",
    ]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("refused"), "{text}");
}
