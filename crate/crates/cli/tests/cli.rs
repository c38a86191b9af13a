use std::path::Path;
use std::process::{Command, Output};

use relpsi_cli::report::{ReportDocument, ResultEntry};

fn relpsi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relpsi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json_of(args: &[&str]) -> (String, Output) {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let out = relpsi(&full);
    (stdout(&out), out)
}

fn assert_no_floats(v: &serde_json::Value) {
    match v {
        serde_json::Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "float in report: {n}"),
        serde_json::Value::Array(items) => items.iter().for_each(assert_no_floats),
        serde_json::Value::Object(map) => map.values().for_each(assert_no_floats),
        _ => {}
    }
}

#[test]
fn psi_cyclic_values_and_exit_codes() {
    let out = relpsi(&["psi-cyclic", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "psi(C_7) = 43\n");

    assert_eq!(stdout(&relpsi(&["psi-cyclic", "1"])), "psi(C_1) = 1\n");

    let out = relpsi(&["psi-cyclic", "12", "--brute-force"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "psi(C_12) = 77\nbrute force = 77\nOK\n");

    for bad in [&["psi-cyclic", "0"][..], &["psi-cyclic", "abc"], &["psi-cyclic", "2000000", "--brute-force"], &["no-such-command"]] {
        assert_eq!(relpsi(bad).status.code(), Some(1), "{bad:?}");
    }
}

#[test]
fn frobenius_command() {
    let out = relpsi(&["frobenius", "--r", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("n = 56\n"));
    assert!(text.contains("psi_H = 315 (closed form)\n"));
    assert!(text.contains("psi' = 45/43"));
    assert!(text.ends_with("VIOLATES (1)\n"));

    let out = relpsi(&["frobenius", "--r", "3", "--q", "3", "--brute-force"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("psi_H = 945 (brute force over 168 elements)\n"));
    assert!(text.contains("psi' = 45/43"));

    let cases = [
        (&["frobenius", "--r", "4"][..], "2^4-1 not prime"),
        (&["frobenius", "--r", "2"], "r must be at least 3"),
        (&["frobenius", "--r", "3", "--q", "4"], "must be odd"),
        (&["frobenius", "--r", "3", "--q", "9"], "is not prime"),
        (&["frobenius", "--r", "3", "--q", "7"], "divides 2^3-1"),
    ];
    for (args, message) in cases {
        let out = relpsi(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(stderr(&out).contains(message), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn scan_reports_violations_only_with_frobenius_groups() {
    let out = relpsi(&["scan", "--max-order", "63"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("0 violations in 0 groups\n"));

    let out = relpsi(&["scan", "--max-order", "63", "--include-frobenius"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.ends_with("8 violations in 1 group\n"));
    assert!(text.contains("frobenius(2,3)  H = <1> (order 7)"));

    assert_eq!(relpsi(&["scan", "--max-order", "0"]).status.code(), Some(1));
    assert_eq!(relpsi(&["scan", "--max-order", "100000"]).status.code(), Some(1));
}

#[test]
fn scan_output_ignores_thread_count() {
    let one = relpsi(&["--threads", "1", "scan", "--max-order", "40", "--include-frobenius"]);
    let four = relpsi(&["--threads", "4", "scan", "--max-order", "40", "--include-frobenius"]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.status.code(), four.status.code());
}

#[test]
fn bijection_command() {
    let out = relpsi(&["bijection", "frobenius(2,3)", "--subgroup", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("NO BIJECTION\n"));
    assert!(text.contains("{7:42} total 42"));

    let out = relpsi(&["bijection", "cyclic(12)", "--subgroup", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("BIJECTION EXISTS\n"));

    let out = relpsi(&["bijection", "symmetric(3)", "--subgroup", ""]);
    assert_eq!(out.status.code(), Some(0));

    assert_eq!(relpsi(&["bijection", "cyclic(4)", "--subgroup", "9"]).status.code(), Some(1));
    assert_eq!(relpsi(&["bijection", "cyclic(4)", "--subgroup", "x"]).status.code(), Some(1));
}

fn write_table(dir: &Path, name: &str, group: &str) -> String {
    let out = relpsi(&["table", group]);
    assert_eq!(out.status.code(), Some(0));
    let path = dir.join(name);
    std::fs::write(&path, &out.stdout).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn check_bounds_on_a_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_table(dir.path(), "c12.txt", "cyclic(12)");
    let out = relpsi(&["check-bounds", &path]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("group: c12.txt (order 12)\n"));
    assert!(!text.contains("FAIL"));
    assert!(text.contains("PASS relative order <= index: 6 checked, 0 failed"));

    let out = relpsi(&["check-bounds", "frobenius(2,3)"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_tables_report_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("bad_token.txt", "# c3\n3\n0 1 2\n1 2 0\n2 0 z\n", "line 5"),
        ("short.txt", "3\n0 1 2\n1 2 0\n", "line 3"),
        ("not_latin.txt", "2\n0 1\n1 1\n", "row 1 is not a permutation"),
    ];
    for (name, body, needle) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        let out = relpsi(&["ratios", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        assert!(stderr(&out).contains(needle), "{name}: {}", stderr(&out));
    }
}

#[test]
fn ratios_marks_violations() {
    let out = relpsi(&["ratios", "symmetric(3)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("13/21"));

    let out = relpsi(&["ratios", "frobenius(2,3)"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out).matches("VIOLATES").count(), 8);
}

#[test]
fn json_documents_round_trip_byte_for_byte() {
    let runs: [&[&str]; 7] = [
        &["psi-cyclic", "12", "--brute-force"],
        &["frobenius", "--r", "3", "--q", "3", "--brute-force"],
        &["scan", "--max-order", "60", "--include-frobenius"],
        &["check-bounds", "dihedral(4)"],
        &["bijection", "frobenius(2,3)", "--subgroup", "1"],
        &["ratios", "alternating(4)"],
        &["monotonicity", "--r-max", "10"],
    ];
    for args in runs {
        let (text, _) = json_of(args);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_no_floats(&value);
        let mut again = serde_json::to_string_pretty(&value).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{args:?}");
        let typed: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(typed.to_json(), text, "{args:?}");
        assert_eq!(typed.schema_version, "1");
    }
}

#[test]
fn json_contents() {
    let (text, out) = json_of(&["frobenius", "--r", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: ReportDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.command, ["frobenius", "--r", "3", "--json", "-"]);
    match &doc.results[..] {
        [ResultEntry::Counterexample { ratio, violates, psi_h_closed_form, .. }] => {
            assert_eq!((ratio.num.as_str(), ratio.den.as_str()), ("45", "43"));
            assert!(*violates);
            assert_eq!(psi_h_closed_form, "315");
        }
        other => panic!("unexpected results {other:?}"),
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.json");
    let out = relpsi(&["scan", "--max-order", "63", "--include-frobenius", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("8 violations"));
    let doc: ReportDocument = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    match &doc.results[0] {
        ResultEntry::ScanSummary { violations, violating_groups, nilpotent_violations, .. } => {
            assert_eq!(*violations, 8);
            assert_eq!(violating_groups, &["frobenius(2,3)"]);
            assert_eq!(*nilpotent_violations, 0);
        }
        other => panic!("unexpected first entry {other:?}"),
    }
    assert_eq!(doc.results.len(), 9);
}

#[test]
fn exported_table_is_accepted_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_table(dir.path(), "f56.txt", "frobenius(2,3)");
    let from_file = relpsi(&["ratios", &path]);
    let direct = relpsi(&["ratios", "frobenius(2,3)"]);
    let strip = |o: &Output| stdout(o).lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&from_file), strip(&direct));
    assert_eq!(relpsi(&["--seed", "17", "ratios", &path]).status.code(), Some(3));
}
