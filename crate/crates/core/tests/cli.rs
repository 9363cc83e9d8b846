mod common;

use std::io::Write;
use std::process::{Command, Output, Stdio};

use common::SPREADSHEET_EXPECTED;

fn sheet(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sheet"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn script_path(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn script_mode_matches_golden_output() {
    let out = sheet(&["--script", &script_path("spreadsheet.sheet")], "");
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), SPREADSHEET_EXPECTED);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let path = script_path("spreadsheet.sheet");
    let a = sheet(&["--script", &path], "").stdout;
    let b = sheet(&["--script", &path], "").stdout;
    assert_eq!(a, b);
}

#[test]
fn piped_stdin_behaves_like_a_script() {
    let out = sheet(&[], "set x = 6 / 4\nget x\nget y\n");
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "1.5\nerror: unknown cell `y`\n"
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn empty_input_exits_cleanly() {
    let out = sheet(&[], "");
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn exact_mode_keeps_fractions() {
    let out = sheet(
        &["--exact"],
        "set a = 1 / 3\nset b = a + a\nget b\nset c = b * 3 / 2\nget c\n",
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2/3\n1\n");
    assert!(out.status.success());
}

#[test]
fn missing_script_is_reported() {
    let out = sheet(&["--script", "/nonexistent/definitely.sheet"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("definitely.sheet"));
}
