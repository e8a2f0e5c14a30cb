use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn tjkss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tjkss"))
        .args(args)
        .output()
        .unwrap()
}

fn tjkss_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tjkss"))
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
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compute_defaults_to_canonical_twisted() {
    let o = tjkss(&["compute", path(&data("curls_four_bars.tjd"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn compute_virtual() {
    let o = tjkss(&["compute", "--virtual", path(&data("virtual_trefoil.tjd"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "-1*x^0*y^0 + -1*x^0*y^1 + -1*x^1*y^-1 + 1*x^1*y^1 + 1*x^2*y^-1 + 1*x^2*y^0\n"
    );
}

#[test]
fn compute_virtual_refuses_bars() {
    let o = tjkss(&["compute", "--virtual", path(&data("barred_trefoil.tjd"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compute_empty_diagram() {
    let o = tjkss_stdin(&["compute", "-"], "# nothing\n");
    assert_eq!(stdout(&o), "1*x^0*y^0\n");
}

#[test]
fn batch_output_keeps_input_order() {
    let files = [
        data("curls_three_bars.tjd"),
        data("curls_four_bars.tjd"),
        data("barred_trefoil.tjd"),
        data("curls_four_bars.tjd"),
    ];
    let mut args = vec!["compute", "--raw"];
    args.extend(files.iter().map(|f| path(f)));
    let o = tjkss(&args);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1], "0");
    assert_eq!(lines[3], "0");
    for (line, f) in lines.iter().zip(&files) {
        let single = tjkss(&["compute", "--raw", path(f)]);
        assert_eq!(format!("{line}\n"), stdout(&single));
    }
}

#[test]
fn raw_and_canonical_conflict() {
    let o = tjkss(&[
        "compute",
        "--raw",
        "--canonical",
        path(&data("virtual_hopf.tjd")),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_and_validation_errors() {
    let o = tjkss_stdin(&["compute", "-"], "crossing 1 +\nedge 1.0 1.7\n");
    assert_eq!(o.status.code(), Some(1));
    let o = tjkss_stdin(&["compute", "-"], "crossing 1 +\nedge 1.0 1.0\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1.1"));
    let o = tjkss(&["compute", "/nonexistent/file.tjd"]);
    assert_eq!(o.status.code(), Some(1));
    let o = tjkss(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(tjkss(&["--help"]).status.code(), Some(0));
}

#[test]
fn compare_reports() {
    let a = data("curls_four_bars.tjd");
    let b = data("curls_three_bars.tjd");
    assert_eq!(
        stdout(&tjkss(&["compare", path(&a), path(&b)])),
        "DISTINCT\n"
    );
    assert_eq!(
        stdout(&tjkss(&["compare", path(&b), path(&b)])),
        "EQUAL_UP_TO_X_POWER\n"
    );
}

#[test]
fn cover_round_trip_and_equality() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cover.tjd");
    let src = data("barred_trefoil.tjd");
    let o = tjkss(&["cover", path(&src), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let cover_value = tjkss(&["compute", "--virtual", "--raw", out.to_str().unwrap()]);
    let twisted_value = tjkss(&["compute", "--raw", path(&src)]);
    assert_eq!(stdout(&cover_value), stdout(&twisted_value));
}

#[test]
fn random_empty() {
    let o = tjkss(&["random", "--crossings", "0", "--bars", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
    let a = tjkss(&["random", "--crossings", "5", "--bars", "3", "--seed", "9"]);
    let b = tjkss(&["random", "--crossings", "5", "--bars", "3", "--seed", "9"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn walk_then_compute_matches() {
    let src = data("curls_three_bars.tjd");
    let walked = tjkss(&["walk", path(&src), "--steps", "50", "--seed", "3"]);
    assert_eq!(walked.status.code(), Some(0));
    let after = tjkss_stdin(&["compute", "-"], &stdout(&walked));
    let before = tjkss(&["compute", path(&src)]);
    assert_eq!(stdout(&after), stdout(&before));

    let d = tjkss(&["random", "--crossings", "5", "--bars", "2", "--seed", "4"]);
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("d.tjd");
    let g = dir.path().join("g.tjd");
    std::fs::write(&f, stdout(&d)).unwrap();
    let w = tjkss(&["walk", f.to_str().unwrap(), "--steps", "30", "--seed", "1"]);
    std::fs::write(&g, stdout(&w)).unwrap();
    let c = tjkss(&["compare", f.to_str().unwrap(), g.to_str().unwrap()]);
    assert_eq!(stdout(&c), "EQUAL_UP_TO_X_POWER\n");
}

#[test]
fn selftest_passes() {
    let o = tjkss(&["selftest", "--seed", "7", "--count", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
