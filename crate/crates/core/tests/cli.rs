use std::path::PathBuf;
use std::process::{Command, Output};

const W_X: &str = "-a^-10 - a^-6 + a^-6*b^2 - a^-2*b^2";

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fvknot")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(contents: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), contents).unwrap();
    f
}

#[test]
fn invariant_of_w_and_unknot() {
    let o = run(&["invariant", fixture("whitehead_w.fvd").to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), W_X);
    let o = run(&["invariant", fixture("unknot.fvd").to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "-a^-2 - a^2");
}

#[test]
fn table_has_one_row_per_state() {
    let o = run(&["invariant", "--table", fixture("whitehead_w.fvd").to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = run(&["invariant", "--table", "--format", "records", fixture("whitehead_w.fvd").to_str().unwrap()]);
    let lines: Vec<serde_json::Value> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["x"], W_X);
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[4]["counts"]["gamma_even"], 1);
}

#[test]
fn phi_pipeline() {
    let curve = fixture("whitehead_companion.curve");
    let o = run(&["phi", "--invariant", curve.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), W_X);
    // The emitted diagram file feeds back into `invariant`.
    let out = tempfile::NamedTempFile::new().unwrap();
    let o = run(&["phi", curve.to_str().unwrap(), "-o", out.path().to_str().unwrap()]);
    assert!(stdout(&o).starts_with("# restricted-eligible"));
    let o = run(&["invariant", out.path().to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), W_X);
}

#[test]
fn phi_small_circle_is_unknot() {
    let f = temp("space: cylinder\ngroup: 3\ncomponent\n0.1 0.4 0\n0.2 0.4 0\n0.15 0.6 0\n");
    let o = run(&["phi", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fvknot::parse_diagram(&stdout(&o)).unwrap(), fvknot::Diagram::unknot());
}

#[test]
fn exit_codes() {
    let bad_syntax = temp("components: 1\n1x\n");
    assert_eq!(run(&["invariant", bad_syntax.path().to_str().unwrap()]).status.code(), Some(2));

    let invalid = temp("components: 1\n1+ 1+\ncrossings:\n1 C +1\n");
    let o = run(&["writhe", invalid.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("classical visit roles must be {Over, Under}"));

    // 30 positive kinks in a row
    let mut text = String::from("components: 1\n");
    for i in 1..=30 {
        text.push_str(&format!("{i}+ {i}- "));
    }
    text.push_str("\ncrossings:\n");
    for i in 1..=30 {
        text.push_str(&format!("{i} C +1\n"));
    }
    let big = temp(&text);
    assert_eq!(run(&["invariant", big.path().to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(run(&["writhe", big.path().to_str().unwrap()]).status.code(), Some(0));

    let level = temp("space: cylinder\ngroup: 2\ncomponent\n0.01 0.5 0\n0.26 0.5 0\n0.51 0.5 0\n0.76 0.5 0\n");
    let o = run(&["phi", level.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).contains("theta="));

    let bad_curve = temp("space: cylinder\ngroup: 2\ncomponent\n0 0.5\n");
    assert_eq!(run(&["phi", bad_curve.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn thin_wrappers() {
    let w = fixture("whitehead_w.fvd");
    assert_eq!(stdout(&run(&["components", w.to_str().unwrap()])).trim(), "1");
    assert_eq!(stdout(&run(&["writhe", w.to_str().unwrap()])).trim(), "2");
    let forgotten = stdout(&run(&["forget", w.to_str().unwrap()]));
    assert!(!forgotten.contains(" C "));
    assert_eq!(forgotten.matches(" F ").count(), 4);
}

#[test]
fn fuzz_is_deterministic_and_clean() {
    let a = run(&["fuzz", "--seed", "1", "--trials", "100"]);
    assert!(a.status.success());
    assert!(stdout(&a).contains("no violations"));
    let b = run(&["fuzz", "--seed", "1", "--trials", "100", "--workers", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let r = run(&["fuzz", "--seed", "5", "--trials", "3", "--restricted", "--format", "records"]);
    for line in stdout(&r).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["violation"].is_null());
        assert!(v["moves"].as_array().unwrap().iter().all(|m| m["kind"] != "flat-r3"));
    }
}

#[test]
fn invariant_ignores_worker_count() {
    let w = fixture("figure_eight.fvd");
    let outs: Vec<Vec<u8>> = ["1", "2", "8"]
        .iter()
        .map(|n| run(&["invariant", "--workers", n, w.to_str().unwrap()]).stdout)
        .collect();
    assert!(outs.windows(2).all(|p| p[0] == p[1]));
}
