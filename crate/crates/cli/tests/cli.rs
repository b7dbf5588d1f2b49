use std::process::{Command, Output};

fn ribbon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ribbon")).args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = ribbon(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn line4_is_coloured_alternately() {
    let out = stdout_of(&["graph", "corpus:line4"]);
    assert!(out.contains("bipartite; coloring + \u{2212} + \u{2212} +"), "{out}");
}

#[test]
fn triangle_reports_odd_cycle() {
    let out = stdout_of(&["graph", "corpus:triangle"]);
    assert!(out.contains("not bipartite; odd closed walk of length 3"), "{out}");
}

#[test]
fn loop2_over_gf3_is_not_symmetric() {
    let out = stdout_of(&["decide", "corpus:loop2", "--field", "gf3"]);
    assert!(out.contains("(2) not-symmetric; (3) false (loop)"), "{out}");
    assert!(out.contains("consistent"), "{out}");
}

#[test]
fn loop2_in_characteristic_two_is_symmetric() {
    let out = stdout_of(&["decide", "corpus:loop2", "--field", "gf2"]);
    assert!(out.starts_with("loop2 over GF(2)\n(1) true; (2) symmetric; (3) true (char 2)"), "{out}");
}

#[test]
fn nodal_frobenius_pairs() {
    let out = stdout_of(&["frobenius", "corpus:nodal"]);
    assert!(out.contains("nonzero pairs {(e_1, x), (x, e_1), (x, x)}"), "{out}");
    assert!(out.contains("phi(x * x) = t"), "{out}");
    assert!(out.contains("nu-symmetry: holds"), "{out}");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "decide", "corpus:mixed", "--field", "gf5", "-m", "2"];
    let first = stdout_of(&args);
    assert_eq!(first, stdout_of(&args));
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["consistency"], serde_json::Value::Bool(true));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = std::env::temp_dir().join(format!("ribbon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.spec");
    std::fs::write(&path, "name: bad\nvertices: 1\narrow a 1 -> 1\n").unwrap();
    let out = ribbon(&["validate", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn unknown_corpus_name_fails() {
    let out = ribbon(&["validate", "corpus:nope"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("loop2"));
}

#[test]
fn ribbon_output_round_trips() {
    let dir = std::env::temp_dir().join(format!("ribbon-cli-rt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in ["mixed", "triangle", "circular3"] {
        let text = stdout_of(&["graph", &format!("corpus:{name}"), "--ribbon"]);
        let path = dir.join(format!("{name}.spec"));
        std::fs::write(&path, text).unwrap();
        let again = stdout_of(&["graph", path.to_str().unwrap()]);
        let original = stdout_of(&["graph", &format!("corpus:{name}")]);
        // node and edge counts and the certificate line survive
        assert_eq!(again.lines().next().map(|l| l.split_once(':').unwrap().1.to_string()),
                   original.lines().next().map(|l| l.split_once(':').unwrap().1.to_string()));
        assert_eq!(again.lines().last(), original.lines().last());
    }
}

#[test]
fn corpus_run_is_consistent() {
    let out = stdout_of(&["corpus", "--fields", "gf2,gf3", "-m", "1"]);
    assert!(out.ends_with("30 reports, all consistent\n"), "{out}");
}

#[test]
fn quotient_dimension_matches() {
    let out = stdout_of(&["quotient", "corpus:line2", "--field", "Q", "-m", "2"]);
    let dims = out.lines().find(|l| l.starts_with("dim ")).unwrap();
    let parts: Vec<&str> = dims.split_whitespace().collect();
    assert_eq!(parts[1], parts[3].trim_end_matches(')'));
    assert!(out.contains("admissible true"));
}

#[test]
fn basis_matches_rank_formula() {
    let out = stdout_of(&["basis", "corpus:mixed"]);
    assert!(out.contains("rank formula 30 ; |B| = 30"), "{out}");
}

#[test]
fn resolve_lists_every_arrow() {
    let out = stdout_of(&["resolve", "corpus:mixed"]);
    assert_eq!(out.lines().count(), 10);
}
