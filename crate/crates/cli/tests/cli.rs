use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(name);
    fs::read_to_string(path).unwrap()
}

fn fool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fool")).args(args).output().unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = fool(args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

#[test]
fn check_accepts_the_listing() {
    let (code, stdout, _) = run(&["check", &path("listing.p")]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "ok: 9 formulas\n");
}

#[test]
fn check_reports_ill_typed_ite() {
    let (code, _, stderr) = run(&["check", &path("ill_typed_ite.p")]);
    assert_eq!(code, 1);
    assert!(stderr.contains("ite-branch-mismatch"), "{stderr}");
    assert!(stderr.contains(":6:1:"), "{stderr}");
}

#[test]
fn missing_file_is_an_io_error() {
    for cmd in ["check", "translate", "verify", "prove"] {
        let (code, _, _) = run(&[cmd, "/nonexistent/input.p"]);
        assert_eq!(code, 2, "{cmd}");
    }
}

#[test]
fn translate_matches_golden_files() {
    for (input, expected) in [("listing.p", "listing.tff"), ("formula1.p", "formula1.tff"), ("formula2.p", "formula2.tff")] {
        let (code, stdout, stderr) = run(&["translate", &path(input)]);
        assert_eq!(code, 0, "{stderr}");
        assert_eq!(stdout, golden(expected), "{input}");
    }
}

#[test]
fn translate_reports_steps_and_writes_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("listing.tff");
    let (code, stdout, _) = run(&["translate", &path("listing.p"), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "steps=3 bool-var=0 formula-in-term=0 ite=1 let=2 definitions=4\n");
    assert_eq!(fs::read_to_string(&out).unwrap(), golden("listing.tff"));
    let (code, _, _) = run(&["--strict", "check", out.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn first_order_input_gains_the_boolean_axioms() {
    let (code, stdout, _) = run(&["translate", &path("fo_only.p")]);
    assert_eq!(code, 0);
    let input = fs::read_to_string(fixture("fo_only.p")).unwrap();
    let extra: Vec<&str> = stdout.lines().filter(|l| !input.lines().any(|i| i == *l)).collect();
    assert_eq!(
        extra,
        [
            "tff(fool_bool_type, type, 'fool_bool' : $tType).",
            "tff(fool_true_type, type, 'fool_true' : 'fool_bool').",
            "tff(fool_false_type, type, 'fool_false' : 'fool_bool').",
            "tff(fool_bool_dom, axiom, ![X : 'fool_bool'] : (X = 'fool_true' | X = 'fool_false')).",
            "tff(fool_bool_distinct, axiom, 'fool_true' != 'fool_false').",
        ]
    );
}

#[test]
fn strict_mode_rejects_boolean_arguments() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b.p");
    fs::write(&file, "tff(t, type, b : $o > $int).\n").unwrap();
    let file = file.to_str().unwrap();
    assert_eq!(run(&["check", file]).0, 0);
    let (code, _, stderr) = run(&["--strict", "check", file]);
    assert_eq!(code, 1);
    assert!(stderr.contains("not-tff0"), "{stderr}");
}

#[test]
fn verify_reports_ok_and_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ite.p");
    fs::write(
        &file,
        "tff(s, type, s : $tType).\ntff(c, type, c : s).\ntff(d, type, d : s).\ntff(p, type, p : $o).\n\
         tff(f, type, f : s > $o).\ntff(x, axiom, f($ite(p, c, d))).\n",
    )
    .unwrap();
    let file = file.to_str().unwrap();
    let (code, stdout, _) = run(&["verify", file]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("OK "), "{stdout}");
    for kind in ["drop-def", "flip-guard", "swap-branch"] {
        let (code, stdout, _) = run(&["verify", file, "--mutate", kind]);
        assert_eq!(code, 1, "{kind}");
        assert!(stdout.starts_with("COUNTEREXAMPLE"), "{stdout}");
    }
    let (code, _, stderr) = run(&["verify", file, "--domains", "3", "--cap", "10"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("144"), "{stderr}");
}

#[test]
fn verify_trivial_input() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.p");
    fs::write(&file, "tff(x, axiom, $true).\n").unwrap();
    let (code, stdout, _) = run(&["verify", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 1);
    assert!(stdout.starts_with("OK 1"), "{stdout}");
}

#[test]
fn prove_excluded_middle_in_both_modes() {
    for mode in ["rule", "axiom"] {
        let (code, stdout, _) = run(&["prove", "--mode", mode, &path("excluded_middle.p")]);
        assert_eq!(code, 0, "{mode}");
        assert!(stdout.starts_with("verdict: refuted\n"), "{stdout}");
        assert!(stdout.contains("0. $false ["), "{stdout}");
    }
}

#[test]
fn prove_saturates_satisfiable_input() {
    let (code, stdout, _) = run(&["prove", &path("satisfiable.p")]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("verdict: saturated\n"), "{stdout}");
}

fn stat(stdout: &str, key: &str) -> usize {
    let line = stdout.lines().find(|l| l.starts_with(&format!("{key}="))).unwrap();
    line[key.len() + 1..].parse().unwrap()
}

#[test]
fn axiom_mode_generates_variable_equations() {
    let (code, stdout, _) = run(&["prove", "--mode", "axiom", "--max-clauses", "200", &path("bool_domain.p")]);
    assert_eq!(code, 4);
    assert!(stdout.starts_with("verdict: limit-hit clauses"), "{stdout}");
    assert!(stat(&stdout, "var_equations") > 0);
    let (code, stdout, _) = run(&["prove", "--mode", "rule", &path("bool_domain.p")]);
    assert_eq!(code, 0);
    assert_eq!(stat(&stdout, "var_equations"), 0);
}

#[test]
fn bench_table_compares_modes() {
    let (code, stdout, _) = run(&["bench", "--sizes", "0,3", "--max-clauses", "300"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = stdout.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows.len(), 4);
    let generated = |k: &str, mode: &str| -> usize {
        let r = rows.iter().find(|r| r[0] == k && r[1] == mode).unwrap();
        r[r.len() - 5].parse().unwrap()
    };
    assert_eq!(generated("0", "axiom"), generated("0", "rule"));
    assert!(generated("3", "rule") < generated("3", "axiom"));
}
