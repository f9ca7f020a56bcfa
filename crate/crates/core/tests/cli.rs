use std::io::Write;
use std::process::{Command, Output, Stdio};

fn idealkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idealkit")).args(args).output().unwrap()
}

fn script(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".ik").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn run_prints_canonical_ideals() {
    let f = script(
        "# two worked examples\nring A = [a, b];\nideal I = (a^2, a*b) in A; print symb_min(I,2);\n\
         ring R = [x, y, z, t];\nprint saturate((x^2,x*y,z^2,z*t),(x,y,z,t)); # trailing comment\nprint I^0;\n",
    );
    let o = idealkit(&["run", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "(a^2)\n(x^2, x*y, x*z, z^2, z*t)\n(1)\n");
}

#[test]
fn failed_assertion_exits_one() {
    let f = script("ring A = [a];\nassert a == a^2;\nprint a;\n");
    let o = idealkit(&["run", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "(a)\n");
    assert!(stderr(&o).contains("2:1"), "{}", stderr(&o));
}

#[test]
fn parse_and_evaluation_errors_exit_two_with_position() {
    let f = script("ring A = [a];\nprint (a + ;\n");
    let o = idealkit(&["run", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2:12"), "{}", stderr(&o));
    assert!(stderr(&o).contains("`;`"));

    let f = script("ring A = [a];\nprint q;\n");
    let o = idealkit(&["run", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2:7") && stderr(&o).contains("unbound"), "{}", stderr(&o));

    let f = script("ring A = [a]; ring B = [b];\nideal I = (a) in A;\nideal J = (b) in B;\nprint I + J;\n");
    let o = idealkit(&["run", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ring mismatch"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(idealkit(&[]).status.code(), Some(2));
    assert_eq!(idealkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(idealkit(&["run", "/nonexistent/script.ik"]).status.code(), Some(2));
    assert_eq!(idealkit(&["fuzz", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(idealkit(&["fuzz", "--char", "4"]).status.code(), Some(2));
    assert_eq!(idealkit(&["fuzz", "--cases", "0"]).status.code(), Some(2));
    assert_eq!(idealkit(&["fuzz", "--seed", "x"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_reports_json() {
    let o = idealkit(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS saturation_by_maximal_ideal_does_not_factor"));

    let o = idealkit(&["verify", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["suite"], "verify");
    let cases = v["cases"].as_u64().unwrap();
    assert!(cases >= 20);
    assert_eq!(v["passes"].as_u64(), Some(cases));
    assert_eq!(v["failures"].as_array().map(Vec::len), Some(0));
    assert_eq!(v["checks"].as_array().map(Vec::len), Some(cases as usize));
}

#[test]
fn fuzz_reports_are_deterministic() {
    let args = ["fuzz", "--seed", "7", "--cases", "40", "--suite", "thm38", "--json"];
    let a = idealkit(&args);
    let b = idealkit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["suite"], "thm38");
    assert_eq!(v["cases"], 40);
    assert_eq!(v["passes"], 40);
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn fuzz_runs_several_suites_and_characteristics() {
    let o = idealkit(&["fuzz", "--cases", "15", "--suite", "thm44,cor46", "--char", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[1]["suite"], "cor46");
    assert_eq!(reports[1]["characteristic"], 2);

    let o = idealkit(&["fuzz", "--cases", "5", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 11);
}

#[test]
fn repl_reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_idealkit"))
        .arg("repl")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"ring A = [a, b];\nideal I = (a^2, a*b);\nprint witness(I, min);\nprint nope;\nprint ass(I);\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "b");
    assert!(lines[1].contains("unbound"));
    assert_eq!(lines[2], "{(a), (a, b)}");
}

#[test]
fn fuzz_counterexample_scripts_rerun() {
    // a passing instance script, as emitted for failures, runs cleanly
    let f = script(
        "ring A = [a, b];\nring B = [x];\nring R = join(A, B);\nideal I = (b^2, a^3*b) in A;\nideal K = (a*b) in A;\n\
         ideal I2 = (b^2) in A;\nideal C = (b, a^2) in A;\nideal J = (x^2) in B;\nideal L = (1) in B;\n\
         assert check_depth_reg(I, K, J, L, 3, 0);\nassert check_filt(satpowers(I, K), satpowers(I2, K), satpowers(J, L), C, 3);\n",
    );
    let o = idealkit(&["run", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}
