use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use cws_symmetry::cws::canonical_equal;
use cws_symmetry::text::{parse_code, parse_graph, parse_input, InputFile};
use cws_symmetry::zoo;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn cwssym(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cwssym"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn ok(args: &[&str], stdin: &str) -> String {
    let r = cwssym(args, stdin);
    assert_eq!(r.code, 0, "{:?} failed: {}", args, r.stderr);
    r.stdout
}

fn value<'a>(report: &'a str, key: &str) -> &'a str {
    let prefix = format!("{}: ", key);
    report
        .lines()
        .find_map(|l| l.trim_start_matches("# ").strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no {:?} in\n{}", key, report))
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn zoo_output_reads_back_as_the_library_code() {
    let cases = [
        (vec!["zoo", "five"], zoo::five_qubit()),
        (vec!["zoo", "five", "--x-variant"], zoo::five_qubit_x_variant()),
        (vec!["zoo", "steane"], zoo::steane()),
        (vec!["zoo", "toric", "--L", "3"], zoo::toric(3).unwrap().code),
        (vec!["zoo", "ghz", "--n", "4"], zoo::ghz_minus(4).unwrap()),
        (vec!["zoo", "ghz", "--n", "4", "--shifted"], zoo::ghz_minus_shifted(4).unwrap()),
    ];
    for (args, code) in cases {
        let text = ok(&args, "");
        assert_eq!(parse_code(&text).unwrap().code, code, "{:?}", args);
    }
}

#[test]
fn canon_of_the_five_qubit_code() {
    let five = ok(&["zoo", "five"], "");
    let canon = ok(&["canon"], &five);
    let parsed = parse_code(&canon).unwrap().code;
    assert_eq!(parsed.m(), 4);
    assert_eq!(parsed.classical().len(), 1);
    assert!(canonical_equal(&parsed, &zoo::five_qubit()));
    assert_eq!(ok(&["canon", "-"], &canon), canon);
    let x_variant = ok(&["zoo", "five", "--x-variant"], "");
    assert_eq!(ok(&["canon"], &x_variant), canon);
}

#[test]
fn steane_sym_check_reports_cyclic_symmetry() {
    let steane = ok(&["zoo", "steane"], "");
    let report = ok(&["sym-check", "--perm", "(0 1 2 3 4 5 6)"], &steane);
    assert_eq!(value(&report, "symmetric"), "yes");
    assert_eq!(value(&report, "dense-symmetric"), "yes");
    assert_eq!(value(&report, "sufficient"), "yes");
    let report = ok(&["sym-check", "--perm", "(0 1)"], &steane);
    assert_eq!(value(&report, "symmetric"), "no");
    assert_eq!(value(&report, "oracle-agrees"), "yes");
}

#[test]
fn toric_pipeline_finds_no_translation_invariant_graph() {
    let toric = ok(&["zoo", "toric", "--L", "2"], "");
    let graph = ok(&["to-graph"], &toric);
    assert!(matches!(parse_input(&graph).unwrap(), InputFile::Graph(_)));
    let report = ok(&["orbit", "--perms", "Th;Tv"], &graph);
    assert_eq!(value(&report, "joint-invariant"), "0");
    assert_eq!(
        value(&report, "verdict"),
        "no orbit member is invariant under all permutations"
    );
    assert_ne!(value(&report, "invariant[Th]"), "0");
}

#[test]
fn state_extension_output_is_the_same_code() {
    let steane = ok(&["zoo", "steane"], "");
    let out = ok(&["state-extend", "--perms", "(0 1 2 3 4 5 6)"], &steane);
    assert_eq!(value(&out, "state-invariant"), "yes");
    assert_eq!(value(&out, "reconstruction-equal"), "yes");
    let back = parse_code(&out).unwrap().code;
    assert!(canonical_equal(&back, &zoo::steane()));
    let oracle = ok(&["oracle", "-", "--against", &scratch_file("steane.txt", &steane)], &out);
    assert_eq!(value(&oracle, "agree"), "yes");
    assert_eq!(value(&oracle, "dense-equal"), "yes");

    let toric = ok(&["zoo", "toric", "--L", "2"], "");
    let out = ok(&["state-extend", "--perms", "Th;Tv"], &toric);
    assert!(out.contains("layout: toric L=2"));
    assert!(canonical_equal(&parse_code(&out).unwrap().code, &zoo::toric(2).unwrap().code));
}

fn scratch_file(name: &str, contents: &str) -> String {
    let path = scratch(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn to_graph_writes_dot_and_a_readable_graph_file() {
    let steane = ok(&["zoo", "steane"], "");
    let dot = scratch("steane.dot");
    let out = ok(&["to-graph", "--dot", dot.to_str().unwrap()], &steane);
    let file = parse_graph(&out).unwrap();
    assert_eq!(std::fs::read_to_string(&dot).unwrap(), file.graph.to_dot());
    assert_eq!(file.classical.as_ref().unwrap().len(), 2);
    assert!(value(&out, "lc-word").contains("F@"));
    let code = file.graph.cws_code(file.classical.unwrap()).unwrap();
    assert_eq!(code.dimension(), 2);
}

#[test]
fn oracle_self_check() {
    let five = ok(&["zoo", "five"], "");
    let report = ok(&["oracle"], &five);
    for key in ["hermitian", "idempotent", "trace-matches-dimension", "canonical-projector-equal", "oracle-ok"] {
        assert_eq!(value(&report, key), "yes", "{}", key);
    }
    assert_eq!(value(&report, "code-dimension"), "2");
}

#[test]
fn output_is_deterministic() {
    let steane = ok(&["zoo", "steane"], "");
    for args in [
        vec!["canon"],
        vec!["to-graph"],
        vec!["state-extend", "--perms", "(0 1 2 3 4 5 6)"],
        vec!["orbit", "--order", "3"],
    ] {
        assert_eq!(ok(&args, &steane), ok(&args, &steane), "{:?}", args);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(cwssym(&["canon"], "p=2 n=2\nZQ\n").code, 1);
    assert_eq!(cwssym(&["canon"], "p=4 n=1\nZ\n").code, 1);
    assert_eq!(cwssym(&["canon"], "p=2 n=2\nXI\nZI\n").code, 2);
    assert_eq!(cwssym(&["no-such-command"], "").code, 1);
    assert_eq!(cwssym(&["canon", "/nonexistent/file"], "").code, 1);

    let five = ok(&["zoo", "five"], "");
    assert_eq!(cwssym(&["sym-check", "--perm", "(0 9)"], &five).code, 1);
    assert_eq!(cwssym(&["sym-check", "--perm", "Th"], &five).code, 1);
    let failed = cwssym(&["state-extend", "--perms", "(0 1)"], &five);
    assert_eq!(failed.code, 2);
    assert_eq!(value(&failed.stdout, "extension"), "failed");
    assert_eq!(value(&failed.stdout, "reason"), "code-not-symmetric");

    let big = ok(&["zoo", "toric", "--L", "3"], "");
    assert_eq!(cwssym(&["oracle"], &big).code, 3);
    let steane = ok(&["zoo", "steane"], "");
    assert_eq!(cwssym(&["orbit", "--order", "7", "--bound", "10"], &steane).code, 3);
    assert_eq!(cwssym(&["orbit"], &steane).code, 1);
    assert_eq!(cwssym(&["zoo", "toric", "--L", "1"], "").code, 2);
}

#[test]
fn large_codes_skip_the_dense_oracle() {
    let big = ok(&["zoo", "toric", "--L", "3"], "");
    let report = ok(&["sym-check", "--perm", "Th"], &big);
    assert_eq!(value(&report, "symmetric"), "yes");
    assert_eq!(value(&report, "dense-symmetric"), "skipped");
}

#[test]
fn classical_probe_on_steane() {
    let steane = ok(&["zoo", "steane"], "");
    let report = ok(&["classical-probe", "--perms", "(0 1 2 3 4 5 6)"], &steane);
    assert_eq!(value(&report, "any-classical-invariant"), "yes");
}
