//! Command-line behaviour: exit codes, frozen reports and the machine format.

use std::path::PathBuf;
use std::process::Command;

use pemb::cli::corpus::CORPUS;
use pemb::cli::report::same_structure;
use pemb::cli::{parse_problem, run};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares against `tests/golden/<name>`; `PEMB_BLESS=1` rewrites the file.
fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("PEMB_BLESS").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "report differs from {}", path.display());
}

/// Same matrices in every degree; basis labels may differ.
fn same_matrices(f: &pemb::graded::GradedMap, g: &pemb::graded::GradedMap) -> bool {
    let w = f.source().window();
    w.degrees().all(|d| f.block(d) == g.block(d))
}

fn pemb(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_pemb")).args(args).output().unwrap()
}

#[test]
fn every_example_matches_its_frozen_report() {
    for ex in CORPUS {
        let out = run(["examples", "run", ex.name]);
        let code = out.code;
        check_golden(&format!("{}.{}.txt", ex.name, ex.command), &format!("exit {code}\n{}", out.text));
    }
}

#[test]
fn reports_are_deterministic() {
    for ex in CORPUS {
        let a = run(["--format", "machine", ex.command, ex.name]);
        let b = run(["--format", "machine", ex.command, ex.name]);
        assert_eq!(a, b, "{}", ex.name);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(["complement", "s2_in_s6"]).code, 0);
    assert_eq!(run(["complement", "hopf_torus"]).code, 1);
    assert_eq!(run(["stable-square", "two_s7_in_s15"]).code, 2);
    assert_eq!(run(["complement", "/nonexistent/file.pemb"]).code, 2);
    assert_eq!(run(["complement"]).code, 2);
    assert_eq!(run(["complement", "s2_in_s6", "--field", "six"]).code, 2);
    assert_eq!(run(["complement", "s2_in_s6", "--field", "4"]).code, 2);
    assert_eq!(run(["examples", "run", "no_such_example"]).code, 2);
    assert_eq!(run(["complement", "s2_in_s6", "--field", "5"]).code, 2);
    assert_eq!(run(["lefschetz", "s2_in_s6", "--field", "5"]).code, 0);
}

#[test]
fn binary_routes_failures_to_stderr() {
    let ok = pemb(&["complement", "s2_in_s6"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("deg 0:1, deg 3:1"));
    assert!(ok.stderr.is_empty());

    let bad = pemb(&["complement", "hopf_torus"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
    let err = String::from_utf8_lossy(&bad.stderr);
    assert!(err.contains("unknotting"), "{err}");
    assert!(err.contains("r=1, 2m−n+2=3"), "{err}");
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = std::env::temp_dir().join(format!("pemb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.pemb");
    std::fs::write(&path, "window 0 4\ncdga A {\n  generator x deg 2\n  d x = x +\n}\n").unwrap();
    let out = run(["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.text.contains("line 4"), "{}", out.text);
    // Validation failures point at the statement that failed.
    std::fs::write(&path, "window 0 4\n\ncdga A {\n  generator x deg 2\n\n  d x = x\n}\n").unwrap();
    let out = run(["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.text.contains("line 6"), "{}", out.text);
    assert!(out.text.contains("differential must raise degree by 1"), "{}", out.text);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn examples_list_names_every_example() {
    let out = run(["examples", "list"]);
    assert_eq!(out.code, 0);
    for ex in CORPUS {
        assert!(out.text.contains(ex.name));
    }
}

#[test]
fn machine_problem_round_trips() {
    for ex in CORPUS {
        let original = parse_problem(ex.text, None).unwrap();
        let out = run(["--format", "machine", "validate", ex.name]);
        assert_eq!(out.code, 0, "{}", out.text);
        let again = parse_problem(&out.text, None).unwrap_or_else(|e| panic!("{}: {e}\n{}", ex.name, out.text));
        assert_eq!(original.algebras.len(), again.algebras.len());
        for (a, b) in original.algebras.iter().zip(&again.algebras) {
            assert!(same_structure(a, b), "{}: {}", ex.name, a.name);
        }
        assert_eq!(original.morphisms.len(), again.morphisms.len());
        for ((_, f), (_, g)) in original.morphisms.iter().zip(&again.morphisms) {
            assert!(same_matrices(&f.map, &g.map), "{}", ex.name);
        }
        let (p, q) = (original.problem().unwrap(), again.problem().unwrap());
        assert_eq!(p.n, q.n);
        assert_eq!(p.branches.len(), q.branches.len());
    }
}

#[test]
fn machine_reports_parse_back() {
    let cases = [
        ("complement", "s2_in_s6"),
        ("complement", "wedge_in_s8"),
        ("complement", "cp2_in_s8"),
        ("stable-square", "s2_in_s9_stable"),
        ("punctured-square", "s2_in_s6"),
        ("lefschetz", "point_in_sn"),
        ("gysin", "cp1_in_cp2_gysin"),
    ];
    for (cmd, name) in cases {
        let out = run(["--format", "machine", cmd, name]);
        assert_eq!(out.code, 0, "{cmd} {name}: {}", out.text);
        let pf = parse_problem(&out.text, None).unwrap_or_else(|e| panic!("{cmd} {name}: {e}\n{}", out.text));
        assert!(!pf.algebras.is_empty());
    }
}

#[test]
fn complement_model_survives_the_machine_format() {
    let direct = parse_problem(CORPUS.iter().find(|e| e.name == "wedge_in_s8").unwrap().text, None).unwrap();
    let res = pemb::pipeline::complement_model(direct.problem().unwrap()).unwrap();
    let out = run(["--format", "machine", "complement", "wedge_in_s8"]);
    let pf = parse_problem(&out.text, None).unwrap();
    let c = pf.algebra("C").unwrap();
    assert!(same_structure(c, &res.model));
    let (_, lambda) = pf.morphisms.iter().find(|(n, _)| n == "lambda").unwrap();
    assert!(same_matrices(&lambda.map, &res.lambda.map));
}

#[test]
fn field_override_changes_the_field() {
    let out = run(["--format", "machine", "validate", "s2_in_s6", "--field", "5"]);
    assert_eq!(out.code, 0);
    assert!(out.text.starts_with("field prime 5"), "{}", out.text);
}
