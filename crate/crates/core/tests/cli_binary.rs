use std::io::Write;
use std::process::{Command, Output};

use dr_ktheory::cli::{CommandResult, ResultDocument};

fn drk(args: &[&str], input: &str) -> Output {
    let mut file = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    file.write_all(input.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap().to_owned();
    let mut full: Vec<&str> = args.to_vec();
    full.push(&path);
    Command::new(env!("CARGO_BIN_EXE_drk")).args(&full).output().unwrap()
}

const SWAP: &str = "model_type = \"finite_map\"\nlabels = [\"a\", \"b\"]\nt1 = [\"b\", \"a\"]\nt2 = [\"a\", \"b\"]\n";
const FIXED: &str =
    "model_type = \"finite_map\"\nlabels = [\"a\", \"b\"]\nt1 = [0, 1]\nt2 = [0, 1]\ninvariant_subset = [\"a\"]\n";

#[test]
fn machine_output_round_trips() {
    for cmd in ["k0", "ideal", "condition-m", "coboundary", "verdict", "invariants"] {
        let out = drk(&["--format", "machine", cmd], FIXED);
        assert!(out.status.success(), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8(out.stdout).unwrap();
        let doc: ResultDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.command, cmd);
        assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", text);
    }
}

#[test]
fn sequential_flag_gives_identical_bytes() {
    let a = drk(&["--format", "machine", "condition-m", "--brute-force", "2"], SWAP);
    let b = drk(&["--format", "machine", "--sequential", "condition-m", "--brute-force", "2"], SWAP);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn human_output_names_the_group() {
    let out = drk(&["k0"], "model_type = \"two_graph\"\nlabels = [\"v\"]\na1 = [[3]]\na2 = [[5]]\n");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ℤ/2"), "{text}");
}

#[test]
fn verdict_respects_denied_hypotheses() {
    let out = drk(&["--format", "machine", "verdict", "--deny", "P"], FIXED);
    assert!(out.status.success());
    let doc: ResultDocument = serde_json::from_slice(&out.stdout).unwrap();
    let CommandResult::Verdict(v) = doc.result else {
        panic!("wrong result kind");
    };
    assert_eq!(format!("{:?}", v.verdict.conclusion), "Inconclusive");
}

#[test]
fn input_errors_exit_with_one_and_a_line_number() {
    let bad = "model_type = \"finite_map\"\nt1 = [1, 0]\nt2 = [1, 1]\n";
    let out = drk(&["k0"], bad);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");

    let out = drk(&["k0"], "model_type = \"raw_matrices\"\nm1 = [[0, 1], [0, 0]]\nm2 = [[0, 0], [1, 0]]\n");
    assert_eq!(out.status.code(), Some(1));

    let out = drk(&["k0"], "model_type = \"finite_map\"\nt1 = [0]\nt2 = [0]\nbogus = 1\n");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_drk"))
        .args(["k0", "/nonexistent/model.toml"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
