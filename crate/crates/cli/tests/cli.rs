use std::path::PathBuf;

use proptest::prelude::*;
use propforget_cli::format::{self, Payload};
use propforget_cli::{run, EXIT_FALSE, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};

const PI: &str = "p q -a\np -q\nb -p\nc -p\n";
const SIGMA: &str = "p -a\np -q -b\nq -p\nc -p\n";
const WSC_T: &str = "-p -r\n-q r\n-s r\n-t\n";

fn write_tmp(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn invoke(args: &[&str]) -> Run {
    invoke_stdin(args, "")
}

fn invoke_stdin(args: &[&str], stdin: &str) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("propforget").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn canonical(text: &str, dnf: bool) -> Vec<Vec<String>> {
    format::parse(text, dnf).unwrap().canonical()
}

fn names(rows: &[&[&str]]) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<String> = r.iter().map(|s| s.to_string()).collect();
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

#[test]
fn forget_unfold_example() {
    let pi = write_tmp("forget_pi.txt", PI);
    let pi = pi.to_str().unwrap();
    let r = invoke(&["forget", "-f", "p,q", "--minimize", pi]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(canonical(&r.out, false), names(&[&["b", "-a"], &["c", "-a"]]));
    let r = invoke(&["forget", "-f", "q,p", pi]);
    assert_eq!(canonical(&r.out, false), names(&[&["b", "-a"], &["c", "-a"]]));
    // eliminating p first leaves a subsumed resolvent behind
    let r = invoke(&["forget", "-f", "p,q", pi]);
    assert_eq!(canonical(&r.out, false), names(&[&["b", "-a"], &["b", "c", "-a"], &["c", "-a"]]));
}

#[test]
fn forget_reads_stdin() {
    let r = invoke_stdin(&["forget", "--forget", "q", "--minimize", "-"], "-q\np q\n");
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.out, "p\n");
}

#[test]
fn forget_dnf_term() {
    let r = invoke_stdin(&["forget", "--dnf", "-f", "q", "-"], "p -q\n");
    assert_eq!(r.out, "p\n");
    let r = invoke_stdin(&["forget", "--dnf", "-f", "p", "-"], "p -q\n");
    assert_eq!(r.out, "-q\n");
}

#[test]
fn check_var_ind() {
    let t = write_tmp("var_ind.txt", "b -a\n");
    let r = invoke(&["check", "--task", "var-ind", "-f", "p", t.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.out, "true\n");
    let t = write_tmp("var_ind_false.txt", "p\n");
    let r = invoke(&["check", "--task", "var-ind", "-f", "p", t.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_FALSE);
}

#[test]
fn check_var_ent_json() {
    let pi = write_tmp("ent_pi.txt", PI);
    let sigma = write_tmp("ent_sigma.txt", SIGMA);
    let (p, s) = (pi.to_str().unwrap(), sigma.to_str().unwrap());
    let r = invoke(&["check", "--task", "var-ent", "-f", "p,q", "--format", "json", p, s]);
    assert_eq!(r.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["answer"], true);
    assert!(v["certificate"].is_null());

    let r = invoke(&["check", "--task", "var-ent", "-f", "p,q", "--format", "json", s, p]);
    assert_eq!(r.code, EXIT_FALSE);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["answer"], false);
    let mut clause: Vec<String> = serde_json::from_value(v["certificate"]["witness_clause"].clone()).unwrap();
    clause.sort();
    assert_eq!(clause, ["-a", "b"]);
}

#[test]
fn check_needs_second_theory() {
    let pi = write_tmp("needs_two.txt", PI);
    let r = invoke(&["check", "--task", "var-eq", "-f", "p", pi.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_USAGE);
    let r = invoke(&["check", "--task", "nope", pi.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_USAGE);
}

#[test]
fn wsc_example() {
    let t = write_tmp("wsc.txt", WSC_T);
    let r = invoke(&["wsc", "--target", "t", "--over", "p,q,s", t.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(canonical(&r.out, true), names(&[&["p", "q"], &["p", "s"]]));
}

#[test]
fn snc_example() {
    let r = invoke_stdin(&["snc", "--target", "q", "--over", "r", "-"], "-q r\n");
    assert_eq!(r.out, "r\n");
}

#[test]
fn define_example() {
    let t = write_tmp("define.txt", "-p a\n-p b\n-a -b p\n");
    let r = invoke(&["define", "--target", "p", "--over", "a,b", t.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.starts_with("true\nstrongest:\n"));
    let r = invoke(&["define", "--target", "p", "--over", "a", "--format", "json", t.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_FALSE);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert!(v["certificate"]["countermodel"].is_array());
}

#[test]
fn classify_report() {
    let r = invoke_stdin(&["classify", "--format", "json", "-"], "p q\n-p -q\np -q\n");
    assert_eq!(r.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["horn"], false);
    assert_eq!(v["krom"], true);
    assert_eq!(v["q_horn"]["h"], serde_json::json!([]));
    let r = invoke_stdin(&["classify", "-"], "p q r\n");
    assert!(r.out.contains("horn: false\n"));
    let r = invoke_stdin(&["classify", "--max-atoms", "1", "-"], "p q\n");
    assert!(r.out.contains("double horn: skipped"));
}

#[test]
fn pi_and_ip() {
    let r = invoke_stdin(&["pi", "-"], "p q\n-p -q\np -q\n");
    assert_eq!(canonical(&r.out, false), names(&[&["p"], &["-q"]]));
    let r = invoke_stdin(&["ip", "-"], "p q\n-p -q\np -q\n");
    assert_eq!(canonical(&r.out, true), names(&[&["p", "-q"]]));
    let r = invoke_stdin(&["ip", "--dnf", "-"], "p q\np\n");
    assert_eq!(r.out, "p\n");
}

#[test]
fn dimacs_roundtrip_through_forget() {
    let r = invoke_stdin(&["forget", "-f", "x2", "-"], "c demo\np cnf 3 2\n1 2 0\n-2 3 0\n");
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.out, "p cnf 3 1\n1 3 0\n");
}

#[test]
fn parse_errors_exit_two() {
    let r = invoke_stdin(&["pi", "-"], "p q\n1x\n");
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("line 2, column 1"), "{}", r.err);
    let r = invoke_stdin(&["pi", "-"], "p cnf 1 1\n2 0\n");
    assert_eq!(r.code, EXIT_USAGE);
    let r = invoke(&["pi", "/nonexistent/input.cnf"]);
    assert_eq!(r.code, EXIT_USAGE);
    let r = invoke(&["frobnicate", "-"]);
    assert_eq!(r.code, EXIT_USAGE);
}

#[test]
fn warnings_go_to_stderr() {
    let r = invoke_stdin(&["pi", "-"], "p -p\nq\n");
    assert_eq!(r.out, "q\n");
    assert!(r.err.contains("tautology"));
}

#[test]
fn resource_guard_exit_three() {
    // 10^5 prime implicants
    let text: String = (0..5)
        .map(|i| (0..10).map(|j| format!("a{i}_{j}")).collect::<Vec<_>>().join(" ") + "\n")
        .collect();
    let r = invoke_stdin(&["ip", "-"], &text);
    assert_eq!(r.code, EXIT_RESOURCE, "{}", r.err);
}

#[test]
fn output_is_deterministic() {
    let pi = write_tmp("determinism.txt", PI);
    let args = ["forget", "-f", "q,p", "--format", "json", pi.to_str().unwrap()];
    let first = invoke(&args).out;
    for _ in 0..5 {
        assert_eq!(invoke(&args).out, first);
    }
}

#[test]
fn help_exits_zero() {
    let r = invoke(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("forget"));
}

fn literal_strategy() -> impl Strategy<Value = String> {
    (prop::sample::select(vec!["p", "q", "r", "a_1", "B", "_x"]), any::<bool>())
        .prop_map(|(name, neg)| if neg { format!("-{name}") } else { name.to_owned() })
}

fn text_strategy() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::collection::vec(literal_strategy(), 0..5), 0..8).prop_map(|lines| {
        lines
            .into_iter()
            .map(|l| if l.is_empty() { "_|_".to_owned() } else { l.join(" ") } + "\n")
            .collect()
    })
}

proptest! {
    #[test]
    fn named_text_roundtrip(text in text_strategy()) {
        let doc = format::parse_named_text(&text, false).unwrap();
        let Payload::Cnf(t) = &doc.payload else { unreachable!() };
        let emitted = format::cnf_to_text(&doc.vocabulary, t);
        let again = format::parse_named_text(&emitted, false).unwrap();
        prop_assert_eq!(again.canonical(), doc.canonical());
        prop_assert!(again.warnings.is_empty());
    }

    #[test]
    fn dimacs_roundtrip(text in text_strategy()) {
        let doc = format::parse_named_text(&text, false).unwrap();
        let Payload::Cnf(t) = &doc.payload else { unreachable!() };
        // DIMACS has no zero-length clause
        prop_assume!(!t.has_empty_clause());
        let dimacs = format::cnf_to_dimacs(&doc.vocabulary, t);
        let back = format::parse_dimacs(&dimacs).unwrap();
        prop_assert!(back.warnings.is_empty());
        let Payload::Cnf(t2) = &back.payload else { unreachable!() };
        prop_assert_eq!(t2, t);
        prop_assert_eq!(format::cnf_to_dimacs(&back.vocabulary, t2), dimacs);
    }
}
