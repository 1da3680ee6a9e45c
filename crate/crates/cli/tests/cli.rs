use coxnorm::category::Abelianization;
use coxnorm_cli::report::render_text;
use coxnorm_cli::{exit_code, run, Command, GroupSpec, Report, RunConfig};
use std::io::Write;
use std::process::Command as Process;

const A5: &str = "nodes: a b c d e\nedge a b 3\nedge b c 3\nedge c d 3\nedge d e 3\n";

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn coxnorm(args: &[&str]) -> (String, i32) {
    let out = Process::new(env!("CARGO_BIN_EXE_coxnorm")).args(args).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn json_round_trips() {
    for (cmd, name) in [
        (Command::Classify, "a3-in-d5"),
        (Command::Brink, "odd-graph"),
        (Command::Normalizer, "odd-graph-category"),
        (Command::Classify, "extension-scan"),
    ] {
        let r = run(&RunConfig::with_example(cmd, name)).unwrap();
        let json = serde_json::to_string_pretty(&r).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r, "{name}");
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
    }
}

#[test]
fn every_registered_example_names_its_command() {
    for e in coxnorm_cli::examples::registry() {
        assert!(coxnorm_cli::examples::find(e.name).is_some());
        assert!(coxnorm_cli::examples::listing().contains(e.name));
    }
    let err = run(&RunConfig::with_example(Command::Brink, "a1-in-a3")).unwrap_err();
    assert!(err.to_string().contains("classify"));
    assert!(run(&RunConfig::with_example(Command::Classify, "nope")).is_err());
}

#[test]
fn group_spec_from_cycles() {
    let pi = file(A5);
    let gens = file("# the flip\n(a e)(b d)\n");
    let mut cfg = RunConfig::new(Command::Normalizer);
    cfg.pi = Some(pi.path().display().to_string());
    cfg.j = Some("b,c,d".into());
    cfg.gamma_pi = GroupSpec::parse(gens.path().to_str().unwrap()).unwrap();
    assert_eq!(cfg.gamma_pi, GroupSpec::Cycles(vec!["(a e)(b d)".into()]));
    let r = run(&cfg).unwrap();
    let n = r.normalizer.unwrap();
    assert_eq!(n.gamma_pi, "order 2");
    assert!(n.axioms_verified);

    cfg.gamma_pi = GroupSpec::Cycles(vec!["(a b)".into()]);
    assert!(run(&cfg).is_err(), "(a b) is not a diagram automorphism of A5");
    cfg.gamma_pi = GroupSpec::Cycles(vec!["(a e)(a d)".into()]);
    assert!(run(&cfg).is_err());
}

#[test]
fn tree_seed_keeps_the_abelianization() {
    let pi = file("nodes: a b c d\nedge a b 3\nedge b c 3\nedge a c 3\nedge c d 5\nedge a d 3\n");
    let mut cfg = RunConfig::new(Command::Normalizer);
    cfg.pi = Some(pi.path().display().to_string());
    cfg.j = Some("a".into());
    cfg.gamma_j = GroupSpec::Trivial;
    cfg.gamma_pi = GroupSpec::Trivial;
    let ab = |cfg: &RunConfig| -> Abelianization {
        run(cfg).unwrap().normalizer.unwrap().category.abelianization.unwrap()
    };
    let base = ab(&cfg);
    for seed in [1, 2, 3] {
        cfg.tree_seed = Some(seed);
        assert_eq!(ab(&cfg), base);
    }
}

#[test]
fn classify_reports_type_and_opposition() {
    let pi = file(A5);
    let mut cfg = RunConfig::new(Command::Classify);
    cfg.pi = Some(pi.path().display().to_string());
    cfg.j = Some("A2".into());
    let r = run(&cfg).unwrap();
    let c = r.classify.as_ref().unwrap();
    assert_eq!(c.spherical_type.as_deref(), Some("A5"));
    assert_eq!(c.coxeter_group_order, Some(720));
    let op = c.opposition.as_ref().unwrap();
    assert!(op.contains(&("a".into(), "e".into())) && op.contains(&("c".into(), "c".into())));
    assert_eq!(c.isometries[0].classes.len(), 2);
    assert!(render_text(&r).contains("opposition: a<->e b<->d"));
}

#[test]
fn exit_codes() {
    let (_, code) = coxnorm(&["normalizer", "--pi", "/nonexistent/diagram", "--j", "a"]);
    assert_eq!(code, 1);
    let bad = file("nodes: a b\nedge a b seven\n");
    let (_, code) = coxnorm(&["classify", "--pi", bad.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    let mut cfg = RunConfig::new(Command::Normalizer);
    cfg.pi = Some("/nonexistent".into());
    cfg.j = Some("a".into());
    assert_eq!(exit_code(&run(&cfg)), 1);

    let cache = tempfile::tempdir().unwrap();
    let (_, code) = coxnorm(&[
        "--cache",
        cache.path().to_str().unwrap(),
        "--budget",
        "10",
        "normalizer",
        "--pi",
        "leech",
        "--j",
        "A2",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn dot_and_text_formats() {
    let (dot, code) = coxnorm(&["--format", "dot", "normalizer", "--example", "odd-graph-category"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph Q4 {") && dot.trim_end().ends_with('}'));
    let (_, code) = coxnorm(&["--format", "dot", "classify", "--example", "a1-in-a3"]);
    assert_eq!(code, 1);
    let (text, code) = coxnorm(&["brink", "--example", "odd-graph"]);
    assert_eq!(code, 0);
    assert!(text.contains("agree: yes"));
}
