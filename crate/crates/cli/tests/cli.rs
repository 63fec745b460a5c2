use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tfa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tfa"))
        .args(args)
        .env_remove("TFA_STEP_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_model(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_schema_valid(report: &Value) {
    let validator = jsonschema::validator_for(&schema()).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(report)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
}

#[test]
fn analyze_s0_uncontrolled() {
    let o = tfa(&["analyze", "@s0", "--inputs", "uncontrolled"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "S0 is SU (dimension 1); globally identifiable: k23"
    );
}

#[test]
fn analyze_s1_full() {
    let o = tfa(&["analyze", "@s1", "--inputs", "full"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "S1 is SLI (degree 2); globally identifiable: k01, k12, k23, x20"
    );
}

#[test]
fn analyze_s1_impulse() {
    let o = tfa(&["analyze", "@s1", "--inputs", "impulse"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("S1 is 𝒰-SU (dimension 1)"));
}

#[test]
fn analyze_reads_model_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_model(dir.path(), "s1.model", tfa_core::model::bundled::S1);
    let o = tfa(&["analyze", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("S1 is SLI (degree 2)"));
}

#[test]
fn report_is_deterministic_and_schema_valid() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = tfa(&[
            "analyze",
            "@s1",
            "--validate",
            "--compare-order",
            "lex:k21,k32,k01,k12,k23,x20",
            "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    assert_eq!(bytes_a, std::fs::read(&b).unwrap());

    let report: Value = serde_json::from_slice(&bytes_a).unwrap();
    assert_schema_valid(&report);
    assert_eq!(report["verdict"]["classification"], "SLI");
    assert_eq!(report["verdict"]["degree"], 2);
    assert_eq!(report["verdict"]["seed"], 1);
    assert_eq!(report["verdict"]["seeds"].as_array().unwrap().len(), 2);
    assert_eq!(report["invariants"]["count"], 6);
    assert_eq!(report["solutions"]["count"], 2);
    assert_eq!(report["validation"]["all_coincide"], true);
    assert_eq!(report["ordering_experiment"]["same_ideal"], true);
    assert!(report.get("timings_ms").is_none());
}

#[test]
fn json_on_stdout_moves_summary_to_stderr() {
    let o = tfa(&["analyze", "@s0", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_schema_valid(&report);
    assert_eq!(report["verdict"]["globally_identifiable"][0], "k23");
    assert!(String::from_utf8_lossy(&o.stderr).contains("S0 is SU"));
}

#[test]
fn restricted_report_and_timings() {
    let o = tfa(&[
        "analyze",
        "@s1",
        "--inputs",
        "impulse",
        "--timings",
        "--json",
        "-",
    ]);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_schema_valid(&report);
    assert_eq!(report["input_set"]["mode"], "restricted");
    assert_eq!(report["input_set"]["signals"][0], "impulse");
    assert_eq!(report["verdict"]["label"], "𝒰-SU");
    assert!(report["timings_ms"]["classification"].is_number());
}

#[test]
fn seed_zero_records_the_drawn_seed() {
    let o = tfa(&["analyze", "@s0", "--seed", "0", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["verdict"]["seed_from_entropy"], true);
    let seed = report["verdict"]["seed"].as_u64().unwrap();
    assert_ne!(seed, 0);
    assert_eq!(report["verdict"]["seeds"][0]["seed"].as_u64(), Some(seed));
}

#[test]
fn malformed_files_exit_with_parse_code() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = [
        (
            "syntax",
            "name x\nparams a\nstates 1\noutputs 1\nA 1 1 = -a +* 2\nC 1 1 = 1\n",
        ),
        (
            "undeclared",
            "name x\nparams a\nstates 1\noutputs 1\nA 1 1 = -b\nC 1 1 = 1\n",
        ),
        (
            "range",
            "name x\nparams a\nstates 1\noutputs 1\nA 2 1 = -a\nC 1 1 = 1\n",
        ),
        (
            "row",
            "name x\nparams a\nstates 2\noutputs 1\nA row 1 = -a\nC 1 1 = 1\n",
        ),
        (
            "duplicate",
            "name x\nparams a\nstates 1\noutputs 1\nA 1 1 = -a\nA 1 1 = -a\nC 1 1 = 1\n",
        ),
        ("no_states", "name x\nparams a\noutputs 1\nC 1 1 = 1\n"),
        (
            "keyword",
            "name x\nparams a\nstates 1\noutputs 1\nD 1 1 = a\n",
        ),
        (
            "reserved",
            "name x\nparams s\nstates 1\noutputs 1\nA 1 1 = -s\nC 1 1 = 1\n",
        ),
        (
            "class",
            "name x\nparams a\nstates 1\noutputs 1\nclass compartmental\nA 1 1 = a\nC 1 1 = 1\n",
        ),
        ("empty", ""),
    ];
    for (name, text) in corpus {
        let path = write_model(dir.path(), &format!("{name}.model"), text);
        let o = tfa(&["analyze", &path]);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: parse error"));
    }
}

#[test]
fn exit_code_table() {
    assert_eq!(
        tfa(&["analyze", "/nonexistent/file.model"]).status.code(),
        Some(1)
    );
    assert_eq!(tfa(&["analyze"]).status.code(), Some(2));
    assert_eq!(
        tfa(&["analyze", "@s0", "--inputs", "impulse"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tfa(&["analyze", "@s0", "--order", "lex:k01,q"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tfa(&["analyze", "@s0", "--step-budget", "2"]).status.code(),
        Some(3)
    );

    let dir = tempfile::tempdir().unwrap();
    let blind = write_model(
        dir.path(),
        "blind.model",
        "name x\nparams a\nstates 1\noutputs 1\nA 1 1 = -a\n",
    );
    assert_eq!(tfa(&["analyze", &blind]).status.code(), Some(4));
    assert_eq!(tfa(&["invariants", &blind]).status.code(), Some(4));
}

#[test]
fn step_budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_tfa"))
        .args(["analyze", "@s0"])
        .env("TFA_STEP_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_tfa"))
        .args(["analyze", "@s0", "--step-budget", "1000000"])
        .env("TFA_STEP_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn invariants_listing() {
    let o = tfa(&["invariants", "@s0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("5 invariants of S0"));
    assert!(text.contains("phi0 = k01*k12*k23    [V(1,1) denominator s^0]"));
    assert!(text.contains("phi4 = k12*x20    [V(1,1) numerator s^1]"));

    let text = stdout(&tfa(&["invariants", "@s1", "--inputs", "full"]));
    assert!(text.contains("phi5 = k12*k23    [W(1,1) numerator s^0]"));

    let text = stdout(&tfa(&["invariants", "@s1", "--inputs", "impulse"]));
    assert!(text.contains("= k12*k23*x20 + k12*k23    [Y(1) numerator s^0]"));
}

#[test]
fn groebner_comparison() {
    let o = tfa(&[
        "groebner",
        "@s1",
        "--order",
        "lex:k21,k32,k01,k12,k23,x20",
        "--compare-order",
        "lex:k23,k32,x20,k21,k12,k01",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("lex: k21 > k32 > k01 > k12 > k23 > x20"));
    assert!(text.contains("independent conditions: 4"));
    assert!(text.contains("same ideal; 2 elements in common"));

    let o = tfa(&["groebner", "@s1", "--order", "lex:k21,k32,k01,k12,k23,q"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("y.csv");
    let o = tfa(&[
        "simulate",
        "@s1",
        "--theta",
        "k01=1,k12=1,k21=3,k23=2,k32=1,x20=1",
        "--input",
        "impulse",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 202);
    assert_eq!(lines[0], "t,y1");
    let y1: f64 = lines[21].split(',').nth(1).unwrap().parse().unwrap();
    assert!((y1 - 0.24683851644246063).abs() < 1e-9);

    assert_eq!(
        tfa(&["simulate", "@s1", "--theta", "k01=1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        tfa(&[
            "simulate",
            "@s0",
            "--theta",
            "k01=1,k12=1,k21=3,k23=2,k32=1,x20=1",
            "--input",
            "step"
        ])
        .status
        .code(),
        Some(2)
    );
}
