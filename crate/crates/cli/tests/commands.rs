use std::process::{Command, Output};

use curvedspec_cli::dataset::Dataset;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvedspec"))
        .args(args)
        .env_remove("CURVEDSPEC_CONFIG")
        .output()
        .expect("binary runs")
}

#[test]
fn identical_runs_identical_bytes() {
    for fig in ["fig1", "fig3"] {
        let a = run(&["figures", fig]);
        let b = run(&["figures", fig]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn config_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"s_override": null, "output_format": "json"}"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_curvedspec"))
        .args(["figures", "fig1"])
        .env("CURVEDSPEC_CONFIG", &cfg)
        .output()
        .unwrap();
    assert!(o.status.success());
    let ds = Dataset::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert!(ds.meta_value("s_convention").unwrap().starts_with("derived("));
}

#[test]
fn process_exit_codes() {
    assert_eq!(run(&["figures", "fig9"]).status.code(), Some(1));
    assert_eq!(run(&["check"]).status.code(), Some(3));
    assert_eq!(run(&["query", "spectrum"]).status.code(), Some(0));
}
