//! One line per acceptance criterion, decided by the conformance suite and,
//! for determinism, by running the binary twice.

use std::path::Path;
use std::process::{Command, ExitCode};

use curvedspec_cli::check::{self, Invariant};
use curvedspec_cli::config::RunConfig;

const CRITERIA: [(u8, &str); 14] = [
    (1, "parameter consistency"),
    (2, "LFH spectrum"),
    (3, "SUSY structure"),
    (4, "conformal algebra"),
    (5, "PTII spectrum"),
    (6, "normalization"),
    (7, "contraction"),
    (8, "hypergeometric limit"),
    (9, "angular reduction"),
    (10, "quadrature anchor"),
    (11, "conformance findings"),
    (12, "figure shapes"),
    (13, "Rosen-Morse"),
    (14, "determinism"),
];

fn summarize(rows: &[&Invariant]) -> String {
    rows.iter()
        .map(|i| format!("{}={:.6e} ({})", i.id, i.measured, i.status.as_str()))
        .collect::<Vec<_>>()
        .join("; ")
}

fn binary_twice(dir: &Path) -> Result<bool, String> {
    let exe = env!("CARGO_BIN_EXE_curvedspec");
    let mut same = true;
    for fig in ["fig1", "fig2", "fig3", "fig4"] {
        for format in ["csv", "json"] {
            let mut outputs = Vec::new();
            for run in 0..2 {
                let path = dir.join(format!("{fig}-{run}.{format}"));
                let status = Command::new(exe)
                    .args(["figures", fig, "--format", format, "--out"])
                    .arg(&path)
                    .env_remove("CURVEDSPEC_CONFIG")
                    .status()
                    .map_err(|e| e.to_string())?;
                if !status.success() {
                    return Err(format!("figures {fig} exited with {status}"));
                }
                outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
            }
            same &= outputs[0] == outputs[1];
        }
    }
    Ok(same)
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let report = match check::run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            println!("[FAIL] suite did not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut failed = 0;
    for (c, name) in CRITERIA {
        let rows = report.criterion(c);
        let mut ok = !rows.is_empty() && rows.iter().all(|i| i.status.ok());
        let mut detail = summarize(&rows);
        if c == 14 {
            let dir = tempfile::tempdir().expect("temp dir");
            match binary_twice(dir.path()) {
                Ok(same) => {
                    ok &= same;
                    detail.push_str(&format!("; binary_runs_identical={same}"));
                }
                Err(e) => {
                    ok = false;
                    detail.push_str(&format!("; binary run failed: {e}"));
                }
            }
        }
        if !ok {
            failed += 1;
        }
        println!("[{}] C{c:02} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
