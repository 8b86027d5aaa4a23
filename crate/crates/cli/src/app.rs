//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use crate::config::{OutputFormat, RunConfig};
use crate::dataset::Dataset;
use crate::figures::{figure, FigureId};
use crate::query::{self, BranchArg, Form, LimitKind, MethodArg, Model, WavefunctionArgs};
use crate::{check, CliError};

#[derive(Parser)]
#[command(name = "curvedspec", version, about = "Oscillators on flat and hyperbolic space: datasets, queries, conformance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Flat key-value JSON config (falls back to $CURVEDSPEC_CONFIG)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Oscillator scale κ in fm⁻¹
    #[arg(long)]
    kappa: Option<f64>,
    /// Curvature radius R in fm
    #[arg(long)]
    radius: Option<f64>,
    /// Override s
    #[arg(long, conflicts_with = "derived_s")]
    s: Option<f64>,
    /// Use s = sqrt(κ⁴R⁴ + 1/4)
    #[arg(long)]
    derived_s: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a figure dataset
    Figures {
        #[arg(value_enum)]
        figure: FigureId,
        #[command(flatten)]
        common: Common,
    },
    /// Run the conformance suite
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Query spectra, wavefunctions, form factors or limits
    Query {
        #[command(subcommand)]
        kind: QueryKind,
    },
}

#[derive(Subcommand)]
enum QueryKind {
    Spectrum {
        #[arg(long, value_enum, default_value = "lfh")]
        model: Model,
        #[arg(long)]
        n_max: Option<usize>,
        /// Angular number (ν for lfh, ℓ for rosen-morse)
        #[arg(long, alias = "nu", default_value_t = 1)]
        m: usize,
        #[command(flatten)]
        common: Common,
    },
    Wavefunction {
        #[arg(long, value_enum, default_value = "lfh")]
        model: Model,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, alias = "nu", default_value_t = 1)]
        m: usize,
        #[arg(long, value_enum, default_value = "plus")]
        branch: BranchArg,
        #[arg(long, value_enum, default_value = "schrodinger")]
        form: Form,
        /// Upper end of the grid (ζ in fm, or ρ)
        #[arg(long, default_value_t = 3.0)]
        x_max: f64,
        #[arg(long, default_value_t = 601)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    Formfactor {
        #[arg(long, value_enum, default_value = "hankel")]
        method: MethodArg,
        /// Single momentum in GeV (default: the configured grid)
        #[arg(long = "Q", alias = "q")]
        q: Option<f64>,
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        common: Common,
    },
    Limits {
        #[arg(long, value_enum, default_value = "contraction")]
        kind: LimitKind,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// κ used along the contraction sequence
        #[arg(long = "limit-kappa", default_value_t = 1.0)]
        limit_kappa: f64,
        /// Radii in fm (contraction) or values of s (hypergeometric)
        #[arg(long, value_delimiter = ',', default_value = "10,20,40,80")]
        values: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
}

fn resolve(common: &Common) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::load(common.config.as_deref())?;
    if let Some(k) = common.kappa {
        cfg.kappa_per_fm = k;
    }
    if let Some(r) = common.radius {
        cfg.r_fm = r;
    }
    if let Some(s) = common.s {
        cfg.s_override = Some(s);
    }
    if common.derived_s {
        cfg.s_override = None;
    }
    if let Some(f) = common.format {
        cfg.output_format = f;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(ds: &Dataset, cfg: &RunConfig, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = ds.render(cfg.output_format);
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Figures { figure: id, common } => {
            let cfg = resolve(&common)?;
            emit(&figure(id, &cfg)?, &cfg, common.out.as_ref(), stdout)
        }
        Command::Check { common } => {
            let cfg = resolve(&common)?;
            let report = check::run(&cfg)?;
            emit(&report.to_dataset(&cfg), &cfg, common.out.as_ref(), stdout)?;
            let failed = report.failures();
            if failed.is_empty() {
                Ok(())
            } else {
                let ids: Vec<&str> = failed.iter().map(|i| i.id).collect();
                Err(CliError::Invariant(ids.join(", ")))
            }
        }
        Command::Query { kind } => match kind {
            QueryKind::Spectrum { model, n_max, m, common } => {
                let cfg = resolve(&common)?;
                emit(&query::spectrum(&cfg, model, n_max, m)?, &cfg, common.out.as_ref(), stdout)
            }
            QueryKind::Wavefunction {
                model,
                n,
                m,
                branch,
                form,
                x_max,
                points,
                common,
            } => {
                let cfg = resolve(&common)?;
                let args = WavefunctionArgs {
                    model,
                    n,
                    m,
                    branch,
                    form,
                    x_max,
                    points,
                };
                emit(&query::wavefunction(&cfg, &args)?, &cfg, common.out.as_ref(), stdout)
            }
            QueryKind::Formfactor { method, q, normalize, common } => {
                let cfg = resolve(&common)?;
                emit(&query::formfactor(&cfg, method, q, normalize)?, &cfg, common.out.as_ref(), stdout)
            }
            QueryKind::Limits {
                kind,
                n,
                m,
                limit_kappa,
                values,
                common,
            } => {
                let cfg = resolve(&common)?;
                emit(&query::limits(&cfg, kind, n, m, limit_kappa, &values)?, &cfg, common.out.as_ref(), stdout)
            }
        },
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(()) => 0,
        // reader went away (`| head`)
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(stderr, "curvedspec: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("curvedspec").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn argument_errors_exit_1() {
        assert_eq!(call(&["figures", "fig9"]).0, 1);
        assert_eq!(call(&["figures", "fig1", "--radius", "-1"]).0, 1);
        assert_eq!(call(&["figures", "fig1", "--config", "/nonexistent.json"]).0, 1);
        assert_eq!(call(&["figures", "fig1", "--s", "2", "--derived-s"]).0, 1);
        let (code, _, err) = call(&["query", "spectrum", "--model", "ptii", "--m", "1", "--n-max", "2"]);
        assert_eq!(code, 1);
        assert!(err.contains("bound state"), "{err}");
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn quadrature_failures() {
        let dir = tempfile::tempdir().unwrap();
        let absurd = dir.path().join("absurd.json");
        std::fs::write(&absurd, r#"{"rel_tol": 1.0}"#).unwrap();
        let (code, out, _) = call(&["check", "--config", absurd.to_str().unwrap()]);
        assert!(code == 2 || code == 3);
        assert!(out.contains("quadrature_tolerances_sane,-,FAIL"));
        let budget = dir.path().join("budget.json");
        std::fs::write(&budget, r#"{"max_subdivisions": 1, "rel_tol": 1e-14, "abs_tol": 1e-300}"#).unwrap();
        let (code, _, err) = call(&["query", "formfactor", "--method", "exact", "--Q", "1", "--config", budget.to_str().unwrap()]);
        assert_eq!(code, 2, "{err}");
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        for format in ["csv", "json"] {
            let path = dir.path().join(format!("fig2.{format}"));
            let (code, _, _) = call(&["figures", "fig2", "--format", format, "--out", path.to_str().unwrap()]);
            assert_eq!(code, 0);
            let text = std::fs::read_to_string(&path).unwrap();
            let ds = match format {
                "csv" => Dataset::from_csv(&text).unwrap(),
                _ => Dataset::from_json(&text).unwrap(),
            };
            assert_eq!(ds.columns, ["Q_GeV", "G_hyperbolic", "G_rosen_morse"]);
            assert_eq!(ds.meta_value("hbar_c_gev_fm"), Some("0.1973269804"));
            assert!(ds.meta_value("config_hash").is_some());
            assert_eq!(ds.meta_value("s_convention"), Some("override(2.5)"));
            let again = match format {
                "csv" => ds.to_csv(),
                _ => ds.to_json(),
            };
            assert_eq!(again, text);
        }
    }

    #[test]
    fn config_file_then_flags() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("cfg.json");
        std::fs::write(&cfg, r#"{"s_override": null, "output_format": "json"}"#).unwrap();
        let (_, out, _) = call(&["figures", "fig1", "--config", cfg.to_str().unwrap()]);
        let ds = Dataset::from_json(&out).unwrap();
        assert!(ds.meta_value("s_convention").unwrap().starts_with("derived(2.478"));
        let (_, out, _) = call(&["figures", "fig1", "--config", cfg.to_str().unwrap(), "--s", "3", "--format", "csv"]);
        let ds = Dataset::from_csv(&out).unwrap();
        assert_eq!(ds.meta_value("s_convention"), Some("override(3)"));
    }

    #[test]
    fn queries() {
        let (_, out, _) = call(&["query", "spectrum", "--model", "lfh", "--n-max", "3", "--nu", "1"]);
        let e = Dataset::from_csv(&out).unwrap().column("energy_sq_fm2").unwrap();
        assert_eq!(e.len(), 4);
        for (n, v) in e.iter().enumerate() {
            assert!((v / (4.0 * 2.14 * 2.14 * (n as f64 + 2.0)) - 1.0).abs() < 1e-15);
        }
        let (_, out, _) = call(&["query", "spectrum", "--model", "ptii", "--m", "1"]);
        assert_eq!(Dataset::from_csv(&out).unwrap().rows.len(), 1);

        let (_, out, _) = call(&["query", "formfactor", "--method", "all", "--Q", "0"]);
        let ds = Dataset::from_csv(&out).unwrap();
        let ratio: f64 = ds.meta_value("ratio_closed_over_hankel_at_Q0").unwrap().parse().unwrap();
        assert!((ratio - 1.5).abs() < 1e-6);

        let (code, out, _) = call(&["query", "wavefunction", "--model", "ptii", "--form", "surface", "--x-max", "4", "--points", "81"]);
        assert_eq!(code, 0);
        assert_eq!(Dataset::from_csv(&out).unwrap().rows.len(), 81);

        let (_, out, _) = call(&["query", "limits", "--values", "10,20,40,80"]);
        let ds = Dataset::from_csv(&out).unwrap();
        let rate: f64 = ds.meta_value("fitted_rate").unwrap().parse().unwrap();
        assert!((rate - 2.0).abs() < 0.1, "{rate}");
        let err = ds.column("energy_error_fm2").unwrap();
        assert!(err.windows(2).all(|w| w[1] < w[0]));

        let (code, out, _) = call(&["query", "limits", "--kind", "hypergeometric", "--n", "1", "--values", "100,1000"]);
        assert_eq!(code, 0);
        let e = Dataset::from_csv(&out).unwrap().column("error").unwrap();
        assert!((e[0] / e[1] - 10.0).abs() < 2.0);
    }

    #[test]
    fn check_report() {
        let (code, out, err) = call(&["check", "--format", "json"]);
        assert_eq!(code, 3);
        assert!(err.contains("fig4_area_difference_Q0"));
        let ds = Dataset::from_json(&out).unwrap();
        assert!(ds.rows.len() >= 25);
        let ratio: f64 = ds.meta_value("ratio_closed_over_hankel_at_Q0").unwrap().parse().unwrap();
        assert!((ratio - 1.5).abs() < 1e-6);
    }
}
