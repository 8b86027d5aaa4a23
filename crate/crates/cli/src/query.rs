//! Ad hoc queries: spectra, sampled wavefunctions, form factors, limits.

use curvedspec::formfactor::{
    ff_closed, ff_exact, ff_hankel, ff_reference_closed, normalize_curve, FormFactorCurve, FormFactorMethod,
};
use curvedspec::hyperbolic::{bound_state_count, ptii_energy, ptii_wavefunction_with, WaveForm};
use curvedspec::lfh::{lfh_energy_sq, lfh_wavefunction, Branch};
use curvedspec::limits::{contraction_report, hypergeom_limit_error, rho_at_fixed_flat_argument};
use curvedspec::rosenmorse::{rmt_energy, rmt_formfactor, RMParams};
use curvedspec::wave::linspace;

use crate::config::{gev_to_fm, RunConfig};
use crate::dataset::Dataset;
use crate::figures::provenance;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Model {
    Lfh,
    Ptii,
    Eckart,
    RosenMorse,
}

impl Model {
    fn as_str(self) -> &'static str {
        match self {
            Model::Lfh => "lfh",
            Model::Ptii => "ptii",
            Model::Eckart => "eckart",
            Model::RosenMorse => "rosen_morse",
        }
    }
}

/// `n_max = None` lists every bound level for PTII and n ≤ 3 otherwise.
pub fn spectrum(cfg: &RunConfig, model: Model, n_max: Option<usize>, m: usize) -> Result<Dataset, CliError> {
    cfg.validate()?;
    let p = cfg.params()?;
    let mut ds = Dataset::new(&["model", "n", "m", "energy_sq_fm2"]);
    provenance(&mut ds, cfg, &format!("query spectrum --model {}", model.as_str()));
    let top = n_max.unwrap_or(3);
    match model {
        Model::Lfh => {
            ds.meta("energy", "4 kappa^2 (n + nu + 1)");
            for n in 0..=top {
                ds.push(vec!["lfh".into(), n.into(), m.into(), lfh_energy_sq(n, m, &p).into()]);
            }
        }
        Model::Ptii => {
            let cfg_m = RunConfig { m, ..cfg.clone() };
            let ptii = cfg_m.ptii()?;
            let count = bound_state_count(&ptii);
            ds.meta("energy", "eps_higgs").meta("bound_states", count);
            let top = match n_max {
                Some(k) => k,
                None if count == 0 => return Err(ptii_energy(0, &ptii).unwrap_err().into()),
                None => count - 1,
            };
            for n in 0..=top {
                let (_, higgs) = ptii_energy(n, &ptii)?;
                ds.push(vec!["ptii".into(), n.into(), m.into(), higgs.into()]);
            }
        }
        Model::Eckart => {
            ds.meta("energy", "-l(l + 1) / R^2 with l = n + m");
            for n in 0..=top {
                let l = (n + m) as f64;
                ds.push(vec!["eckart".into(), n.into(), m.into(), (-l * (l + 1.0) / (cfg.r_fm * cfg.r_fm)).into()]);
            }
        }
        Model::RosenMorse => {
            let rm = RMParams::new(cfg.rm_b, cfg.rm_d_fm, m)?;
            ds.meta("energy", "-b^2 / (d^2 N^2) + N^2 / d^2").meta("m_is", "l");
            for n in 0..=top {
                ds.push(vec!["rosen_morse".into(), n.into(), m.into(), rmt_energy(n, m, &rm).into()]);
            }
        }
    }
    Ok(ds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Form {
    Schrodinger,
    Surface,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

pub struct WavefunctionArgs {
    pub model: Model,
    pub n: usize,
    pub m: usize,
    pub branch: BranchArg,
    pub form: Form,
    pub x_max: f64,
    pub points: usize,
}

pub fn wavefunction(cfg: &RunConfig, a: &WavefunctionArgs) -> Result<Dataset, CliError> {
    cfg.validate()?;
    if a.points < 2 || !(a.x_max > 0.0) {
        return Err(CliError::Arg("need --points >= 2 and --x-max > 0".into()));
    }
    let grid = linspace(0.0, a.x_max, a.points);
    let p = cfg.params()?;
    let (columns, w, label) = match a.model {
        Model::Lfh => {
            let branch = match a.branch {
                BranchArg::Plus => Branch::Plus,
                BranchArg::Minus => Branch::Minus,
            };
            let w = lfh_wavefunction(branch, a.n, a.m, &p, &grid)?;
            (["zeta_fm", "psi"], w, "normalized under dzeta")
        }
        Model::Ptii => {
            let ptii = RunConfig { m: a.m, ..cfg.clone() }.ptii()?;
            let form = match a.form {
                Form::Schrodinger => WaveForm::Schrodinger,
                Form::Surface => WaveForm::Surface,
            };
            let w = ptii_wavefunction_with(a.n, &ptii, &grid, form, &cfg.quad())?;
            let label = match a.form {
                Form::Schrodinger => "normalized under drho",
                Form::Surface => "normalized under sinh(rho) drho",
            };
            (["rho", "psi"], w, label)
        }
        other => return Err(CliError::Arg(format!("no wavefunction query for model {}", other.as_str()))),
    };
    let mut ds = Dataset::new(&columns);
    provenance(&mut ds, cfg, &format!("query wavefunction --model {}", a.model.as_str()));
    ds.meta("n", a.n).meta("normalization", label);
    for (x, v) in w.grid.iter().zip(&w.values) {
        ds.push(vec![(*x).into(), (*v).into()]);
    }
    Ok(ds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    Exact,
    Hankel,
    Closed,
    Reference,
    RosenMorse,
    All,
}

pub fn formfactor(cfg: &RunConfig, method: MethodArg, q_gev: Option<f64>, normalize: bool) -> Result<Dataset, CliError> {
    cfg.validate()?;
    let q_gev: Vec<f64> = match q_gev {
        Some(q) if q.is_finite() && q >= 0.0 => vec![q],
        Some(q) => return Err(CliError::Arg(format!("--q must be finite and >= 0, got {q}"))),
        None => cfg.q_grid_gev(),
    };
    if normalize && q_gev[0] != 0.0 {
        return Err(CliError::Arg("--normalize needs Q = 0 on the grid".into()));
    }
    let q: Vec<f64> = q_gev.iter().map(|&x| gev_to_fm(x)).collect();
    let r = cfg.r_fm;
    let quad = cfg.quad();
    let methods: Vec<MethodArg> = match method {
        MethodArg::All => vec![
            MethodArg::Exact,
            MethodArg::Hankel,
            MethodArg::Closed,
            MethodArg::Reference,
            MethodArg::RosenMorse,
        ],
        m => vec![m],
    };
    let mut ds = Dataset::new(&["Q_GeV", "method", "G"]);
    provenance(&mut ds, cfg, "query formfactor");
    ds.meta("normalization", if normalize { "G(0) = 1" } else { "none" });
    let mut at_zero = Vec::new();
    for m in methods {
        let (name, g): (&str, Vec<f64>) = match m {
            MethodArg::Exact => {
                let ptii = cfg.ptii()?;
                let g = q.iter().map(|&x| ff_exact(x, &ptii, &quad).map(|v| v.0)).collect::<Result<_, _>>()?;
                (FormFactorMethod::ExactFh.as_str(), g)
            }
            MethodArg::Hankel => (
                FormFactorMethod::Hankel.as_str(),
                q.iter().map(|&x| ff_hankel(x, r, &quad)).collect::<Result<_, _>>()?,
            ),
            MethodArg::Closed => (
                FormFactorMethod::ClosedForm.as_str(),
                q.iter().map(|&x| ff_closed(x, r)).collect::<Result<_, _>>()?,
            ),
            MethodArg::Reference => ("table_closed_form", q.iter().map(|&x| ff_reference_closed(x, r)).collect::<Result<_, _>>()?),
            MethodArg::RosenMorse => {
                let rm = cfg.rosen_morse()?;
                (
                    FormFactorMethod::RosenMorse.as_str(),
                    q.iter().map(|&x| rmt_formfactor(x, &rm)).collect::<Result<_, _>>()?,
                )
            }
            MethodArg::All => unreachable!(),
        };
        let g = if normalize {
            let c = FormFactorCurve::new(q.clone(), g, FormFactorMethod::Hankel)?;
            normalize_curve(&c)?.g
        } else {
            g
        };
        if q_gev[0] == 0.0 {
            at_zero.push((name, g[0]));
        }
        for i in 0..q.len() {
            ds.push(vec![q_gev[i].into(), name.into(), g[i].into()]);
        }
    }
    let closed = at_zero.iter().find(|e| e.0 == "closed_form");
    let hankel = at_zero.iter().find(|e| e.0 == "hankel");
    if let (Some(c), Some(h)) = (closed, hankel) {
        ds.meta("ratio_closed_over_hankel_at_Q0", crate::dataset::format_real(c.1 / h.1));
    }
    Ok(ds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LimitKind {
    Contraction,
    Hypergeometric,
}

pub fn limits(cfg: &RunConfig, kind: LimitKind, n: usize, m: usize, kappa: f64, values: &[f64]) -> Result<Dataset, CliError> {
    cfg.validate()?;
    if values.len() < 2 {
        return Err(CliError::Arg("need at least two values".into()));
    }
    match kind {
        LimitKind::Contraction => {
            let zeta = linspace(0.0, 3.0, 601);
            let rep = contraction_report(n, m, kappa, values, &zeta)?;
            let mut ds = Dataset::new(&["R_fm", "energy_error_fm2", "wavefunction_l2_error"]);
            provenance(&mut ds, cfg, "query limits --kind contraction");
            ds.meta("limit_kappa_per_fm", kappa)
                .meta("s_convention_limit", "derived")
                .meta("fitted_rate", rep.fitted_rate)
                .meta("intercept", rep.intercept);
            for i in 0..rep.r_values.len() {
                ds.push(vec![
                    rep.r_values[i].into(),
                    rep.energy_errors[i].into(),
                    rep.wavefunction_l2_errors[i].into(),
                ]);
            }
            Ok(ds)
        }
        LimitKind::Hypergeometric => {
            let mut ds = Dataset::new(&["s", "rho", "error"]);
            provenance(&mut ds, cfg, "query limits --kind hypergeometric");
            ds.meta("flat_argument", "kappa^2 zeta^2 = 1");
            for &s in values {
                let rho = rho_at_fixed_flat_argument(s, 1.0);
                ds.push(vec![s.into(), rho.into(), hypergeom_limit_error(n, m, s, &[rho])?.into()]);
            }
            Ok(ds)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lfh_rows() {
        let cfg = RunConfig::default();
        let ds = spectrum(&cfg, Model::Lfh, Some(3), 1).unwrap();
        assert_eq!(ds.rows.len(), 4);
        let e = ds.column("energy_sq_fm2").unwrap();
        for (n, v) in e.iter().enumerate() {
            assert_eq!(*v, 4.0 * 2.14 * 2.14 * (n as f64 + 2.0));
        }
    }

    #[test]
    fn ptii_single_bound_state() {
        let cfg = RunConfig::default();
        assert_eq!(spectrum(&cfg, Model::Ptii, None, 1).unwrap().rows.len(), 1);
        let err = spectrum(&cfg, Model::Ptii, Some(1), 1).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("bound"));
    }

    #[test]
    fn all_methods_at_origin() {
        let ds = formfactor(&RunConfig::default(), MethodArg::All, Some(0.0), false).unwrap();
        assert_eq!(ds.rows.len(), 5);
        let ratio: f64 = ds.meta_value("ratio_closed_over_hankel_at_Q0").unwrap().parse().unwrap();
        assert!((ratio - 1.5).abs() < 1e-6);
    }
}
