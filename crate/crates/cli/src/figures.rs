//! Figure datasets.

use curvedspec::formfactor::{
    approx_integrand, closed_curve, exact_integrand, hankel_curve, normalize_curve, rosen_morse_curve, FormFactorCurve,
};
use curvedspec::hyperbolic::ptii_raw;
use curvedspec::lfh::{lfh_value, Branch};
use curvedspec::wave::trapezoid;
use curvedspec::HBAR_C_GEV_FM;

use crate::config::{gev_to_fm, HyperbolicMethod, RunConfig};
use crate::dataset::{Cell, Dataset};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [FigureId::Fig1, FigureId::Fig2, FigureId::Fig3, FigureId::Fig4];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
        }
    }
}

/// Header lines shared by every dataset.
pub fn provenance(ds: &mut Dataset, cfg: &RunConfig, command: &str) {
    ds.meta("generator", concat!("curvedspec ", env!("CARGO_PKG_VERSION")))
        .meta("command", command)
        .meta("hbar_c_gev_fm", HBAR_C_GEV_FM)
        .meta("config_hash", cfg.hash())
        .meta("s_convention", cfg.s_label())
        .meta("kappa_per_fm", cfg.kappa_per_fm)
        .meta("R_fm", cfg.r_fm)
        .meta("m", cfg.m);
}

pub fn figure(id: FigureId, cfg: &RunConfig) -> Result<Dataset, CliError> {
    cfg.validate()?;
    match id {
        FigureId::Fig1 => fig1(cfg),
        FigureId::Fig2 => fig2(cfg),
        FigureId::Fig3 => fig3(cfg),
        FigureId::Fig4 => fig4(cfg),
    }
}

fn unit_peak(v: &[f64]) -> Vec<f64> {
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    v.iter().map(|x| x / peak).collect()
}

fn argmax(grid: &[f64], v: &[f64]) -> f64 {
    let i = (0..v.len()).fold(0, |b, i| if v[i] > v[b] { i } else { b });
    grid[i]
}

fn fig1(cfg: &RunConfig) -> Result<Dataset, CliError> {
    let p = cfg.params()?;
    let ptii = cfg.ptii()?;
    let zeta: Vec<f64> = (0..=400).map(|i| i as f64 * 0.005).collect();
    let flat = zeta
        .iter()
        .map(|&z| lfh_value(Branch::Plus, 0, cfg.m, &p, z))
        .collect::<Result<Vec<_>, _>>()?;
    let curved = zeta
        .iter()
        .map(|&z| ptii_raw(0, &ptii, z / cfg.r_fm))
        .collect::<Result<Vec<_>, _>>()?;
    let (a, b) = (unit_peak(&flat), unit_peak(&curved));
    let mut ds = Dataset::new(&["zeta_fm", "psi_lfh", "psi_ptii"]);
    provenance(&mut ds, cfg, "figures fig1");
    ds.meta("normalization", "unit_peak")
        .meta("ptii_form", "schrodinger, rho = zeta/R")
        .meta("peak_lfh_fm", argmax(&zeta, &a))
        .meta("peak_ptii_fm", argmax(&zeta, &b));
    for i in 0..zeta.len() {
        ds.push(vec![zeta[i].into(), a[i].into(), b[i].into()]);
    }
    Ok(ds)
}

/// Normalized hyperbolic and Rosen-Morse curves on the configured Q grid.
pub fn normalized_curves(cfg: &RunConfig) -> Result<(Vec<f64>, FormFactorCurve, FormFactorCurve), CliError> {
    let q_gev = cfg.q_grid_gev();
    let q: Vec<f64> = q_gev.iter().map(|&x| gev_to_fm(x)).collect();
    let hyper = match cfg.hyperbolic_method {
        HyperbolicMethod::Closed => closed_curve(&q, cfg.r_fm)?,
        HyperbolicMethod::Hankel => hankel_curve(&q, cfg.r_fm, &cfg.quad())?,
    };
    let rm = rosen_morse_curve(&q, &cfg.rosen_morse()?)?;
    Ok((q_gev, normalize_curve(&hyper)?, normalize_curve(&rm)?))
}

fn fig2(cfg: &RunConfig) -> Result<Dataset, CliError> {
    let (q, h, rm) = normalized_curves(cfg)?;
    let mut ds = Dataset::new(&["Q_GeV", "G_hyperbolic", "G_rosen_morse"]);
    provenance(&mut ds, cfg, "figures fig2");
    meta_curves(&mut ds, cfg);
    for i in 0..q.len() {
        ds.push(vec![q[i].into(), h.g[i].into(), rm.g[i].into()]);
    }
    Ok(ds)
}

fn fig3(cfg: &RunConfig) -> Result<Dataset, CliError> {
    let (q, h, rm) = normalized_curves(cfg)?;
    let mut ds = Dataset::new(&["Q_GeV", "Q4G_hyperbolic", "Q4G_rosen_morse"]);
    provenance(&mut ds, cfg, "figures fig3");
    meta_curves(&mut ds, cfg);
    ds.meta("units", "Q4G in GeV^4");
    for i in 0..q.len() {
        let q4 = q[i].powi(4);
        ds.push(vec![q[i].into(), (q4 * h.g[i]).into(), (q4 * rm.g[i]).into()]);
    }
    Ok(ds)
}

fn meta_curves(ds: &mut Dataset, cfg: &RunConfig) {
    ds.meta("normalization", "G(0) = 1")
        .meta("hyperbolic_method", cfg.hyperbolic_method.as_str())
        .meta("rm_b", cfg.rm_b)
        .meta("rm_d_fm", cfg.rm_d_fm)
        .meta("rm_parameters", "comparator defaults, not fixed by the model");
}

pub const FIG4_Q_GEV: [f64; 4] = [0.0, 1.0, 2.0, 3.0];

fn fig4(cfg: &RunConfig) -> Result<Dataset, CliError> {
    let ptii = cfg.ptii()?;
    let quad = cfg.quad();
    let steps = (cfg.rho_max / 0.01).round() as usize;
    let rho: Vec<f64> = (0..=steps).map(|i| i as f64 * 0.01).collect();
    let mut names = vec!["rho".to_string()];
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for q_gev in FIG4_Q_GEV {
        let q = gev_to_fm(q_gev);
        let exact = rho
            .iter()
            .map(|&r| exact_integrand(r, q, &ptii, &quad))
            .collect::<Result<Vec<_>, _>>()?;
        let approx: Vec<f64> = rho.iter().map(|&r| approx_integrand(r, q, cfg.r_fm)).collect();
        names.push(format!("integrand_exact_Q{q_gev}"));
        names.push(format!("integrand_approx_Q{q_gev}"));
        cols.push(exact);
        cols.push(approx);
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut ds = Dataset::new(&refs);
    provenance(&mut ds, cfg, "figures fig4");
    ds.meta("q_values_gev", "0 1 2 3")
        .meta("exact", "R^2 C^2 cosh^-2s sinh^2m Re<e^(rho cos phi / 2) e^(i Q R rho cos phi)>_phi")
        .meta("approx", "R^2 e^(-3 rho^2 / 2) (1 + rho/2) rho J0(Q R rho)");
    for (k, q_gev) in FIG4_Q_GEV.iter().enumerate() {
        ds.meta(&format!("area_exact_Q{q_gev}"), trapezoid(&rho, &cols[2 * k]));
        ds.meta(&format!("area_approx_Q{q_gev}"), trapezoid(&rho, &cols[2 * k + 1]));
    }
    for i in 0..rho.len() {
        let mut row: Vec<Cell> = vec![rho[i].into()];
        row.extend(cols.iter().map(|c| Cell::Real(c[i])));
        ds.push(row);
    }
    Ok(ds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_shape() {
        let ds = figure(FigureId::Fig1, &RunConfig::default()).unwrap();
        assert_eq!(ds.rows.len(), 401);
        for c in ["psi_lfh", "psi_ptii"] {
            let v = ds.column(c).unwrap();
            assert_eq!(v.iter().cloned().fold(f64::MIN, f64::max), 1.0);
        }
        assert!(ds.meta_value("hbar_c_gev_fm").is_some());
    }

    #[test]
    fn fig2_starts_at_one() {
        let ds = figure(FigureId::Fig2, &RunConfig::default()).unwrap();
        assert_eq!(ds.rows.len(), 301);
        assert_eq!(ds.column("G_hyperbolic").unwrap()[0], 1.0);
        assert_eq!(ds.column("G_rosen_morse").unwrap()[0], 1.0);
    }

    #[test]
    fn fig4_layout() {
        let ds = figure(FigureId::Fig4, &RunConfig::default()).unwrap();
        assert_eq!(ds.columns.len(), 9);
        assert_eq!(ds.rows.len(), 601);
        assert_eq!(ds.columns[1], "integrand_exact_Q0");
        assert_eq!(ds.columns[8], "integrand_approx_Q3");
    }
}
