//! Run configuration: flat key-value JSON with every key optional.

use std::path::{Path, PathBuf};

use curvedspec::hyperbolic::{PTIIConfig, SConvention};
use curvedspec::lfh::ModelParams;
use curvedspec::quad::QuadratureSpec;
use curvedspec::rosenmorse::RMParams;
use curvedspec::HBAR_C_GEV_FM;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const CONFIG_ENV: &str = "CURVEDSPEC_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Which evaluation of the hyperbolic form factor the figures use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HyperbolicMethod {
    Closed,
    Hankel,
}

impl HyperbolicMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            HyperbolicMethod::Closed => "closed",
            HyperbolicMethod::Hankel => "hankel",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub kappa_per_fm: f64,
    #[serde(rename = "R_fm")]
    pub r_fm: f64,
    /// `null` selects s = sqrt(κ⁴R⁴ + 1/4).
    pub s_override: Option<f64>,
    /// Angular number m (= ν).
    pub m: usize,
    /// Rosen-Morse strength (not fixed by the model; comparator only).
    pub rm_b: f64,
    pub rm_d_fm: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub rho_max: f64,
    pub output_format: OutputFormat,
    pub q_min_gev: f64,
    pub q_max_gev: f64,
    pub q_step_gev: f64,
    pub hyperbolic_method: HyperbolicMethod,
}

impl Default for RunConfig {
    fn default() -> Self {
        let quad = QuadratureSpec::default();
        Self {
            kappa_per_fm: 2.14,
            r_fm: 0.728,
            s_override: Some(2.5),
            m: 1,
            rm_b: 2.0,
            rm_d_fm: 1.0,
            rel_tol: quad.rel_tol,
            abs_tol: quad.abs_tol,
            max_subdivisions: quad.max_subdivisions,
            rho_max: quad.rho_max,
            output_format: OutputFormat::Csv,
            q_min_gev: 0.0,
            q_max_gev: 3.0,
            q_step_gev: 0.01,
            hyperbolic_method: HyperbolicMethod::Closed,
        }
    }
}

impl RunConfig {
    /// Reads `path`, else the file named by `CURVEDSPEC_CONFIG`, else defaults.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let path: Option<PathBuf> = path
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from));
        let cfg = match path {
            None => Self::default(),
            Some(p) => {
                let text = std::fs::read_to_string(&p)
                    .map_err(|e| CliError::Arg(format!("cannot read config {}: {e}", p.display())))?;
                Self::from_json(&text)?
            }
        };
        Ok(cfg)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Arg(format!("bad config: {e}")))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("kappa_per_fm", self.kappa_per_fm),
            ("R_fm", self.r_fm),
            ("rm_b", self.rm_b),
            ("rm_d_fm", self.rm_d_fm),
            ("q_step_gev", self.q_step_gev),
        ];
        for (k, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Arg(format!("{k} must be positive, got {v}")));
            }
        }
        if let Some(s) = self.s_override {
            if !(s > 0.0 && s.is_finite()) {
                return Err(CliError::Arg(format!("s_override must be positive, got {s}")));
            }
        }
        if !(self.q_min_gev >= 0.0 && self.q_max_gev > self.q_min_gev && self.q_max_gev.is_finite()) {
            return Err(CliError::Arg(format!(
                "q grid must be non-empty and increasing, got [{}, {}]",
                self.q_min_gev, self.q_max_gev
            )));
        }
        self.quad().validate()?;
        Ok(())
    }

    pub fn quad(&self) -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_subdivisions: self.max_subdivisions,
            rho_max: self.rho_max,
        }
    }

    pub fn params(&self) -> Result<ModelParams, CliError> {
        Ok(ModelParams::new(self.kappa_per_fm, self.r_fm)?)
    }

    pub fn convention(&self) -> SConvention {
        match self.s_override {
            Some(s) => SConvention::Override(s),
            None => SConvention::Derived,
        }
    }

    pub fn ptii(&self) -> Result<PTIIConfig, CliError> {
        Ok(PTIIConfig::new(self.m, self.params()?, self.convention())?)
    }

    pub fn rosen_morse(&self) -> Result<RMParams, CliError> {
        Ok(RMParams::new(self.rm_b, self.rm_d_fm, 0)?)
    }

    /// Momentum grid in GeV.
    pub fn q_grid_gev(&self) -> Vec<f64> {
        let count = ((self.q_max_gev - self.q_min_gev) / self.q_step_gev + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.q_min_gev + i as f64 * self.q_step_gev).collect()
    }

    /// Short SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let canon = serde_json::to_string(self).expect("config serializes");
        hex::encode(&Sha256::digest(canon.as_bytes())[..8])
    }

    /// "override(2.5)" or "derived(2.478...)".
    pub fn s_label(&self) -> String {
        match self.s_override {
            Some(s) => format!("override({s})"),
            None => {
                let s = (self.kappa_per_fm.powi(4) * self.r_fm.powi(4) + 0.25).sqrt();
                format!("derived({s})")
            }
        }
    }
}

pub fn gev_to_fm(q: f64) -> f64 {
    q / HBAR_C_GEV_FM
}
