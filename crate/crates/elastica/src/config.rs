//! Run configuration: defaults, then a TOML or JSON file, then flags.

use std::fs;
use std::path::{Path, PathBuf};

use elastica_core::flow::FlowConfig;
use elastica_core::shapes::{self, CurveKind, FourierTerm};
use elastica_core::{verify, DiscreteCurve};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};
use crate::io;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: u32,
    pub a: [f64; 2],
    pub b: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    Circle { center_y: f64, radius: f64 },
    PerturbedCircle { center_y: f64, radius: f64, mode: u32, amplitude: f64 },
    Fourier { terms: Vec<Term> },
    /// Circle plus random low harmonics drawn from the run seed.
    Random,
    File { path: PathBuf },
}

impl Default for CurveSpec {
    fn default() -> Self {
        CurveSpec::PerturbedCircle { center_y: std::f64::consts::SQRT_2, radius: 1.0, mode: 3, amplitude: 0.05 }
    }
}

impl CurveSpec {
    pub fn build(&self, n: usize, seed: u64) -> AppResult<DiscreteCurve> {
        let kind = match self {
            CurveSpec::Circle { center_y, radius } => CurveKind::Circle { center_y: *center_y, radius: *radius },
            CurveSpec::PerturbedCircle { center_y, radius, mode, amplitude } => CurveKind::PerturbedCircle {
                center_y: *center_y,
                radius: *radius,
                mode: *mode,
                amplitude: *amplitude,
            },
            CurveSpec::Fourier { terms } => CurveKind::Fourier {
                terms: terms.iter().map(|t| FourierTerm { k: t.k, a: t.a, b: t.b }).collect(),
            },
            CurveSpec::Random => return Ok(verify::random_curve(n, &mut ChaCha8Rng::seed_from_u64(seed))?),
            CurveSpec::File { path } => {
                let c = io::read_curve(path)?;
                if c.n_samples() != n {
                    return Err(AppError::Config(format!(
                        "{} has {} samples but n_samples = {n}",
                        path.display(),
                        c.n_samples()
                    )));
                }
                return Ok(c);
            }
        };
        Ok(shapes::make_curve(&kind, n)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub lambda: f64,
    pub n_samples: usize,
    pub dt_init: Option<f64>,
    pub t_end: f64,
    pub grad_tol: f64,
    pub redistribute_every: u32,
    pub energy_backtrack: bool,
    pub max_dt_growth: f64,
    pub sufficient_decrease: f64,
    pub y2_floor: f64,
    pub max_steps: u64,
    pub snapshot_every: u64,
    pub seed: u64,
    pub curve: CurveSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        let f = FlowConfig::default();
        RunConfig {
            lambda: f.lambda,
            n_samples: f.n_samples,
            dt_init: f.dt_init,
            t_end: f.t_end,
            grad_tol: f.grad_tol,
            redistribute_every: f.redistribute_every,
            energy_backtrack: f.energy_backtrack,
            max_dt_growth: f.max_dt_growth,
            sufficient_decrease: f.sufficient_decrease,
            y2_floor: f.y2_floor,
            max_steps: f.max_steps,
            snapshot_every: 100,
            seed: 0,
            curve: CurveSpec::default(),
        }
    }
}

impl RunConfig {
    pub fn flow(&self) -> FlowConfig {
        FlowConfig {
            lambda: self.lambda,
            n_samples: self.n_samples,
            dt_init: self.dt_init,
            t_end: self.t_end,
            grad_tol: self.grad_tol,
            redistribute_every: self.redistribute_every,
            energy_backtrack: self.energy_backtrack,
            max_dt_growth: self.max_dt_growth,
            sufficient_decrease: self.sufficient_decrease,
            y2_floor: self.y2_floor,
            max_steps: self.max_steps,
        }
    }

    pub fn validate(&self) -> AppResult<()> {
        self.flow().validate().map_err(|e| AppError::Config(e.to_string()))?;
        if self.snapshot_every == 0 {
            return Err(AppError::Config("snapshot_every must be positive".into()));
        }
        Ok(())
    }

    /// Reads a TOML or JSON config. A run manifest is accepted too: its
    /// `config` member is used.
    pub fn load(path: &Path) -> AppResult<Self> {
        let text = fs::read_to_string(path).map_err(AppError::io(path))?;
        let bad = |e: &dyn std::fmt::Display| AppError::Config(format!("{}: {e}", path.display()));
        let is_toml = path.extension().and_then(|e| e.to_str()).is_some_and(|e| e.eq_ignore_ascii_case("toml"));
        if is_toml {
            return toml::from_str(&text).map_err(|e| bad(&e));
        }
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| bad(&e))?;
        let value = match value {
            serde_json::Value::Object(mut m) if m.contains_key("manifest_version") => {
                m.remove("config").ok_or_else(|| bad(&"manifest without config"))?
            }
            v => v,
        };
        serde_json::from_value(value).map_err(|e| bad(&e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_core() {
        assert_eq!(RunConfig::default().flow(), FlowConfig::default());
    }

    #[test]
    fn toml_curve_spec() {
        let c: RunConfig = toml::from_str(
            "lambda = 1.0\n[curve]\nkind = \"circle\"\ncenter_y = 1.5\nradius = 1.0\n",
        )
        .unwrap();
        assert_eq!(c.lambda, 1.0);
        assert_eq!(c.curve, CurveSpec::Circle { center_y: 1.5, radius: 1.0 });
        assert_eq!(c.n_samples, 256);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<RunConfig>("lamda = 1.0\n").is_err());
    }
}
