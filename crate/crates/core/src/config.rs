//! Run configuration shared by the verification suite and the CLI.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::FieldKind;
use crate::mesh::SurfaceSpec;
use crate::spectral::{DEFAULT_REL_GAP, DEFAULT_SEED};

/// Environment variable overriding the configured seed.
pub const SEED_ENV: &str = "HODGELAB_SEED";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative slack on bound checks and attainment.
    pub bound_rel: f64,
    /// Relative norm below which `‖dω‖` or `‖δω‖` counts as zero.
    pub class_tol: f64,
    pub group_rel_gap: f64,
    pub solver_tol: f64,
    /// Eigenform residual above which `Δω = λω` is considered violated.
    pub eigenform_tol: f64,
    /// Threshold on discrete identity residuals for forms satisfying them.
    pub identity_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            bound_rel: 0.02,
            class_tol: 1e-2,
            group_rel_gap: DEFAULT_REL_GAP,
            solver_tol: 1e-5,
            eigenform_tol: 0.05,
            identity_tol: 0.05,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedField {
    pub name: String,
    #[serde(flatten)]
    pub kind: FieldKind,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputPaths {
    pub report: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub surface: SurfaceSpec,
    /// One-form eigenpairs.
    pub eigenpairs: usize,
    /// Scalar eigenpairs, including the constant.
    pub scalar_eigenpairs: usize,
    /// Refinement levels for convergence studies.
    pub levels: Vec<usize>,
    /// Fields to test; empty selects the eleven built-ins.
    pub fields: Vec<NamedField>,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub output: OutputPaths,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            surface: SurfaceSpec::unit_sphere(5),
            eigenpairs: 16,
            scalar_eigenpairs: 9,
            levels: vec![3, 4, 5, 6],
            fields: Vec::new(),
            tolerances: Tolerances::default(),
            seed: DEFAULT_SEED,
            output: OutputPaths::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Applies `HODGELAB_SEED` when set.
    pub fn apply_env(&mut self) -> Result<()> {
        if let Ok(v) = std::env::var(SEED_ENV) {
            self.seed = parse_seed(&v).ok_or_else(|| Error::Config(format!("{SEED_ENV} is not an integer: {v:?}")))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.surface.check().map_err(|e| Error::Config(e.to_string()))?;
        let t = &self.tolerances;
        for (name, v) in [
            ("bound_rel", t.bound_rel),
            ("class_tol", t.class_tol),
            ("group_rel_gap", t.group_rel_gap),
            ("solver_tol", t.solver_tol),
            ("eigenform_tol", t.eigenform_tol),
            ("identity_tol", t.identity_tol),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("tolerance {name} must be positive, got {v}")));
            }
        }
        if self.eigenpairs == 0 || self.scalar_eigenpairs == 0 {
            return Err(Error::Config("eigenpair counts must be at least 1".into()));
        }
        if self.levels.is_empty() {
            return Err(Error::Config("levels must be non-empty".into()));
        }
        Ok(())
    }
}

/// Decimal or `0x`-prefixed hexadecimal.
pub fn parse_seed(s: &str) -> Option<u64> {
    let s = s.trim();
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16).ok(),
        None => s.parse().ok(),
    }
}
