//! Scenario presets for the systems studied and JSON configuration parsing.
//!
//! The config schema is a flat JSON document:
//!
//! ```json
//! {
//!   "kind": "uniform",             // uniform | triangle | chain | custom
//!   "n": 3,                        // uniform only
//!   "d_mhz": 1.0,                  // uniform only
//!   "matrix": [[0.0, 1.0], [1.0, 0.0]],   // custom only, d_ij/(2 pi) MHz
//!   "observable_mode": "collective",      // or {"single_site": 1}, 1-based
//!   "tau_start_ns": 0.0,
//!   "tau_end_ns": 650.0,
//!   "tau_step_ns": 1.0,
//!   "theta_step_deg": 1.0,
//!   "out_dir": "out"
//! }
//! ```
//!
//! Unspecified grid values fall back to per-scenario defaults chosen to
//! contain each scenario's squeezing optimum: tau 0-650 ns for uniform and
//! custom systems, 0-1100 ns for the triangle, 0-2900 ns for the chain, all
//! with 1 ns and 1 degree steps.

use std::path::PathBuf;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spin::{ObservableMode, SpinSystemSpec};
use crate::squeeze::SweepGrid;

/// Triangle preset couplings, d/(2 pi) in MHz: (d_12, d_13, d_23).
pub const TRIANGLE_COUPLINGS_MHZ: (f64, f64, f64) = (-1.0, 1.6, 1.6);
/// Chain preset couplings, d/(2 pi) in MHz: (d_12, d_13, d_23). The outer
/// spins are uncoupled.
pub const CHAIN_COUPLINGS_MHZ: (f64, f64, f64) = (-1.0, -2.0, 0.0);

/// Default tau range end per scenario kind, ns.
pub const DEFAULT_TAU_END_UNIFORM_NS: f64 = 650.0;
pub const DEFAULT_TAU_END_TRIANGLE_NS: f64 = 1100.0;
pub const DEFAULT_TAU_END_CHAIN_NS: f64 = 2900.0;

/// Uniform all-to-all couplings `d_ij = d`.
pub fn scenario_uniform(n: usize, d_mhz: f64) -> Result<SpinSystemSpec> {
    if n < 2 {
        return Err(Error::InvalidN { reason: format!("uniform scenario needs n >= 2, got {n}") });
    }
    if !d_mhz.is_finite() {
        return Err(Error::ValidationError {
            field: "d_mhz".into(),
            message: format!("coupling must be finite, got {d_mhz}"),
        });
    }
    let mut couplings = DMatrix::from_element(n, n, d_mhz);
    couplings.fill_diagonal(0.0);
    SpinSystemSpec::new(n, couplings, ObservableMode::Collective)
}

/// Dipole-coupled triangle: d_12/(2 pi) = -1 MHz, d_13 = d_23 = 1.6 MHz.
pub fn scenario_triangle() -> SpinSystemSpec {
    let (d12, d13, d23) = TRIANGLE_COUPLINGS_MHZ;
    let couplings =
        DMatrix::from_row_slice(3, 3, &[0.0, d12, d13, d12, 0.0, d23, d13, d23, 0.0]);
    SpinSystemSpec::new(3, couplings, ObservableMode::Collective)
        .expect("triangle preset is symmetric")
}

/// Linear three-spin chain: a central spin coupled to two neighbors with
/// d_12/(2 pi) = -1 MHz and d_13/(2 pi) = -2 MHz; the neighbors do not
/// couple to each other. Collective observables by default;
/// `single_site(1)` is available via [`SpinSystemSpec::with_observable_mode`].
pub fn scenario_chain() -> SpinSystemSpec {
    let (d12, d13, d23) = CHAIN_COUPLINGS_MHZ;
    let couplings =
        DMatrix::from_row_slice(3, 3, &[0.0, d12, d13, d12, 0.0, d23, d13, d23, 0.0]);
    SpinSystemSpec::new(3, couplings, ObservableMode::Collective)
        .expect("chain preset is symmetric")
}

/// Scenario selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Uniform,
    Triangle,
    Chain,
    Custom,
}

impl ScenarioKind {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "uniform" => Ok(Self::Uniform),
            "triangle" => Ok(Self::Triangle),
            "chain" => Ok(Self::Chain),
            "custom" => Ok(Self::Custom),
            other => Err(Error::ValidationError {
                field: "kind".into(),
                message: format!(
                    "unknown scenario kind `{other}` (expected uniform, triangle, chain, or custom)"
                ),
            }),
        }
    }

    fn default_tau_end_ns(self) -> f64 {
        match self {
            Self::Uniform | Self::Custom => DEFAULT_TAU_END_UNIFORM_NS,
            Self::Triangle => DEFAULT_TAU_END_TRIANGLE_NS,
            Self::Chain => DEFAULT_TAU_END_CHAIN_NS,
        }
    }
}

/// Observable mode as written in config files; sites are 1-based there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservableModeConfig {
    Collective,
    SingleSite(usize),
}

impl ObservableModeConfig {
    /// Converts to the internal 0-based representation.
    pub fn to_internal(self, n_spins: usize) -> Result<ObservableMode> {
        match self {
            Self::Collective => Ok(ObservableMode::Collective),
            Self::SingleSite(site) => {
                if site == 0 || site > n_spins {
                    return Err(Error::ValidationError {
                        field: "observable_mode".into(),
                        message: format!("single_site index {site} outside 1..={n_spins}"),
                    });
                }
                Ok(ObservableMode::SingleSite(site - 1))
            }
        }
    }

    pub fn from_internal(mode: ObservableMode) -> Self {
        match mode {
            ObservableMode::Collective => Self::Collective,
            ObservableMode::SingleSite(site) => Self::SingleSite(site + 1),
        }
    }

    /// Display form used in summaries: `collective` or `single_site(1)`.
    pub fn label(self) -> String {
        match self {
            Self::Collective => "collective".into(),
            Self::SingleSite(site) => format!("single_site({site})"),
        }
    }
}

/// A parsed scenario configuration; optional fields fall back to
/// per-scenario defaults when resolved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_mhz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observable_mode: Option<ObservableModeConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_start_ns: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_end_ns: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_step_ns: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_step_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ScenarioConfig {
    /// A bare config for the given kind; everything else defaults.
    pub fn for_kind(kind: ScenarioKind) -> Self {
        Self {
            kind,
            n: None,
            d_mhz: None,
            matrix: None,
            observable_mode: None,
            tau_start_ns: None,
            tau_end_ns: None,
            tau_step_ns: None,
            theta_step_deg: None,
            out_dir: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }

    /// Builds the spin system and sweep grid, applying defaults and
    /// validating every field.
    pub fn resolve(&self) -> Result<ResolvedScenario> {
        let spec = match self.kind {
            ScenarioKind::Uniform => {
                if self.matrix.is_some() {
                    return Err(Error::ValidationError {
                        field: "matrix".into(),
                        message: "uniform scenarios take n and d_mhz, not a matrix".into(),
                    });
                }
                let n = self.n.ok_or_else(|| Error::ValidationError {
                    field: "n".into(),
                    message: "uniform scenarios require n".into(),
                })?;
                let d_mhz = self.d_mhz.ok_or_else(|| Error::ValidationError {
                    field: "d_mhz".into(),
                    message: "uniform scenarios require d_mhz".into(),
                })?;
                scenario_uniform(n, d_mhz)?
            }
            ScenarioKind::Triangle | ScenarioKind::Chain => {
                if self.matrix.is_some() || self.d_mhz.is_some() {
                    return Err(Error::ValidationError {
                        field: "matrix".into(),
                        message: "triangle/chain presets fix their couplings".into(),
                    });
                }
                if let Some(n) = self.n {
                    if n != 3 {
                        return Err(Error::ValidationError {
                            field: "n".into(),
                            message: format!("triangle/chain presets fix n = 3, got {n}"),
                        });
                    }
                }
                if self.kind == ScenarioKind::Triangle {
                    scenario_triangle()
                } else {
                    scenario_chain()
                }
            }
            ScenarioKind::Custom => {
                if self.d_mhz.is_some() {
                    return Err(Error::ValidationError {
                        field: "d_mhz".into(),
                        message: "custom scenarios take a matrix, not d_mhz".into(),
                    });
                }
                let rows = self.matrix.as_ref().ok_or_else(|| Error::ValidationError {
                    field: "matrix".into(),
                    message: "custom scenarios require a coupling matrix".into(),
                })?;
                let n = rows.len();
                if n == 0 || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::ValidationError {
                        field: "matrix".into(),
                        message: "coupling matrix must be square and non-empty".into(),
                    });
                }
                if let Some(cfg_n) = self.n {
                    if cfg_n != n {
                        return Err(Error::ValidationError {
                            field: "n".into(),
                            message: format!("n = {cfg_n} disagrees with a {n} x {n} matrix"),
                        });
                    }
                }
                let couplings =
                    DMatrix::from_fn(n, n, |i, j| rows[i][j]);
                SpinSystemSpec::new(n, couplings, ObservableMode::Collective).map_err(|e| {
                    match e {
                        Error::AsymmetricCouplings { row, col } => Error::ValidationError {
                            field: format!("matrix[{row}][{col}]"),
                            message: "coupling matrix must be symmetric with zero diagonal"
                                .into(),
                        },
                        other => other,
                    }
                })?
            }
        };

        let spec = match self.observable_mode {
            Some(mode_cfg) => {
                let mode = mode_cfg.to_internal(spec.n_spins())?;
                spec.with_observable_mode(mode)?
            }
            None => spec,
        };

        let grid = SweepGrid {
            tau_start_ns: self.tau_start_ns.unwrap_or(0.0),
            tau_end_ns: self.tau_end_ns.unwrap_or_else(|| self.kind.default_tau_end_ns()),
            tau_step_ns: self.tau_step_ns.unwrap_or(1.0),
            theta_start_deg: 0.0,
            theta_end_deg: 180.0 - self.theta_step_deg.unwrap_or(1.0),
            theta_step_deg: self.theta_step_deg.unwrap_or(1.0),
        };
        grid.validate()?;

        Ok(ResolvedScenario { spec, grid, out_dir: self.out_dir.clone() })
    }
}

/// Outcome of [`ScenarioConfig::resolve`].
#[derive(Debug, Clone)]
pub struct ResolvedScenario {
    pub spec: SpinSystemSpec,
    pub grid: SweepGrid,
    pub out_dir: Option<PathBuf>,
}

/// Parses and validates a JSON scenario configuration.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let config: ScenarioConfig = serde_json::from_str(text)
        .map_err(|e| Error::SchemaError { message: e.to_string() })?;
    // Resolve eagerly so structural problems surface at parse time.
    config.resolve()?;
    Ok(config)
}
