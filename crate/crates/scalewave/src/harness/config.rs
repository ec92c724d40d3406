//! Declarative run configuration: a TOML key-value tree (JSON mirror
//! accepted), validated with field-level messages. Every output file embeds
//! the resolved configuration, so all numbers in the file are reproducible
//! from the file alone.

use crate::exponents::{CoefficientPair, ExponentPair, SystemCoefficients};
use crate::linear_modes::RadialData;
use crate::semilinear_sim::DataProfile;
use serde::{Deserialize, Serialize};
use std::path::Path;

use super::HarnessError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CoefficientsConfig {
    pub mu1: f64,
    pub nu1_sq: f64,
    pub mu2: f64,
    pub nu2_sq: f64,
    pub n: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExponentsConfig {
    pub p: f64,
    pub q: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepConfig {
    pub p_min: f64,
    pub p_max: f64,
    pub p_count: usize,
    pub q_min: f64,
    pub q_max: f64,
    pub q_count: usize,
    #[serde(default)]
    pub simulate: bool,
    /// Rescale the data so its largest amplitude is this value for cells
    /// classified blow-up (large data probes the blow-up theorem)...
    #[serde(default)]
    pub blowup_amplitude: Option<f64>,
    /// ...and this value for global-existence cells (small data for the
    /// small-data theorems).
    #[serde(default)]
    pub global_amplitude: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GridConfig {
    pub half_width: f64,
    pub nodes: usize,
    #[serde(default = "default_cfl")]
    pub cfl_factor: f64,
}

fn default_cfl() -> f64 {
    0.5
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TimeConfig {
    pub t_end: f64,
    #[serde(default = "default_sample_interval")]
    pub sample_interval: f64,
}

fn default_sample_interval() -> f64 {
    0.5
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FitConfig {
    pub window: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LinearConfig {
    pub u0: RadialData,
    pub u1: RadialData,
    /// Which equation's coefficients drive the linear flow (1 or 2).
    #[serde(default = "default_equation")]
    pub equation: u8,
    pub t_max: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub start_time: f64,
}

fn default_equation() -> u8 {
    1
}

fn default_samples() -> usize {
    200
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TolerancesConfig {
    #[serde(default = "default_ode_tol")]
    pub ode_tol: f64,
    #[serde(default = "default_slope_tol")]
    pub slope_tol: f64,
    /// Loss of decay assigned in the limit cases p = p̃ / q = q̃.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_blowup_factor")]
    pub blowup_factor: f64,
    /// Cells with |max F| below this band are never counted against
    /// agreement (finite windows cannot resolve the critical curve).
    #[serde(default = "default_boundary_band")]
    pub boundary_band: f64,
}

fn default_ode_tol() -> f64 {
    1e-10
}
fn default_slope_tol() -> f64 {
    0.25
}
fn default_epsilon() -> f64 {
    1e-3
}
fn default_blowup_factor() -> f64 {
    1e8
}
fn default_boundary_band() -> f64 {
    0.02
}

impl Default for TolerancesConfig {
    fn default() -> Self {
        TolerancesConfig {
            ode_tol: default_ode_tol(),
            slope_tol: default_slope_tol(),
            epsilon: default_epsilon(),
            blowup_factor: default_blowup_factor(),
            boundary_band: default_boundary_band(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct OutputConfig {
    #[serde(default)]
    pub dir: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DiagnosticsConfig {
    /// Scales R for the space-time functionals (requires field snapshots).
    #[serde(default)]
    pub functional_scales: Vec<f64>,
    #[serde(default = "default_tau_over_r")]
    pub tau_over_r: f64,
}

fn default_tau_over_r() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunConfig {
    pub coefficients: CoefficientsConfig,
    #[serde(default)]
    pub exponents: Option<ExponentsConfig>,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub data: Vec<DataProfile>,
    #[serde(default)]
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub time: Option<TimeConfig>,
    #[serde(default)]
    pub fit: Option<FitConfig>,
    #[serde(default)]
    pub linear: Option<LinearConfig>,
    #[serde(default)]
    pub tolerances: TolerancesConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub diagnostics: Option<DiagnosticsConfig>,
    /// Worker count for sweeps. Excluded from the embedded resolved config
    /// so outputs are byte-identical across parallelism degrees.
    #[serde(default, skip_serializing)]
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            HarnessError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        let cfg: RunConfig = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text)
                .map_err(|e| HarnessError::Config(format!("config parse error: {e}")))?
        } else {
            toml::from_str(&text)
                .map_err(|e| HarnessError::Config(format!("config parse error: {e}")))?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_toml_str(text: &str) -> Result<Self, HarnessError> {
        let cfg: RunConfig = toml::from_str(text)
            .map_err(|e| HarnessError::Config(format!("config parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Field-level validation of every section present.
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |field: &str, msg: String| Err(HarnessError::Config(format!("{field}: {msg}")));
        let c = &self.coefficients;
        if !(c.mu1 >= 0.0 && c.mu1.is_finite()) {
            return bad(
                "coefficients.mu1",
                format!("must be finite and >= 0, got {}", c.mu1),
            );
        }
        if !(c.mu2 >= 0.0 && c.mu2.is_finite()) {
            return bad(
                "coefficients.mu2",
                format!("must be finite and >= 0, got {}", c.mu2),
            );
        }
        if !(c.nu1_sq >= 0.0 && c.nu1_sq.is_finite()) {
            return bad(
                "coefficients.nu1_sq",
                format!("must be finite and >= 0, got {}", c.nu1_sq),
            );
        }
        if !(c.nu2_sq >= 0.0 && c.nu2_sq.is_finite()) {
            return bad(
                "coefficients.nu2_sq",
                format!("must be finite and >= 0, got {}", c.nu2_sq),
            );
        }
        if c.n < 1 {
            return bad("coefficients.n", "must be >= 1".into());
        }
        if let Some(e) = &self.exponents {
            if !(e.p > 1.0) {
                return bad("exponents.p", format!("must be > 1, got {}", e.p));
            }
            if !(e.q > 1.0) {
                return bad("exponents.q", format!("must be > 1, got {}", e.q));
            }
        }
        if let Some(s) = &self.sweep {
            if s.p_count > 0 && !(s.p_min > 1.0 && s.p_max >= s.p_min) {
                return bad("sweep.p_min", "need 1 < p_min <= p_max".into());
            }
            if s.q_count > 0 && !(s.q_min > 1.0 && s.q_max >= s.q_min) {
                return bad("sweep.q_min", "need 1 < q_min <= q_max".into());
            }
            if s.simulate && s.p_count * s.q_count > 10_000 {
                return bad(
                    "sweep",
                    format!(
                        "simulation-backed sweeps are capped at 10000 cells (got {})",
                        s.p_count * s.q_count
                    ),
                );
            }
        }
        if let Some(g) = &self.grid {
            if g.nodes < 64 {
                return bad("grid.nodes", format!("must be >= 64, got {}", g.nodes));
            }
            if !(g.half_width > 0.0) {
                return bad("grid.half_width", "must be positive".into());
            }
            if !(g.cfl_factor > 0.0 && g.cfl_factor <= 1.0) {
                return bad("grid.cfl_factor", "must lie in (0, 1]".into());
            }
            for (i, d) in self.data.iter().enumerate() {
                if !(d.support_radius > 0.0 && d.support_radius < g.half_width) {
                    return bad(
                        &format!("data[{i}].support_radius"),
                        format!("must lie in (0, half_width = {})", g.half_width),
                    );
                }
            }
        }
        for (i, d) in self.data.iter().enumerate() {
            if !d.amplitude.is_finite() {
                return bad(&format!("data[{i}].amplitude"), "must be finite".into());
            }
        }
        if let Some(t) = &self.time {
            if !(t.t_end > 0.0) {
                return bad("time.t_end", "must be positive".into());
            }
            if !(t.sample_interval > 0.0) {
                return bad("time.sample_interval", "must be positive".into());
            }
        }
        if let Some(f) = &self.fit {
            if !(f.window[1] > f.window[0]) {
                return bad("fit.window", "need window[1] > window[0]".into());
            }
        }
        if let Some(l) = &self.linear {
            if !(l.equation == 1 || l.equation == 2) {
                return bad("linear.equation", "must be 1 or 2".into());
            }
            if !(l.t_max > 0.0) {
                return bad("linear.t_max", "must be positive".into());
            }
            if l.samples < 10 {
                return bad("linear.samples", "need at least 10 samples".into());
            }
            if !(l.start_time >= 0.0) {
                return bad("linear.start_time", "must be >= 0".into());
            }
            for (field, data) in [("linear.u0", &l.u0), ("linear.u1", &l.u1)] {
                let ok = match *data {
                    RadialData::Gaussian { amplitude, sigma } => {
                        amplitude.is_finite() && sigma > 0.0
                    }
                    RadialData::Bump { amplitude, radius } => amplitude.is_finite() && radius > 0.0,
                    RadialData::Zero => true,
                };
                if !ok {
                    return bad(
                        field,
                        "needs a finite amplitude and a positive width".into(),
                    );
                }
            }
        }
        let tol = &self.tolerances;
        if !(tol.ode_tol > 0.0 && tol.ode_tol <= 1e-3) {
            return bad("tolerances.ode_tol", "must lie in (0, 1e-3]".into());
        }
        if !(tol.slope_tol > 0.0) {
            return bad("tolerances.slope_tol", "must be positive".into());
        }
        if !(tol.epsilon > 0.0) {
            return bad("tolerances.epsilon", "must be positive".into());
        }
        if let Some(d) = &self.diagnostics {
            if d.functional_scales.windows(2).any(|w| w[1] <= w[0]) {
                return bad("diagnostics.functional_scales", "must be increasing".into());
            }
            if !(d.tau_over_r > 0.0) {
                return bad("diagnostics.tau_over_r", "must be positive".into());
            }
        }
        Ok(())
    }

    pub fn system_coefficients(&self) -> Result<SystemCoefficients, HarnessError> {
        let c = &self.coefficients;
        let eq1 = CoefficientPair::new(c.mu1, c.nu1_sq)
            .map_err(|e| HarnessError::Config(format!("coefficients: {e}")))?;
        let eq2 = CoefficientPair::new(c.mu2, c.nu2_sq)
            .map_err(|e| HarnessError::Config(format!("coefficients: {e}")))?;
        SystemCoefficients::new(eq1, eq2, c.n)
            .map_err(|e| HarnessError::Config(format!("coefficients: {e}")))
    }

    pub fn exponent_pair(&self) -> Result<ExponentPair, HarnessError> {
        let e = self
            .exponents
            .as_ref()
            .ok_or_else(|| HarnessError::Config("exponents: section required".into()))?;
        ExponentPair::new(e.p, e.q).map_err(|e| HarnessError::Config(format!("exponents: {e}")))
    }

    pub fn require<'a, T>(opt: &'a Option<T>, section: &str) -> Result<&'a T, HarnessError> {
        opt.as_ref()
            .ok_or_else(|| HarnessError::Config(format!("{section}: section required")))
    }
}
