//! Scenario configuration files (TOML, strictly validated).
//!
//! Every physical input is in SI units, named with its unit suffix. Each
//! scenario reads its geometry from a table named after it; any other
//! scenario table is rejected.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use vacforce::materials::{BLACKBODY_EPSILON, GOLD_NU, GOLD_OMEGA_P};
use vacforce::quadrature::QuadratureSpec;
use vacforce::thermal::GOLD_NUMBER_DENSITY_M3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioName {
    Needle,
    Shell,
    JanusBall,
    Plate,
    WrenchLarge,
    WrenchSmall,
    DualFlags,
    Voxel,
    FirstOrderTorque,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 9] = [
        ScenarioName::Needle,
        ScenarioName::Shell,
        ScenarioName::JanusBall,
        ScenarioName::Plate,
        ScenarioName::WrenchLarge,
        ScenarioName::WrenchSmall,
        ScenarioName::DualFlags,
        ScenarioName::Voxel,
        ScenarioName::FirstOrderTorque,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::Needle => "needle",
            ScenarioName::Shell => "shell",
            ScenarioName::JanusBall => "janus-ball",
            ScenarioName::Plate => "plate",
            ScenarioName::WrenchLarge => "wrench-large",
            ScenarioName::WrenchSmall => "wrench-small",
            ScenarioName::DualFlags => "dual-flags",
            ScenarioName::Voxel => "voxel",
            ScenarioName::FirstOrderTorque => "first-order-torque",
        }
    }

    /// Sweep variables the scenario understands.
    pub fn sweep_variables(self) -> &'static [SweepVariable] {
        use SweepVariable::*;
        match self {
            ScenarioName::Needle => &[TRatio, LengthM],
            ScenarioName::Shell => &[TRatio, OmegaA],
            ScenarioName::JanusBall => &[TRatio, OmegaA, U0],
            ScenarioName::Plate => &[TRatio],
            ScenarioName::WrenchLarge | ScenarioName::WrenchSmall => &[TRatio, OmegaA, U0],
            ScenarioName::DualFlags => &[TRatio],
            ScenarioName::Voxel => &[TRatio],
            ScenarioName::FirstOrderTorque => &[TRatio],
        }
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub scenario: ScenarioName,
    /// Output file stem; defaults to the scenario name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub thermal: ThermalConfig,
    #[serde(default)]
    pub materials: MaterialsConfig,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub needle: Option<NeedleConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shell: Option<ShellConfig>,
    #[serde(default, rename = "janus-ball", skip_serializing_if = "Option::is_none")]
    pub janus_ball: Option<JanusConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plate: Option<PlateConfig>,
    #[serde(default, rename = "wrench-large", skip_serializing_if = "Option::is_none")]
    pub wrench_large: Option<WrenchConfig>,
    #[serde(default, rename = "wrench-small", skip_serializing_if = "Option::is_none")]
    pub wrench_small: Option<WrenchConfig>,
    #[serde(default, rename = "dual-flags", skip_serializing_if = "Option::is_none")]
    pub dual_flags: Option<FlagsConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub voxel: Option<VoxelConfig>,
    #[serde(default, rename = "first-order-torque", skip_serializing_if = "Option::is_none")]
    pub first_order_torque: Option<FirstOrderConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ThermalConfig {
    pub t_env_k: f64,
    pub t_body_k: f64,
}

impl Default for ThermalConfig {
    fn default() -> Self {
        Self { t_env_k: 300.0, t_body_k: 600.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Part {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MaterialsConfig {
    /// Real susceptibility of the dielectric part.
    pub dielectric_chi: f64,
    pub omega_p_ev: f64,
    pub nu_ev: f64,
    pub blackbody_epsilon_ev: f64,
    pub dielectric_density_kg_m3: f64,
    pub metal_density_kg_m3: f64,
    pub metal_number_density_m3: f64,
    /// Which part is the metal (the other is the dielectric or blackbody).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metal_part: Option<Part>,
    /// Optional tabulated metal susceptibility (ω in eV, Re χ, Im χ).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metal_table: Option<PathBuf>,
}

impl Default for MaterialsConfig {
    fn default() -> Self {
        Self {
            dielectric_chi: 1.0,
            omega_p_ev: GOLD_OMEGA_P,
            nu_ev: GOLD_NU,
            blackbody_epsilon_ev: BLACKBODY_EPSILON,
            dielectric_density_kg_m3: 2200.0,
            metal_density_kg_m3: 19300.0,
            metal_number_density_m3: GOLD_NUMBER_DENSITY_M3,
            metal_part: None,
            metal_table: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub mc_samples: u64,
    pub seed: u64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        let d = QuadratureSpec::default();
        Self { rel_tol: 1e-6, abs_tol: d.abs_tol, max_subdivisions: d.max_subdivisions, mc_samples: d.mc_samples, seed: d.seed }
    }
}

impl QuadratureConfig {
    pub fn spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_subdivisions: self.max_subdivisions,
            mc_samples: self.mc_samples,
            seed: self.seed,
            oscillation_period_hint: None,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    /// T′/T at fixed T.
    TRatio,
    /// Dimensionless ωa of the geometric integral.
    OmegaA,
    /// Needle half-length a = b in metres.
    LengthM,
    /// Initial T′/T of a cooling run.
    U0,
}

impl SweepVariable {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepVariable::TRatio => "t_ratio",
            SweepVariable::OmegaA => "omega_a",
            SweepVariable::LengthM => "length_m",
            SweepVariable::U0 => "u0",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub variable: SweepVariable,
    /// Explicit grid; otherwise `from`, `to`, `points` (and `spacing`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing: Option<Spacing>,
}

impl SweepConfig {
    pub fn grid(&self) -> Result<Vec<f64>, String> {
        let g = match (&self.values, self.from, self.to, self.points) {
            (Some(v), None, None, None) => v.clone(),
            (None, Some(a), Some(b), Some(n)) => {
                if n < 2 {
                    return Err("sweep needs at least 2 points".into());
                }
                let t = |i: usize| i as f64 / (n - 1) as f64;
                match self.spacing.unwrap_or_default() {
                    Spacing::Linear => (0..n).map(|i| a + (b - a) * t(i)).collect(),
                    Spacing::Log => {
                        if !(a > 0.0 && b > 0.0) {
                            return Err("log spacing needs positive end points".into());
                        }
                        (0..n).map(|i| a * (b / a).powf(t(i))).collect()
                    }
                }
            }
            _ => return Err("sweep takes either `values` or all of `from`, `to`, `points`".into()),
        };
        if g.is_empty() {
            return Err("sweep grid is empty".into());
        }
        if g.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err("sweep values must be positive and finite".into());
        }
        let up = g.windows(2).all(|w| w[1] > w[0]);
        let down = g.windows(2).all(|w| w[1] < w[0]);
        if !(up || down) {
            return Err("sweep grid must be strictly monotone".into());
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    /// Write a gnuplot script next to each CSV.
    pub plot_script: bool,
    pub json: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { plot_script: true, json: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NeedleConfig {
    pub a_m: f64,
    pub b_m: f64,
    pub radius_m: f64,
}

impl Default for NeedleConfig {
    fn default() -> Self {
        Self { a_m: 1e-2, b_m: 1e-2, radius_m: 1e-3 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ShellConfig {
    pub radius_m: f64,
    /// Defaults to the minimum skin depth 2/ω_p.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thickness_m: Option<f64>,
    /// Range of the power-law fit of the scaled integral.
    pub fit_from: f64,
    pub fit_to: f64,
}

impl Default for ShellConfig {
    fn default() -> Self {
        Self { radius_m: 1e-2, thickness_m: None, fit_from: 20.0, fit_to: 100.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum JanusEngineConfig {
    #[default]
    Profile,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct JanusConfig {
    pub radius_m: f64,
    pub engine: JanusEngineConfig,
}

impl Default for JanusConfig {
    fn default() -> Self {
        Self { radius_m: 1e-7, engine: JanusEngineConfig::Profile }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PlateConfig {
    pub area_m2: f64,
    pub t_a_m: f64,
    pub t_b_m: f64,
}

impl Default for PlateConfig {
    fn default() -> Self {
        Self { area_m2: 1e-4, t_a_m: 1e-8, t_b_m: 1e-8 }
    }
}

/// Wrench geometry; unset fields take the defaults of the large or small object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct WrenchConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wire_radius_m: Option<f64>,
    /// Also integrate the full J_AB(ω) over frequency.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_torque: Option<bool>,
    /// b/a for the ωa sweep of the geometric factor.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_over_a: Option<f64>,
}

/// A fully specified wrench.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wrench {
    pub a_m: f64,
    pub b_m: f64,
    pub wire_radius_m: f64,
    pub full_torque: bool,
    pub b_over_a: f64,
}

impl WrenchConfig {
    fn filled(&self, large: bool) -> Self {
        let a = if large { 1e-2 } else { 1e-6 };
        Self {
            a_m: Some(self.a_m.unwrap_or(a)),
            b_m: Some(self.b_m.unwrap_or(self.a_m.unwrap_or(a))),
            wire_radius_m: Some(self.wire_radius_m.unwrap_or(5e-8)),
            full_torque: Some(self.full_torque.unwrap_or(!large)),
            b_over_a: Some(self.b_over_a.unwrap_or(1.0)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FlagsConfig {
    pub a_m: f64,
    pub b_m: f64,
    pub wire_radius_m: f64,
    pub flag_height_m: f64,
    pub flag_thickness_m: f64,
}

impl Default for FlagsConfig {
    fn default() -> Self {
        Self { a_m: 1e-6, b_m: 1e-6, wire_radius_m: 5e-8, flag_height_m: 1e-6, flag_thickness_m: 1e-7 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VoxelConfig {
    /// Point-cloud file; without it a needle is voxelized from the fields below.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    pub a_m: f64,
    pub b_m: f64,
    pub radius_m: f64,
    pub points_per_part: usize,
}

impl Default for VoxelConfig {
    fn default() -> Self {
        Self { path: None, a_m: 1e-6, b_m: 1e-6, radius_m: 1e-8, points_per_part: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FirstOrderConfig {
    /// Toy polarizability Re α_jk = A ε_jkz with A in m³.
    pub amplitude_m3: f64,
}

impl Default for FirstOrderConfig {
    fn default() -> Self {
        Self { amplitude_m3: 1e-21 }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

impl Config {
    /// Parses and validates; unknown keys and foreign scenario tables are errors.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let c: Config = toml::from_str(text).map_err(|e| ConfigError(format!("config parse error: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn defaults(scenario: ScenarioName) -> Self {
        let c = Config {
            scenario,
            label: None,
            thermal: ThermalConfig::default(),
            materials: MaterialsConfig::default(),
            quadrature: QuadratureConfig::default(),
            sweep: None,
            output: OutputConfig::default(),
            needle: None,
            shell: None,
            janus_ball: None,
            plate: None,
            wrench_large: None,
            wrench_small: None,
            dual_flags: None,
            voxel: None,
            first_order_torque: None,
        };
        c.resolved()
    }

    fn present_tables(&self) -> Vec<ScenarioName> {
        let mut v = Vec::new();
        let mut push = |on: bool, s| {
            if on {
                v.push(s)
            }
        };
        push(self.needle.is_some(), ScenarioName::Needle);
        push(self.shell.is_some(), ScenarioName::Shell);
        push(self.janus_ball.is_some(), ScenarioName::JanusBall);
        push(self.plate.is_some(), ScenarioName::Plate);
        push(self.wrench_large.is_some(), ScenarioName::WrenchLarge);
        push(self.wrench_small.is_some(), ScenarioName::WrenchSmall);
        push(self.dual_flags.is_some(), ScenarioName::DualFlags);
        push(self.voxel.is_some(), ScenarioName::Voxel);
        push(self.first_order_torque.is_some(), ScenarioName::FirstOrderTorque);
        v
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError(m));
        for s in self.present_tables() {
            if s != self.scenario {
                return bad(format!("table [{s}] does not belong to scenario \"{}\"", self.scenario));
            }
        }
        let positive = [
            ("thermal.t_env_k", self.thermal.t_env_k),
            ("thermal.t_body_k", self.thermal.t_body_k),
            ("materials.omega_p_ev", self.materials.omega_p_ev),
            ("materials.nu_ev", self.materials.nu_ev),
            ("materials.blackbody_epsilon_ev", self.materials.blackbody_epsilon_ev),
            ("materials.dielectric_density_kg_m3", self.materials.dielectric_density_kg_m3),
            ("materials.metal_density_kg_m3", self.materials.metal_density_kg_m3),
            ("materials.metal_number_density_m3", self.materials.metal_number_density_m3),
            ("quadrature.rel_tol", self.quadrature.rel_tol),
            ("quadrature.abs_tol", self.quadrature.abs_tol),
        ];
        for (k, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{k} must be positive, got {v}"));
            }
        }
        if !self.materials.dielectric_chi.is_finite() {
            return bad("materials.dielectric_chi must be finite".into());
        }
        if self.quadrature.mc_samples < 10_000 {
            return bad("quadrature.mc_samples must be at least 10000".into());
        }
        if self.quadrature.max_subdivisions == 0 {
            return bad("quadrature.max_subdivisions must be at least 1".into());
        }
        if let Some(sw) = &self.sweep {
            if !self.scenario.sweep_variables().contains(&sw.variable) {
                return bad(format!("scenario \"{}\" cannot sweep {}", self.scenario, sw.variable.as_str()));
            }
            sw.grid().map_err(ConfigError)?;
        }
        if let Some(l) = &self.label {
            if l.is_empty() || l.contains(['/', '\\']) {
                return bad(format!("label {l:?} is not a plain file stem"));
            }
        }
        let r = self.resolved();
        let dims: Vec<(&str, f64)> = match r.scenario {
            ScenarioName::Needle => {
                let n = r.needle.as_ref().expect("resolved");
                vec![("a_m", n.a_m), ("b_m", n.b_m), ("radius_m", n.radius_m)]
            }
            ScenarioName::Shell => {
                let s = r.shell.as_ref().expect("resolved");
                let mut v = vec![("radius_m", s.radius_m), ("fit_from", s.fit_from), ("fit_to", s.fit_to)];
                if let Some(t) = s.thickness_m {
                    v.push(("thickness_m", t));
                }
                v
            }
            ScenarioName::JanusBall => vec![("radius_m", r.janus_ball.as_ref().expect("resolved").radius_m)],
            ScenarioName::Plate => {
                let p = r.plate.as_ref().expect("resolved");
                vec![("area_m2", p.area_m2), ("t_a_m", p.t_a_m), ("t_b_m", p.t_b_m)]
            }
            ScenarioName::WrenchLarge | ScenarioName::WrenchSmall => {
                let w = r.wrench().expect("resolved");
                vec![("a_m", w.a_m), ("b_m", w.b_m), ("wire_radius_m", w.wire_radius_m), ("b_over_a", w.b_over_a)]
            }
            ScenarioName::DualFlags => {
                let f = r.dual_flags.as_ref().expect("resolved");
                vec![
                    ("a_m", f.a_m),
                    ("b_m", f.b_m),
                    ("wire_radius_m", f.wire_radius_m),
                    ("flag_height_m", f.flag_height_m),
                    ("flag_thickness_m", f.flag_thickness_m),
                ]
            }
            ScenarioName::Voxel => {
                let v = r.voxel.as_ref().expect("resolved");
                if v.points_per_part == 0 {
                    return bad("voxel.points_per_part must be at least 1".into());
                }
                vec![("a_m", v.a_m), ("b_m", v.b_m), ("radius_m", v.radius_m)]
            }
            ScenarioName::FirstOrderTorque => vec![],
        };
        for (k, v) in dims {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("[{}] {k} must be positive, got {v}", r.scenario));
            }
        }
        Ok(())
    }

    /// The config with the scenario table and all defaults filled in.
    pub fn resolved(&self) -> Self {
        let mut c = self.clone();
        match c.scenario {
            ScenarioName::Needle => {
                c.needle.get_or_insert_with(NeedleConfig::default);
            }
            ScenarioName::Shell => {
                c.shell.get_or_insert_with(ShellConfig::default);
            }
            ScenarioName::JanusBall => {
                c.janus_ball.get_or_insert_with(JanusConfig::default);
            }
            ScenarioName::Plate => {
                c.plate.get_or_insert_with(PlateConfig::default);
            }
            ScenarioName::WrenchLarge => {
                c.wrench_large = Some(c.wrench_large.unwrap_or_default().filled(true));
            }
            ScenarioName::WrenchSmall => {
                c.wrench_small = Some(c.wrench_small.unwrap_or_default().filled(false));
            }
            ScenarioName::DualFlags => {
                c.dual_flags.get_or_insert_with(FlagsConfig::default);
            }
            ScenarioName::Voxel => {
                c.voxel.get_or_insert_with(VoxelConfig::default);
            }
            ScenarioName::FirstOrderTorque => {
                c.first_order_torque.get_or_insert_with(FirstOrderConfig::default);
            }
        }
        if c.materials.metal_part.is_none() {
            c.materials.metal_part = Some(match c.scenario {
                ScenarioName::WrenchLarge | ScenarioName::WrenchSmall | ScenarioName::DualFlags => Part::A,
                _ => Part::B,
            });
        }
        if c.label.is_none() {
            c.label = Some(c.scenario.as_str().to_string());
        }
        c
    }

    /// The wrench of a resolved wrench config.
    pub fn wrench(&self) -> Option<Wrench> {
        let (w, large) = match self.scenario {
            ScenarioName::WrenchLarge => (self.wrench_large.as_ref(), true),
            ScenarioName::WrenchSmall => (self.wrench_small.as_ref(), false),
            _ => return None,
        };
        let w = w.cloned().unwrap_or_default().filled(large);
        Some(Wrench {
            a_m: w.a_m?,
            b_m: w.b_m?,
            wire_radius_m: w.wire_radius_m?,
            full_torque: w.full_torque?,
            b_over_a: w.b_over_a?,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}
