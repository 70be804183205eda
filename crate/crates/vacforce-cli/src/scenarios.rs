//! The named scenarios: body construction from a resolved config, the
//! scalar results and the optional sweep curve.

use std::f64::consts::PI;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use nalgebra::Matrix3;
use num_complex::Complex64;

use vacforce::constants::{Dimension, UnitSystem};
use vacforce::dynamics::{
    friction_coefficient, terminal_angular_velocity, terminal_velocity_cooling, velocity_trajectory_friction, Drive,
    KinematicScenario,
};
use vacforce::geometry::{
    janus_scaled_integral, moment_of_inertia, shell_power_law_fit, shell_scaled_integral, wrench_reduced_integral,
    JanusEngine, Shape, TwoPartBody, VoxelCloud,
};
use vacforce::materials::{mean_polarizability, parse_table, MaterialModel};
use vacforce::observables::{
    force_z, scenario_force_curve, torque_first_order, torque_hat, torque_second_order, wrench_torque_prefactor,
    ObservableResult, WrenchRegime, SHELL_QUOTED_N,
};
use vacforce::quadrature::{IntegralResult, QuadratureSpec};
use vacforce::thermal::{cooling_timescale_tc, radiated_power, ThermalPair};

use crate::config::{Config, JanusEngineConfig, Part, ScenarioName, Spacing, SweepVariable};

/// A named scalar result with its numerical error, if one applies.
#[derive(Debug, Clone, PartialEq)]
pub struct Scalar {
    pub name: String,
    pub value: f64,
    pub error: Option<f64>,
    pub unit: &'static str,
    pub converged: bool,
}

/// A table of sweep results; the first column is the sweep variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub converged: Vec<bool>,
    pub log_x: bool,
    pub log_y: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub scenario: ScenarioName,
    pub scalars: Vec<Scalar>,
    pub curve: Option<Curve>,
    pub notes: Vec<String>,
}

impl Report {
    fn new(scenario: ScenarioName) -> Self {
        Self { scenario, scalars: Vec::new(), curve: None, notes: Vec::new() }
    }

    fn push(&mut self, name: &str, value: f64, error: Option<f64>, unit: &'static str, converged: bool) {
        self.scalars.push(Scalar { name: name.into(), value, error, unit, converged });
    }

    fn exact(&mut self, name: &str, value: f64, unit: &'static str) {
        self.push(name, value, None, unit, true);
    }

    fn integral(&mut self, name: &str, r: &IntegralResult, scale: f64, unit: &'static str) {
        self.push(name, r.value * scale, Some(r.error_estimate * scale.abs()), unit, r.converged);
    }

    fn observable(&mut self, name: &str, o: &ObservableResult, unit: &'static str) {
        self.push(name, o.value, Some(o.numerical_error), unit, o.converged);
        if let (Some(r), Some(p)) = (o.reduced, &o.prefactor) {
            self.push(&format!("{name}_reduced"), r, o.reduced_error(), "1", o.converged);
            self.exact(&format!("{name}_prefactor"), p.si(), unit);
            self.notes.push(format!("{name} normalization: {}", p.label));
        }
        for n in &o.notes {
            if !self.notes.contains(n) {
                self.notes.push(n.clone());
            }
        }
    }

    /// Names of every scalar or curve row that missed its tolerance.
    pub fn unconverged(&self) -> Vec<String> {
        let mut v: Vec<String> = self.scalars.iter().filter(|s| !s.converged).map(|s| s.name.clone()).collect();
        if let Some(c) = &self.curve {
            for (row, ok) in c.rows.iter().zip(&c.converged) {
                if !ok {
                    v.push(format!("curve row {} = {}", c.columns[0], row[0]));
                }
            }
        }
        v
    }

    pub fn scalar(&self, name: &str) -> Option<&Scalar> {
        self.scalars.iter().find(|s| s.name == name)
    }
}

fn si(x: f64, d: Dimension) -> f64 {
    UnitSystem::SI.to_natural(x, d)
}

fn length(x: f64) -> f64 {
    si(x, Dimension::Length)
}

/// Materials and densities resolved from a config.
pub struct Materials {
    pub metal: MaterialModel,
    pub other: MaterialModel,
    pub metal_density: f64,
    pub other_density: f64,
    pub number_density: f64,
    pub metal_part: Part,
}

impl Materials {
    pub fn from_config(cfg: &Config) -> Result<Self> {
        let m = &cfg.materials;
        let metal = match &m.metal_table {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let (table, _) = parse_table(&text).with_context(|| format!("parsing {}", path.display()))?;
                MaterialModel::Tabulated(Arc::new(table))
            }
            None => MaterialModel::drude(m.omega_p_ev, m.nu_ev)?,
        };
        let other = match cfg.scenario {
            ScenarioName::Plate => MaterialModel::BlackbodySurface { epsilon_reg: m.blackbody_epsilon_ev },
            _ => MaterialModel::dielectric(m.dielectric_chi),
        };
        Ok(Self {
            metal,
            other,
            metal_density: si(m.metal_density_kg_m3, Dimension::MassDensity),
            other_density: si(m.dielectric_density_kg_m3, Dimension::MassDensity),
            number_density: si(m.metal_number_density_m3, Dimension::NumberDensity),
            metal_part: m.metal_part.unwrap_or(Part::B),
        })
    }

    pub fn body(&self, shape: Shape) -> Result<TwoPartBody> {
        let b = match self.metal_part {
            Part::A => TwoPartBody::new(shape, self.metal.clone(), self.other.clone())?
                .with_densities(self.metal_density, self.other_density),
            Part::B => TwoPartBody::new(shape, self.other.clone(), self.metal.clone())?
                .with_densities(self.other_density, self.metal_density),
        };
        Ok(b)
    }

    fn drude(&self) -> Option<(f64, f64)> {
        match self.metal {
            MaterialModel::Drude { omega_p, nu } => Some((omega_p, nu)),
            _ => None,
        }
    }
}

/// The two-part body a config describes (not defined for the first-order scenario).
pub fn body(cfg: &Config) -> Result<TwoPartBody> {
    let cfg = cfg.resolved();
    let mats = Materials::from_config(&cfg)?;
    mats.body(shape(&cfg, &mats)?)
}

fn shape(cfg: &Config, mats: &Materials) -> Result<Shape> {
    Ok(match cfg.scenario {
        ScenarioName::Needle => {
            let n = cfg.needle.as_ref().expect("resolved");
            Shape::Needle { a: length(n.a_m), b: length(n.b_m), s: PI * length(n.radius_m).powi(2) }
        }
        ScenarioName::Shell => {
            let s = cfg.shell.as_ref().expect("resolved");
            let t = match s.thickness_m {
                Some(t) => length(t),
                None => match mats.drude() {
                    Some((wp, _)) => 2.0 / wp,
                    None => bail!("[shell] thickness_m is required with a tabulated metal"),
                },
            };
            Shape::HemisphereShell { a: length(s.radius_m), t }
        }
        ScenarioName::JanusBall => {
            let j = cfg.janus_ball.as_ref().expect("resolved");
            let engine = match j.engine {
                JanusEngineConfig::Profile => JanusEngine::NestedProfile,
                JanusEngineConfig::MonteCarlo => JanusEngine::MonteCarlo,
            };
            Shape::JanusBall { a: length(j.radius_m), engine }
        }
        ScenarioName::Plate => {
            let p = cfg.plate.as_ref().expect("resolved");
            Shape::PlanarSlab { s: si(p.area_m2, Dimension::Area), t_a: length(p.t_a_m), t_b: length(p.t_b_m) }
        }
        ScenarioName::WrenchLarge | ScenarioName::WrenchSmall => {
            let w = cfg.wrench().expect("resolved");
            let s = PI * length(w.wire_radius_m).powi(2);
            Shape::AllenWrench { a: length(w.a_m), b: length(w.b_m), s_a: s, s_b: s }
        }
        ScenarioName::DualFlags => {
            let f = cfg.dual_flags.as_ref().expect("resolved");
            Shape::DualFlags {
                a: length(f.a_m),
                b: length(f.b_m),
                height: length(f.flag_height_m),
                thickness: length(f.flag_thickness_m),
                s_a: PI * length(f.wire_radius_m).powi(2),
            }
        }
        ScenarioName::Voxel => {
            let v = cfg.voxel.as_ref().expect("resolved");
            let cloud = match &v.path {
                Some(p) => {
                    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                    VoxelCloud::parse(&text).with_context(|| format!("parsing {}", p.display()))?
                }
                None => VoxelCloud::needle(
                    length(v.a_m),
                    length(v.b_m),
                    PI * length(v.radius_m).powi(2),
                    v.points_per_part,
                ),
            };
            Shape::Voxelized(Arc::new(cloud))
        }
        ScenarioName::FirstOrderTorque => bail!("the first-order scenario has no two-part body"),
    })
}

fn thermal(cfg: &Config, ratio: Option<f64>) -> Result<ThermalPair> {
    let t = cfg.thermal.t_env_k;
    Ok(ThermalPair::new(t, ratio.map_or(cfg.thermal.t_body_k, |u| u * t))?)
}

fn grid(cfg: &Config) -> Result<Option<(SweepVariable, Vec<f64>, bool)>> {
    let Some(sw) = &cfg.sweep else { return Ok(None) };
    let g = sw.grid().map_err(anyhow::Error::msg)?;
    let log = sw.spacing == Some(Spacing::Log);
    Ok(Some((sw.variable, g, log)))
}

fn curve(columns: &[&str], rows: Vec<(Vec<f64>, bool)>, log_x: bool, log_y: bool) -> Curve {
    let (rows, converged) = rows.into_iter().unzip();
    Curve { columns: columns.iter().map(|s| s.to_string()).collect(), rows, converged, log_x, log_y }
}

fn force_rows(body: &TwoPartBody, cfg: &Config, g: &[f64], q: &QuadratureSpec) -> Result<Vec<(Vec<f64>, bool)>> {
    let rows = scenario_force_curve(body, cfg.thermal.t_env_k, g, q)?;
    Ok(rows
        .into_iter()
        .map(|r| (vec![r.x, r.reduced.unwrap_or(f64::NAN), r.value, r.error], r.converged))
        .collect())
}

const FORCE_COLUMNS: [&str; 4] = ["t_ratio", "F_hat", "F_N", "F_error_N"];

/// Runs a resolved config.
pub fn execute(cfg: &Config) -> Result<Report> {
    let cfg = cfg.resolved();
    let q = cfg.quadrature.spec();
    q.validate()?;
    let th = thermal(&cfg, None)?;
    let mut rep = Report::new(cfg.scenario);
    let sweep = grid(&cfg)?;
    if cfg.scenario == ScenarioName::FirstOrderTorque {
        first_order(&cfg, &th, &q, sweep, &mut rep)?;
        return Ok(rep);
    }
    let mats = Materials::from_config(&cfg)?;
    let body = mats.body(shape(&cfg, &mats)?)?;
    if mats.drude().is_none() {
        rep.notes.push("tabulated metal: Drude normalizations and cooling times are not available".into());
    } else if cfg.materials.omega_p_ev == vacforce::materials::GOLD_OMEGA_P && cfg.materials.nu_ev == vacforce::materials::GOLD_NU {
        rep.notes.push("gold Drude parameters omega_p = 9.0 eV, nu = 0.035 eV are assumed standard fit values".into());
    }
    match cfg.scenario {
        ScenarioName::Needle => needle(&cfg, &mats, &body, &th, &q, sweep, &mut rep)?,
        ScenarioName::Shell => shell(&cfg, &body, &th, &q, sweep, &mut rep)?,
        ScenarioName::JanusBall => janus(&cfg, &mats, &body, &th, &q, sweep, &mut rep)?,
        ScenarioName::Plate => plate(&cfg, &body, &th, &q, sweep, &mut rep)?,
        ScenarioName::WrenchLarge | ScenarioName::WrenchSmall => wrench(&cfg, &mats, &body, &th, &q, sweep, &mut rep)?,
        ScenarioName::DualFlags => flags(&cfg, &mats, &body, &th, &q, sweep, &mut rep)?,
        ScenarioName::Voxel => voxel(&cfg, &body, &th, &q, sweep, &mut rep)?,
        ScenarioName::FirstOrderTorque => unreachable!(),
    }
    Ok(rep)
}

type Sweep = Option<(SweepVariable, Vec<f64>, bool)>;

fn needle(
    cfg: &Config,
    mats: &Materials,
    body: &TwoPartBody,
    th: &ThermalPair,
    q: &QuadratureSpec,
    sweep: Sweep,
    rep: &mut Report,
) -> Result<()> {
    let f = force_z(body, th, q)?;
    rep.observable("force", &f, "N");
    if mats.drude().is_some() {
        let alpha = |w: f64| mean_polarizability(body, w);
        let gamma = friction_coefficient(&alpha, th.t_env(), q)?;
        rep.push("friction_gamma", gamma.si, Some(gamma.si_error), "N s/m", gamma.natural.converged);
        if gamma.natural.value > 0.0 {
            let tr = velocity_trajectory_friction(f.value_natural, body.mass(), gamma.natural.value)?;
            rep.exact("friction_v_terminal", tr.v_terminal_si(), "m/s");
            rep.exact("friction_t0", tr.t0_seconds(), "s");
            let tc = cooling_timescale_tc(&mats.metal, mats.number_density, th.t_env())?;
            rep.exact("t_c", tc.seconds, "s");
            rep.exact("friction_t0_over_t_c", tr.t0 / tc.natural, "1");
        }
    }
    if let Some((var, g, log)) = sweep {
        rep.curve = Some(match var {
            SweepVariable::TRatio => curve(&FORCE_COLUMNS, force_rows(body, cfg, &g, q)?, log, false),
            SweepVariable::LengthM => {
                let rows = vacforce::exec::map(q.parallel, &g, |&a| -> Result<(Vec<f64>, bool)> {
                    let Shape::Needle { s, .. } = body.shape else { unreachable!() };
                    let b = mats.body(Shape::Needle { a: length(a), b: length(a), s })?;
                    let o = force_z(&b, th, q)?;
                    Ok((vec![a, o.reduced.unwrap_or(f64::NAN), o.value, o.numerical_error], o.converged))
                });
                curve(&["length_m", "F_hat", "F_N", "F_error_N"], rows.into_iter().collect::<Result<_>>()?, log, false)
            }
            _ => unreachable!("validated"),
        });
    }
    Ok(())
}

fn shell(cfg: &Config, body: &TwoPartBody, th: &ThermalPair, q: &QuadratureSpec, sweep: Sweep, rep: &mut Report) -> Result<()> {
    let s = cfg.shell.as_ref().expect("resolved");
    rep.observable("force", &force_z(body, th, q)?, "N");
    rep.exact("power_law_n_fit", shell_power_law_fit(s.fit_from, s.fit_to, 81), "1");
    rep.exact("power_law_n_quoted", SHELL_QUOTED_N, "1");
    if let Some((var, g, log)) = sweep {
        rep.curve = Some(match var {
            SweepVariable::TRatio => curve(&FORCE_COLUMNS, force_rows(body, cfg, &g, q)?, log, false),
            SweepVariable::OmegaA => {
                let rows = shell_scaled_integral(&g).into_iter().map(|r| (vec![r.omega_a, r.scaled, r.weighted], true));
                curve(&["omega_a", "scaled_I", "omega_a8_scaled_I"], rows.collect(), log, false)
            }
            _ => unreachable!("validated"),
        });
    }
    Ok(())
}

fn cooling_scenario(mats: &Materials, body: &TwoPartBody, th: ThermalPair, drive: Drive) -> KinematicScenario {
    KinematicScenario { body: body.clone(), thermal0: th, drive, number_density: mats.number_density }
}

fn janus(
    cfg: &Config,
    mats: &Materials,
    body: &TwoPartBody,
    th: &ThermalPair,
    q: &QuadratureSpec,
    sweep: Sweep,
    rep: &mut Report,
) -> Result<()> {
    let Shape::JanusBall { a, engine } = body.shape else { unreachable!() };
    // a noisy Monte Carlo integrand stalls the adaptive frequency integral,
    // so the sampled engine only serves the geometric-integral sweep
    let body = &if engine == JanusEngine::MonteCarlo {
        rep.notes.push("frequency-integrated quantities use the nested profile engine".into());
        mats.body(Shape::JanusBall { a, engine: JanusEngine::NestedProfile })?
    } else {
        body.clone()
    };
    rep.observable("force", &force_z(body, th, q)?, "N");
    if mats.drude().is_some() {
        let v = terminal_velocity_cooling(&cooling_scenario(mats, body, *th, Drive::Force), q)?;
        rep.push("cooling_v_terminal", v.si, Some(v.si_error), "m/s", v.natural.converged);
        rep.exact("t_c", v.t_c.seconds, "s");
        rep.exact("mass", UnitSystem::SI.from_natural(v.mass, Dimension::Mass), "kg");
    }
    if let Some((var, g, log)) = sweep {
        rep.curve = Some(match var {
            SweepVariable::TRatio => curve(&FORCE_COLUMNS, force_rows(body, cfg, &g, q)?, log, true),
            SweepVariable::OmegaA => {
                let rows = vacforce::exec::map(false, &g, |&x| -> Result<(Vec<f64>, bool)> {
                    let r = janus_scaled_integral(x, engine, q)?;
                    Ok((vec![x, r.value, r.error_estimate], r.converged))
                });
                curve(&["omega_a", "scaled_I", "error"], rows.into_iter().collect::<Result<_>>()?, log, log)
            }
            SweepVariable::U0 => {
                let rows = vacforce::exec::map(q.parallel, &g, |&u| -> Result<(Vec<f64>, bool)> {
                    let sc = cooling_scenario(mats, body, thermal(cfg, Some(u))?, Drive::Force);
                    let v = terminal_velocity_cooling(&sc, q)?;
                    Ok((vec![u, v.reduced.value, v.si, v.si_error], v.natural.converged))
                });
                curve(&["u0", "reduced", "v_terminal_m_per_s", "error_m_per_s"], rows.into_iter().collect::<Result<_>>()?, log, false)
            }
            SweepVariable::LengthM => unreachable!("validated"),
        });
    }
    Ok(())
}

fn plate(cfg: &Config, body: &TwoPartBody, th: &ThermalPair, q: &QuadratureSpec, sweep: Sweep, rep: &mut Report) -> Result<()> {
    rep.observable("force", &force_z(body, th, q)?, "N");
    let Shape::PlanarSlab { s, .. } = body.shape else { unreachable!() };
    let bb = MaterialModel::BlackbodySurface { epsilon_reg: cfg.materials.blackbody_epsilon_ev };
    let alpha = |w: f64| Ok(Matrix3::from_diagonal_element(vacforce::materials::chi(&bb, w)? * s));
    let p = radiated_power(&alpha, th, q)?;
    rep.push("blackbody_power", p.watts, Some(p.watts_error), "W", p.natural.converged);
    let stefan = s * PI * PI * (th.t_env().powi(4) - th.t_body().powi(4)) / 60.0;
    rep.exact("stefan_power", UnitSystem::SI.from_natural(stefan, Dimension::Power), "W");
    if let Some((_, g, log)) = sweep {
        rep.curve = Some(curve(&FORCE_COLUMNS, force_rows(body, cfg, &g, q)?, log, false));
    }
    Ok(())
}

fn wrench(
    cfg: &Config,
    mats: &Materials,
    body: &TwoPartBody,
    th: &ThermalPair,
    q: &QuadratureSpec,
    sweep: Sweep,
    rep: &mut Report,
) -> Result<()> {
    let w = cfg.wrench().expect("resolved");
    let regime = match cfg.scenario {
        ScenarioName::WrenchLarge => WrenchRegime::Large,
        _ => WrenchRegime::Small,
    };
    let Shape::AllenWrench { a, .. } = body.shape else { unreachable!() };
    let Some((_, nu)) = mats.drude() else { bail!("the wrench scenarios need the Drude metal model") };
    if WrenchRegime::for_wrench(a, nu) != regime {
        rep.notes.push(format!("nu*a = {:.3e} puts this wrench outside the {:?} regime", nu * a, regime));
    }
    let tau0 = wrench_torque_prefactor(body, regime).context("the wrench needs one dielectric and one Drude part")?;
    rep.exact("tau0", tau0.si(), "N m");
    rep.notes.push(format!("tau0 normalization: {}", tau0.label));
    let hat = torque_hat(regime, th, nu, q)?;
    rep.integral("tau_hat", &hat, 1.0, "1");
    rep.integral("torque_asymptotic", &hat, tau0.si(), "N m");
    let inertia = moment_of_inertia(body)?;
    rep.exact("moment_of_inertia", UnitSystem::SI.from_natural(inertia, Dimension::Mass) * UnitSystem::SI.si_factor(Dimension::Area), "kg m^2");
    let sc = cooling_scenario(mats, body, *th, Drive::AsymptoticTorque(regime));
    let om = terminal_angular_velocity(&sc, q)?;
    rep.exact("t_c", om.t_c.seconds, "s");
    if let (Some(p), Some(r)) = (om.prefactor_si, om.reduced) {
        rep.exact("omega_terminal_prefactor", p, "1/s");
        rep.integral("omega_hat_terminal", &r, 1.0, "1");
    }
    rep.push("omega_terminal", om.si, Some(om.si_error), "1/s", om.natural.converged);
    if w.full_torque {
        let t = torque_second_order(body, th, q)?;
        rep.observable("torque_full", &t[2], "N m");
        if hat.value != 0.0 {
            rep.exact("torque_full_over_asymptotic", t[2].value / (hat.value * tau0.si()), "1");
        }
    }
    if let Some((var, g, log)) = sweep {
        rep.curve = Some(match var {
            SweepVariable::TRatio => {
                let rows = vacforce::exec::map(q.parallel, &g, |&u| -> Result<(Vec<f64>, bool)> {
                    let h = torque_hat(regime, &thermal(cfg, Some(u))?, nu, q)?;
                    Ok((vec![u, h.value, h.value * tau0.si(), h.error_estimate * tau0.si().abs()], h.converged))
                });
                curve(&["t_ratio", "tau_hat", "torque_N_m", "error_N_m"], rows.into_iter().collect::<Result<_>>()?, log, false)
            }
            SweepVariable::OmegaA => {
                let rows = vacforce::exec::map(false, &g, |&x| -> Result<(Vec<f64>, bool)> {
                    let bb = w.b_over_a * x;
                    let j = wrench_reduced_integral(x, bb, q)?;
                    let large = 11.0 * PI * x / 30.0;
                    let small = 56.0 * x.powi(4) * bb * bb / 675.0;
                    Ok((vec![x, j.value, j.error_estimate, large, small], j.converged))
                });
                curve(
                    &["omega_a", "J_hat", "error", "large_asymptote_b_eq_a", "small_asymptote"],
                    rows.into_iter().collect::<Result<_>>()?,
                    log,
                    log,
                )
            }
            SweepVariable::U0 => {
                let rows = vacforce::exec::map(q.parallel, &g, |&u| -> Result<(Vec<f64>, bool)> {
                    let sc = cooling_scenario(mats, body, thermal(cfg, Some(u))?, Drive::AsymptoticTorque(regime));
                    let om = terminal_angular_velocity(&sc, q)?;
                    let hat = om.reduced.map_or(f64::NAN, |r| r.value);
                    Ok((vec![u, hat, om.si, om.si_error], om.natural.converged))
                });
                curve(&["u0", "omega_hat_terminal", "omega_terminal_per_s", "error_per_s"], rows.into_iter().collect::<Result<_>>()?, log, false)
            }
            SweepVariable::LengthM => unreachable!("validated"),
        });
    }
    Ok(())
}

fn flags(
    cfg: &Config,
    mats: &Materials,
    body: &TwoPartBody,
    th: &ThermalPair,
    q: &QuadratureSpec,
    sweep: Sweep,
    rep: &mut Report,
) -> Result<()> {
    let t = torque_second_order(body, th, q)?;
    rep.observable("torque", &t[2], "N m");
    let Shape::DualFlags { a, b, s_a, .. } = body.shape else { unreachable!() };
    // the same object with thin tags of the wire's cross-section
    let plain = mats.body(Shape::AllenWrench { a, b, s_a, s_b: s_a })?;
    let tw = torque_second_order(&plain, th, q)?;
    rep.observable("wrench_torque", &tw[2], "N m");
    if tw[2].value != 0.0 {
        rep.exact("enhancement", t[2].value / tw[2].value, "1");
    }
    if let Some((_, g, log)) = sweep {
        let rows = vacforce::exec::map(false, &g, |&u| -> Result<(Vec<f64>, bool)> {
            let o = &torque_second_order(body, &thermal(cfg, Some(u))?, q)?[2];
            Ok((vec![u, o.value, o.numerical_error], o.converged))
        });
        rep.curve = Some(curve(&["t_ratio", "torque_N_m", "error_N_m"], rows.into_iter().collect::<Result<_>>()?, log, false));
    }
    Ok(())
}

fn voxel(cfg: &Config, body: &TwoPartBody, th: &ThermalPair, q: &QuadratureSpec, sweep: Sweep, rep: &mut Report) -> Result<()> {
    rep.observable("force", &force_z(body, th, q)?, "N");
    let t = torque_second_order(body, th, q)?;
    for (k, axis) in ["x", "y", "z"].iter().enumerate() {
        rep.observable(&format!("torque_{axis}"), &t[k], "N m");
    }
    if let Some((_, g, log)) = sweep {
        rep.curve = Some(curve(&FORCE_COLUMNS, force_rows(body, cfg, &g, q)?, log, false));
    }
    Ok(())
}

/// Re α_jk = A ε_jkz, frequency independent.
pub fn toy_alpha(amplitude: f64) -> impl Fn(f64) -> vacforce::Result<Matrix3<Complex64>> + Sync {
    move |_| Ok(Matrix3::new(0.0, amplitude, 0.0, -amplitude, 0.0, 0.0, 0.0, 0.0, 0.0).map(|x| Complex64::new(x, 0.0)))
}

fn first_order(cfg: &Config, th: &ThermalPair, q: &QuadratureSpec, sweep: Sweep, rep: &mut Report) -> Result<()> {
    let amp = si(cfg.first_order_torque.as_ref().expect("resolved").amplitude_m3, Dimension::Volume);
    let alpha = toy_alpha(amp);
    let t = torque_first_order(&alpha, th, q)?;
    rep.observable("torque_z", &t[2], "N m");
    let closed = 2.0 * amp * PI * PI * (th.t_env().powi(4) - th.t_body().powi(4)) / 45.0;
    rep.exact("torque_z_closed_form", UnitSystem::SI.from_natural(closed, Dimension::Torque), "N m");
    rep.notes.push("toy polarizability Re alpha_jk = A eps_jkz".into());
    if let Some((_, g, log)) = sweep {
        let rows = vacforce::exec::map(q.parallel, &g, |&u| -> Result<(Vec<f64>, bool)> {
            let o = &torque_first_order(&alpha, &thermal(cfg, Some(u))?, q)?[2];
            Ok((vec![u, o.value, o.numerical_error], o.converged))
        });
        rep.curve = Some(curve(&["t_ratio", "torque_N_m", "error_N_m"], rows.into_iter().collect::<Result<_>>()?, log, false));
    }
    Ok(())
}
