//! Frequency-integrated forces and torques.
//!
//! Second order, two homogeneous parts:
//!   F_z = (4/π) ∫₀^∞ dω X_AB I_AB [n(βω) − n(β′ω)]
//!   τ   = (1/4π³) ∫₀^∞ dω X_AB J_AB [n(βω) − n(β′ω)]
//! First order, nonreciprocal body:
//!   τ_i = ∫₀^∞ dω ω³/(3π²) [n(βω) − n(β′ω)] ε_ijk Re α_jk

use std::f64::consts::PI;

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::constants::{meters, Dimension, UnitSystem, BETA0};
use crate::error::{Error, Result};
use crate::exec;
use crate::geometry::{i_ab, j_ab, Shape, ShapeKind, TwoPartBody};
use crate::materials::MaterialModel;
use crate::quadrature::{integrate_1d_inner, integrate_semi_infinite, Fallible, InfiniteMethod};
use crate::quadrature::{IntegralResult, QuadratureSpec};
use crate::thermal::{bose_diff, occupation_diff, ThermalPair};

/// Beyond min(β, β′)·ω = this both occupations are below e⁻⁸⁰ and the
/// spectral weight is dropped.
const THERMAL_CUTOFF: f64 = 80.0;

/// Reference length a₀ = 1 cm in the needle normalization.
pub fn needle_reference_length() -> f64 {
    meters(1e-2)
}

/// Shell power-law coefficient as quoted with the shell normalization.
pub const SHELL_QUOTED_N: f64 = -27.0;

/// A declared normalization: observable = natural × reduced.
#[derive(Debug, Clone, PartialEq)]
pub struct Prefactor {
    pub label: String,
    pub natural: f64,
    pub dimension: Dimension,
}

impl Prefactor {
    pub fn si(&self) -> f64 {
        UnitSystem::SI.from_natural(self.natural, self.dimension)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObservableResult {
    /// SI value (N or N·m).
    pub value: f64,
    /// Natural value (eV² or eV).
    pub value_natural: f64,
    pub dimension: Dimension,
    /// value_natural / prefactor, when a normalization applies.
    pub reduced: Option<f64>,
    pub prefactor: Option<Prefactor>,
    pub numerical_error: f64,
    pub numerical_error_natural: f64,
    pub converged: bool,
    pub evaluations: u64,
    pub notes: Vec<String>,
    pub metadata: Vec<(String, String)>,
}

impl ObservableResult {
    pub fn from_integral(r: IntegralResult, dimension: Dimension, prefactor: Option<Prefactor>) -> Self {
        let k = UnitSystem::SI.si_factor(dimension);
        let reduced = prefactor.as_ref().map(|p| r.value / p.natural);
        Self {
            value: r.value * k,
            value_natural: r.value,
            dimension,
            reduced,
            prefactor,
            numerical_error: r.error_estimate * k,
            numerical_error_natural: r.error_estimate,
            converged: r.converged,
            evaluations: r.evaluations,
            notes: Vec::new(),
            metadata: Vec::new(),
        }
    }

    /// Error of the reduced value.
    pub fn reduced_error(&self) -> Option<f64> {
        self.prefactor.as_ref().map(|p| self.numerical_error_natural / p.natural.abs())
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    fn echo(mut self, body: Option<&TwoPartBody>, thermal: &ThermalPair) -> Self {
        self.metadata.push(("T_env_K".into(), format!("{}", thermal.t_env_k)));
        self.metadata.push(("T_body_K".into(), format!("{}", thermal.t_body_k)));
        if let Some(b) = body {
            self.metadata.push(("shape".into(), format!("{:?}", b.shape.kind())));
            self.metadata.push(("material_A".into(), format!("{:?}", b.material_a)));
            self.metadata.push(("material_B".into(), format!("{:?}", b.material_b)));
            for w in b.validity_warnings() {
                self.notes.push(w);
            }
        }
        self
    }
}

/// Which wrench asymptote a torque normalization refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WrenchRegime {
    /// ωa ≫ 1: Ĵ → 11πωa/30, τ̂ weight x⁴/(x²+1).
    Large,
    /// ωa, ωb ≪ 1: Ĵ → 56ω⁶a⁴b²/675, τ̂ weight x⁹/(x²+1).
    Small,
}

impl WrenchRegime {
    /// Large when the wire is longer than the Drude scale, νa ≥ 1.
    pub fn for_wrench(a: f64, nu: f64) -> Self {
        if nu * a >= 1.0 {
            WrenchRegime::Large
        } else {
            WrenchRegime::Small
        }
    }

    fn power(self) -> i32 {
        match self {
            WrenchRegime::Large => 4,
            WrenchRegime::Small => 9,
        }
    }
}

/// (χ of the dielectric part, ω_p, ν of the metal part), if the body is one of each.
fn dielectric_metal(body: &TwoPartBody) -> Option<(f64, f64, f64)> {
    match (&body.material_a, &body.material_b) {
        (MaterialModel::ConstantDielectric { chi }, MaterialModel::Drude { omega_p, nu })
        | (MaterialModel::Drude { omega_p, nu }, MaterialModel::ConstantDielectric { chi }) => {
            Some((*chi, *omega_p, *nu))
        }
        _ => None,
    }
}

fn metal(body: &TwoPartBody) -> Option<(f64, f64)> {
    match (&body.material_a, &body.material_b) {
        (MaterialModel::Drude { omega_p, nu }, _) | (_, MaterialModel::Drude { omega_p, nu }) => Some((*omega_p, *nu)),
        _ => None,
    }
}

/// The force normalization used for the reduced F̂ of each example body.
pub fn force_prefactor(body: &TwoPartBody) -> Option<Prefactor> {
    let p = |label: &str, natural: f64| Some(Prefactor { label: label.into(), natural, dimension: Dimension::Force });
    match body.shape {
        Shape::Needle { s, .. } => {
            let (chi, wp, nu) = dielectric_metal(body)?;
            let a0 = needle_reference_length();
            p(
                "-S^2 omega_p^2 nu chi_A beta0^2 / (120 pi^3 a0^5), a0 = 1 cm, beta0 = 40/eV",
                -s * s * wp * wp * nu * chi * BETA0 * BETA0 / (120.0 * PI.powi(3) * a0.powi(5)),
            )
        }
        Shape::HemisphereShell { a, t } => {
            let (chi, wp, nu) = dielectric_metal(body)?;
            p(
                "-omega_p^2 t^2 a chi_A nu^3 N / (16 pi^2), N = -27",
                -wp * wp * t * t * a * chi * nu.powi(3) * SHELL_QUOTED_N / (16.0 * PI * PI),
            )
        }
        Shape::JanusBall { a, .. } => {
            let (chi, wp, nu) = dielectric_metal(body)?;
            p("chi_A omega_p^2 (nu a)^7 / (27 pi)", chi * wp * wp * (nu * a).powi(7) / (27.0 * PI))
        }
        Shape::PlanarSlab { s, t_a, t_b } => {
            let (wp, nu) = metal(body)?;
            p("S t_B (t_A + t_B) omega_p^2 nu^4 / (24 pi^2)", s * t_b * (t_a + t_b) * wp * wp * nu.powi(4) / (24.0 * PI * PI))
        }
        _ => None,
    }
}

/// τ₀ of the wrench in the given regime.
pub fn wrench_torque_prefactor(body: &TwoPartBody, regime: WrenchRegime) -> Option<Prefactor> {
    let Shape::AllenWrench { a, b, s_a, s_b } = body.shape else { return None };
    let (chi, wp, nu) = dielectric_metal(body)?;
    let (label, natural) = match regime {
        WrenchRegime::Large => (
            "11/(60 pi^2) S_A S_B a nu^4 omega_p^2 chi_B",
            11.0 / (60.0 * PI * PI) * s_a * s_b * a * nu.powi(4) * wp * wp * chi,
        ),
        WrenchRegime::Small => (
            "28/(675 pi^3) chi_B nu^9 omega_p^2 S_A S_B a^4 b^2",
            28.0 / (675.0 * PI.powi(3)) * chi * nu.powi(9) * wp * wp * s_a * s_b * a.powi(4) * b * b,
        ),
    };
    Some(Prefactor { label: label.into(), natural, dimension: Dimension::Torque })
}

/// Default torque normalization: the wrench τ₀ in the regime set by νa.
pub fn torque_prefactor(body: &TwoPartBody) -> Option<Prefactor> {
    let Shape::AllenWrench { a, .. } = body.shape else { return None };
    let (_, _, nu) = dielectric_metal(body)?;
    wrench_torque_prefactor(body, WrenchRegime::for_wrench(a, nu))
}

fn frequency_integral(
    thermal: &ThermalPair,
    quad: &QuadratureSpec,
    f: &(dyn Fn(f64, f64) -> Result<IntegralResult> + Sync),
) -> Result<IntegralResult> {
    let g = |w: f64| -> Result<IntegralResult> {
        if w <= 0.0 || thermal.beta.min(thermal.beta_prime) * w > THERMAL_CUTOFF {
            return Ok(IntegralResult::exact(0.0));
        }
        let occ = occupation_diff(w, thermal)?;
        if occ == 0.0 {
            return Ok(IntegralResult::exact(0.0));
        }
        f(w, occ)
    };
    integrate_1d_inner(&g, 0.0, f64::INFINITY, thermal.hottest(), &quad.clone().with_period(None))
}

/// Spectral density of the force, (4/π) X_AB I_AB [n − n′], at one frequency.
pub fn force_spectrum(body: &TwoPartBody, omega: f64, thermal: &ThermalPair, quad: &QuadratureSpec) -> Result<IntegralResult> {
    let occ = occupation_diff(omega, thermal)?;
    let x = body.x_ab(omega)?;
    if x == 0.0 || occ == 0.0 {
        return Ok(IntegralResult::exact(0.0));
    }
    Ok(i_ab(body, omega, quad)?.scaled(4.0 / PI * x * occ))
}

fn inner_spec(quad: &QuadratureSpec) -> QuadratureSpec {
    quad.clone().with_rel_tol(quad.rel_tol * 0.1).with_period(None)
}

/// z-force on a two-part body, negative when it points toward B (z < 0).
pub fn force_z(body: &TwoPartBody, thermal: &ThermalPair, quad: &QuadratureSpec) -> Result<ObservableResult> {
    let pre = force_prefactor(body);
    if thermal.is_equilibrium() {
        return Ok(ObservableResult::from_integral(IntegralResult::exact(0.0), Dimension::Force, pre)
            .note("equilibrium: the thermal weight vanishes identically")
            .echo(Some(body), thermal));
    }
    let inner = inner_spec(quad);
    let r = frequency_integral(thermal, quad, &|w, occ| {
        let x = body.x_ab(w)?;
        if x == 0.0 {
            return Ok(IntegralResult::exact(0.0));
        }
        Ok(i_ab(body, w, &inner)?.scaled(4.0 / PI * x * occ))
    })?;
    let mut out = ObservableResult::from_integral(r, Dimension::Force, pre);
    if r.value == 0.0 && r.error_estimate == 0.0 {
        out = out.note("X_AB vanishes at every frequency (homogeneous or lossless body)");
    }
    Ok(out.echo(Some(body), thermal))
}

/// Components of J_AB that can be nonzero for a shape.
fn torque_axes(kind: ShapeKind) -> &'static [usize] {
    match kind {
        ShapeKind::Needle | ShapeKind::HemisphereShell | ShapeKind::JanusBall | ShapeKind::PlanarSlab => &[],
        ShapeKind::AllenWrench | ShapeKind::DualFlags => &[2],
        ShapeKind::Voxelized => &[0, 1, 2],
    }
}

/// Second-order torque vector about the origin of the body frame.
pub fn torque_second_order(
    body: &TwoPartBody,
    thermal: &ThermalPair,
    quad: &QuadratureSpec,
) -> Result<[ObservableResult; 3]> {
    let pre = torque_prefactor(body);
    let zero = || ObservableResult::from_integral(IntegralResult::exact(0.0), Dimension::Torque, pre.clone());
    let mut out = [zero(), zero(), zero()];
    if thermal.is_equilibrium() {
        for o in &mut out {
            o.notes.push("equilibrium: the thermal weight vanishes identically".into());
        }
        return Ok(out.map(|o| o.echo(Some(body), thermal)));
    }
    let axes = torque_axes(body.shape.kind());
    if axes.is_empty() {
        for o in &mut out {
            o.notes.push("achiral body: J_AB vanishes by symmetry".into());
        }
    }
    let inner = inner_spec(quad);
    for &k in axes {
        let r = frequency_integral(thermal, quad, &|w, occ| {
            let x = body.x_ab(w)?;
            if x == 0.0 {
                return Ok(IntegralResult::exact(0.0));
            }
            Ok(j_ab(body, w, &inner)?[k].scaled(x * occ / (4.0 * PI.powi(3))))
        })?;
        out[k] = ObservableResult::from_integral(r, Dimension::Torque, pre.clone());
    }
    Ok(out.map(|o| o.echo(Some(body), thermal)))
}

/// τ̂ = ∫₀^∞ dx x⁴/(x²+1) [n(βνx) − n(β′νx)] (large-wrench weight).
pub fn torque_hat_integral(thermal: &ThermalPair, nu: f64, quad: &QuadratureSpec) -> Result<IntegralResult> {
    torque_hat(WrenchRegime::Large, thermal, nu, quad)
}

/// τ̂ with the weight of either wrench regime (x⁴ or x⁹ over x² + 1).
pub fn torque_hat(regime: WrenchRegime, thermal: &ThermalPair, nu: f64, quad: &QuadratureSpec) -> Result<IntegralResult> {
    if !(nu > 0.0) {
        return Err(Error::Domain(format!("nu must be positive, got {nu}")));
    }
    if thermal.is_equilibrium() {
        return Ok(IntegralResult::exact(0.0));
    }
    let k = regime.power();
    let (b, bp) = (thermal.beta * nu, thermal.beta_prime * nu);
    let f = |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        x.powi(k) / (x * x + 1.0) * bose_diff(b * x, bp * x)
    };
    integrate_semi_infinite(f, 0.0, thermal.hottest() / nu, InfiniteMethod::Map, quad)
}

/// ε_ijk Re α_jk.
fn axial_part(a: &Matrix3<Complex64>) -> [f64; 3] {
    [a[(1, 2)].re - a[(2, 1)].re, a[(2, 0)].re - a[(0, 2)].re, a[(0, 1)].re - a[(1, 0)].re]
}

/// First-order torque on a body with polarizability α(ω) (eV⁻³).
///
/// Only the antisymmetric part of Re α contributes; a symmetric α gives an
/// exact zero with a note.
pub fn torque_first_order(
    alpha: &(dyn Fn(f64) -> Result<Matrix3<Complex64>> + Sync),
    thermal: &ThermalPair,
    quad: &QuadratureSpec,
) -> Result<[ObservableResult; 3]> {
    let zero = || ObservableResult::from_integral(IntegralResult::exact(0.0), Dimension::Torque, None);
    if thermal.is_equilibrium() {
        return Ok([zero(), zero(), zero()].map(|o| o.note("equilibrium: the thermal weight vanishes identically").echo(None, thermal)));
    }
    let mut out = [zero(), zero(), zero()];
    for (k, o) in out.iter_mut().enumerate() {
        let fb = Fallible::default();
        let f = |w: f64| {
            if w <= 0.0 || thermal.beta.min(thermal.beta_prime) * w > THERMAL_CUTOFF {
                return 0.0;
            }
            fb.value(alpha(w).and_then(|a| {
                let ax = axial_part(&a)[k];
                if ax == 0.0 {
                    return Ok(0.0);
                }
                Ok(w.powi(3) / (3.0 * PI * PI) * occupation_diff(w, thermal)? * ax)
            }))
        };
        let r = integrate_semi_infinite(f, 0.0, thermal.hottest(), InfiniteMethod::Map, quad);
        let r = fb.finish(r)?;
        *o = ObservableResult::from_integral(r, Dimension::Torque, None);
        if r.value == 0.0 && r.error_estimate == 0.0 {
            o.notes.push("Re α has no antisymmetric part along this axis; the torque vanishes".into());
        }
    }
    Ok(out.map(|o| o.echo(None, thermal)))
}

/// One row of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub x: f64,
    pub reduced: Option<f64>,
    pub value: f64,
    pub value_natural: f64,
    pub error: f64,
    pub converged: bool,
}

impl CurveRow {
    pub fn from_observable(x: f64, o: &ObservableResult) -> Self {
        Self {
            x,
            reduced: o.reduced,
            value: o.value,
            value_natural: o.value_natural,
            error: o.numerical_error,
            converged: o.converged,
        }
    }
}

/// Evaluates `point` on every grid value, rows in grid order.
pub fn sweep(
    grid: &[f64],
    parallel: bool,
    point: &(dyn Fn(f64) -> Result<ObservableResult> + Sync),
) -> Result<Vec<CurveRow>> {
    exec::map(parallel, grid, |&x| point(x).map(|o| CurveRow::from_observable(x, &o))).into_iter().collect()
}

/// F as a function of T′/T at fixed environment temperature.
pub fn scenario_force_curve(
    body: &TwoPartBody,
    t_env_k: f64,
    ratios: &[f64],
    quad: &QuadratureSpec,
) -> Result<Vec<CurveRow>> {
    sweep(ratios, quad.parallel, &|u| force_z(body, &ThermalPair::new(t_env_k, u * t_env_k)?, quad))
}
