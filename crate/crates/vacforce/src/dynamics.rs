//! Motion after the force or torque exists: Einstein–Hopf friction and
//! cooling-limited terminal velocities.
//!
//! Cooling follows the weak-susceptibility model t_c du/dt = p(u) with
//! u = T′/T, so that v_T = (t_c/m) ∫_{u₀}^1 du F(u)/p(u).

use std::f64::consts::PI;

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::constants::{Dimension, UnitSystem};
use crate::error::{Error, Result};
use crate::geometry::{moment_of_inertia, TwoPartBody};
use crate::materials::MaterialModel;
use crate::observables::{force_z, torque_hat, torque_second_order, wrench_torque_prefactor, Prefactor, WrenchRegime};
use crate::quadrature::{integrate_1d_inner, integrate_semi_infinite, Fallible, InfiniteMethod};
use crate::quadrature::{IntegralResult, QuadratureSpec};
use crate::thermal::{cooling_timescale_tc, p_dimensionless, ThermalPair, TimeScale};

/// Friction coefficient γ with F_f = −γ v.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Friction {
    /// eV² (force per unit velocity, c = 1).
    pub natural: IntegralResult,
    /// N·s/m.
    pub si: f64,
    pub si_error: f64,
}

/// γ = (β/12π²) ∫₀^∞ dω ω⁵ Im α(ω)/sinh²(βω/2), Im α = Im tr α/3.
pub fn friction_coefficient(
    alpha: &(dyn Fn(f64) -> Result<Matrix3<Complex64>> + Sync),
    t_env: f64,
    quad: &QuadratureSpec,
) -> Result<Friction> {
    if !(t_env > 0.0) {
        return Err(Error::Domain(format!("friction needs T > 0, got {t_env}")));
    }
    let beta = 1.0 / t_env;
    let fb = Fallible::default();
    let f = |w: f64| {
        if w <= 0.0 {
            return 0.0;
        }
        let x = beta * w;
        if x > 700.0 {
            return 0.0;
        }
        fb.value(alpha(w).and_then(|a| {
            let im = a.trace().im / 3.0;
            if im < 0.0 {
                return Err(Error::Domain(format!("Im α = {im} < 0 at ω = {w}: not a passive material")));
            }
            // 1/sinh²(x/2) = 4e⁻ˣ/(1 − e⁻ˣ)²
            let e = (-x).exp();
            let d = -(-x).exp_m1();
            Ok(w.powi(5) * im * 4.0 * e / (d * d))
        }))
    };
    let r = integrate_semi_infinite(f, 0.0, t_env, InfiniteMethod::Map, quad);
    let natural = fb.finish(r)?.scaled(beta / (12.0 * PI * PI));
    let us = UnitSystem::SI;
    let k = us.si_factor(Dimension::Force) / us.si_factor(Dimension::Velocity);
    Ok(Friction { natural, si: natural.value * k, si_error: natural.error_estimate * k })
}

/// v(t) = v_T(1 − e^{−t/t₀}) under a constant force against friction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrictionTrajectory {
    /// F/γ (natural velocity, units of c).
    pub v_terminal: f64,
    /// m/γ (eV⁻¹).
    pub t0: f64,
}

impl FrictionTrajectory {
    pub fn velocity(&self, t: f64) -> f64 {
        -self.v_terminal * (-t / self.t0).exp_m1()
    }

    pub fn v_terminal_si(&self) -> f64 {
        UnitSystem::SI.from_natural(self.v_terminal, Dimension::Velocity)
    }

    pub fn t0_seconds(&self) -> f64 {
        UnitSystem::SI.from_natural(self.t0, Dimension::Time)
    }
}

pub fn velocity_trajectory_friction(force: f64, mass: f64, gamma: f64) -> Result<FrictionTrajectory> {
    if !(mass > 0.0) {
        return Err(Error::Domain(format!("mass must be positive, got {mass}")));
    }
    if gamma == 0.0 {
        return Err(Error::Divergence("no friction (γ = 0): the body accelerates without bound".into()));
    }
    if !(gamma > 0.0) {
        return Err(Error::Domain(format!("friction coefficient must be non-negative, got {gamma}")));
    }
    Ok(FrictionTrajectory { v_terminal: force / gamma, t0: mass / gamma })
}

/// What pushes the body while it cools.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Drive {
    /// The full second-order z-force.
    Force,
    /// The full second-order z-torque.
    Torque,
    /// τ₀ τ̂(u) for a wrench in the given regime.
    AsymptoticTorque(WrenchRegime),
}

#[derive(Debug, Clone)]
pub struct KinematicScenario {
    pub body: TwoPartBody,
    /// Environment temperature and the initial body temperature.
    pub thermal0: ThermalPair,
    pub drive: Drive,
    /// Atomic number density of the metal (eV³), sets t_c.
    pub number_density: f64,
}

impl KinematicScenario {
    fn metal(&self) -> Result<(f64, f64, &MaterialModel)> {
        for m in [&self.body.material_a, &self.body.material_b] {
            if let MaterialModel::Drude { omega_p, nu } = m {
                return Ok((*omega_p, *nu, m));
            }
        }
        Err(Error::Usage("cooling model needs a Drude part".into()))
    }

    pub fn t_c(&self) -> Result<TimeScale> {
        let (_, _, m) = self.metal()?;
        cooling_timescale_tc(m, self.number_density, self.thermal0.t_env())
    }

    pub fn nu(&self) -> Result<f64> {
        Ok(self.metal()?.1)
    }

    fn mass(&self) -> Result<f64> {
        let m = self.body.mass();
        if !(m > 0.0) {
            return Err(Error::Domain("body mass must be positive (set the densities)".into()));
        }
        Ok(m)
    }

    fn at(&self, u: f64) -> Result<ThermalPair> {
        ThermalPair::from_beta_ratio(self.thermal0.beta, u)
    }

    /// Natural-unit drive (force or torque) at body temperature uT.
    fn drive_at(&self, u: f64, quad: &QuadratureSpec) -> Result<IntegralResult> {
        let th = self.at(u)?;
        let r = match self.drive {
            Drive::Force => {
                let o = force_z(&self.body, &th, quad)?;
                (o.value_natural, o.numerical_error_natural, o.converged, o.evaluations)
            }
            Drive::Torque => {
                let o = &torque_second_order(&self.body, &th, quad)?[2];
                (o.value_natural, o.numerical_error_natural, o.converged, o.evaluations)
            }
            Drive::AsymptoticTorque(regime) => {
                let tau0 = self.tau0(regime)?;
                let h = torque_hat(regime, &th, self.nu()?, quad)?.scaled(tau0.natural);
                (h.value, h.error_estimate, h.converged, h.evaluations)
            }
        };
        Ok(IntegralResult { value: r.0, error_estimate: r.1, converged: r.2, evaluations: r.3 })
    }

    fn tau0(&self, regime: WrenchRegime) -> Result<Prefactor> {
        wrench_torque_prefactor(&self.body, regime)
            .ok_or_else(|| Error::Usage("the asymptotic torque needs a dielectric/Drude Allen wrench".into()))
    }
}

/// f(u)/p(u) with both errors propagated.
fn ratio_over_p(f: IntegralResult, p: IntegralResult, u: f64) -> Result<IntegralResult> {
    if p.value == 0.0 {
        return Err(Error::Divergence(format!("cooling power vanishes at u = {u} inside the interval")));
    }
    let v = f.value / p.value;
    Ok(IntegralResult {
        value: v,
        error_estimate: f.error_estimate / p.value.abs() + v.abs() * p.error_estimate / p.value.abs(),
        evaluations: f.evaluations + p.evaluations,
        converged: f.converged && p.converged,
    })
}

/// ∫_{u₀}^1 du f(u)/p(u).
fn cooling_integral(
    sc: &KinematicScenario,
    quad: &QuadratureSpec,
    f: &(dyn Fn(f64) -> Result<IntegralResult> + Sync),
) -> Result<IntegralResult> {
    let u0 = sc.thermal0.ratio();
    if u0 == 1.0 {
        return Ok(IntegralResult::exact(0.0));
    }
    let (t, nu) = (sc.thermal0.t_env(), sc.nu()?);
    let inner = quad.clone().with_rel_tol(quad.rel_tol * 0.1);
    let g = |u: f64| ratio_over_p(f(u)?, p_dimensionless(u, t, nu, &inner)?, u);
    let (lo, hi, sign) = if u0 > 1.0 { (1.0, u0, -1.0) } else { (u0, 1.0, 1.0) };
    Ok(integrate_1d_inner(&g, lo, hi, 1.0, quad)?.scaled(sign))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TerminalVelocity {
    /// Units of c.
    pub natural: IntegralResult,
    /// m/s.
    pub si: f64,
    pub si_error: f64,
    /// ∫_{u₀}^1 du F(u)/p(u) in natural force units.
    pub reduced: IntegralResult,
    pub t_c: TimeScale,
    pub mass: f64,
}

fn velocity_result(reduced: IntegralResult, t_c: TimeScale, mass: f64) -> TerminalVelocity {
    let natural = reduced.scaled(t_c.natural / mass);
    let k = UnitSystem::SI.si_factor(Dimension::Velocity);
    TerminalVelocity { natural, si: natural.value * k, si_error: natural.error_estimate * k, reduced, t_c, mass }
}

/// v_T = (t_c/m) ∫_{u₀}^1 du F(u)/p(u).
pub fn terminal_velocity_cooling(sc: &KinematicScenario, quad: &QuadratureSpec) -> Result<TerminalVelocity> {
    if sc.drive != Drive::Force {
        return Err(Error::Usage("terminal velocity needs a force drive".into()));
    }
    let (t_c, mass) = (sc.t_c()?, sc.mass()?);
    let inner = quad.clone().with_rel_tol(quad.rel_tol * 0.1);
    let reduced = cooling_integral(sc, quad, &|u| sc.drive_at(u, &inner))?;
    Ok(velocity_result(reduced, t_c, mass))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TerminalAngularVelocity {
    /// eV (angular frequency).
    pub natural: IntegralResult,
    /// rad/s.
    pub si: f64,
    pub si_error: f64,
    /// ω̂_T = ∫_{u₀}^1 du τ̂(u)/p(u), when a τ₀ normalization applies.
    pub reduced: Option<IntegralResult>,
    /// t_c τ₀/I in s⁻¹, when a τ₀ normalization applies.
    pub prefactor_si: Option<f64>,
    pub t_c: TimeScale,
    pub moment_of_inertia: f64,
}

/// ω_T = (t_c/I) ∫_{u₀}^1 du τ(u)/p(u); with an asymptotic drive this is
/// (t_c τ₀/I) ω̂_T.
pub fn terminal_angular_velocity(sc: &KinematicScenario, quad: &QuadratureSpec) -> Result<TerminalAngularVelocity> {
    let t_c = sc.t_c()?;
    let inertia = moment_of_inertia(&sc.body)?;
    if !(inertia > 0.0) {
        return Err(Error::Domain("moment of inertia must be positive (set the densities)".into()));
    }
    let freq = UnitSystem::SI.si_factor(Dimension::Frequency);
    let inner = quad.clone().with_rel_tol(quad.rel_tol * 0.1);
    let (natural, reduced, prefactor) = match sc.drive {
        Drive::Force => return Err(Error::Usage("terminal angular velocity needs a torque drive".into())),
        Drive::AsymptoticTorque(regime) => {
            let tau0 = sc.tau0(regime)?;
            let nu = sc.nu()?;
            let hat = cooling_integral(sc, quad, &|u| torque_hat(regime, &sc.at(u)?, nu, &inner))?;
            let pre = t_c.natural * tau0.natural / inertia;
            (hat.scaled(pre), Some(hat), Some(pre))
        }
        Drive::Torque => {
            let r = cooling_integral(sc, quad, &|u| sc.drive_at(u, &inner))?.scaled(t_c.natural / inertia);
            let pre = crate::observables::torque_prefactor(&sc.body).map(|p| t_c.natural * p.natural / inertia);
            (r, pre.map(|p| r.scaled(1.0 / p)), pre)
        }
    };
    Ok(TerminalAngularVelocity {
        natural,
        si: natural.value * freq,
        si_error: natural.error_estimate * freq,
        reduced,
        prefactor_si: prefactor.map(|p| p * freq),
        t_c,
        moment_of_inertia: inertia,
    })
}

/// One accepted step of a cooling solution, s = t/t_c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoolingPoint {
    pub s: f64,
    pub u: f64,
    /// ∫₀^s load(u(s′)) ds′.
    pub load: f64,
}

/// Solves du/ds = rate(u) from u₀ toward the fixed point u = 1 by RK4 with
/// step doubling, carrying ∫ load(u) ds alongside. Stops once |u − 1| has
/// fallen below `stop`·|u₀ − 1|; the last point then adds the remaining
/// load (load/rate)(u)·(1 − u), exact to first order in u − 1.
pub fn cooling_ode(
    rate: &dyn Fn(f64) -> Result<f64>,
    load: &dyn Fn(f64) -> Result<f64>,
    u0: f64,
    tol: f64,
    stop: f64,
) -> Result<Vec<CoolingPoint>> {
    let mut pts = vec![CoolingPoint { s: 0.0, u: u0, load: 0.0 }];
    if u0 == 1.0 {
        return Ok(pts);
    }
    let d0 = (u0 - 1.0).abs();
    let rhs = |u: f64| -> Result<[f64; 2]> { Ok([rate(u)?, load(u)?]) };
    let step = |y: [f64; 2], k1: [f64; 2], h: f64| -> Result<[f64; 2]> {
        let k2 = rhs(y[0] + 0.5 * h * k1[0])?;
        let k3 = rhs(y[0] + 0.5 * h * k2[0])?;
        let k4 = rhs(y[0] + h * k3[0])?;
        Ok([
            y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ])
    };
    let (mut s, mut y) = (0.0, [u0, 0.0]);
    let mut k = rhs(u0)?;
    if k[0] == 0.0 || (k[0] > 0.0) == (u0 > 1.0) {
        return Err(Error::Divergence(format!("u = {u0} does not relax toward 1 (rate {})", k[0])));
    }
    let mut h = 0.05 * d0 / k[0].abs();
    for _ in 0..100_000 {
        let full = step(y, k, h)?;
        let half = step(y, k, 0.5 * h)?;
        let kh = rhs(half[0])?;
        let two = step(half, kh, 0.5 * h)?;
        let eu = (two[0] - full[0]).abs() / 15.0;
        let eq = (two[1] - full[1]).abs() / 15.0;
        let su = tol * (two[0] - 1.0).abs().max(stop * d0);
        let sq = tol * two[1].abs().max(f64::MIN_POSITIVE);
        let ratio = (eu / su).max(eq / sq);
        if ratio <= 1.0 && (two[0] - 1.0) * (u0 - 1.0) > 0.0 {
            s += h;
            y = [two[0] + (two[0] - full[0]) / 15.0, two[1] + (two[1] - full[1]) / 15.0];
            k = rhs(y[0])?;
            pts.push(CoolingPoint { s, u: y[0], load: y[1] });
            if (y[0] - 1.0).abs() <= stop * d0 {
                let last = pts.last_mut().expect("non-empty");
                last.load += k[1] / k[0] * (1.0 - y[0]);
                return Ok(pts);
            }
        }
        let grow = if ratio == 0.0 { 4.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 4.0) };
        h *= grow;
        if h <= 1e-14 * s.max(1.0) {
            return Err(Error::Integration(format!("cooling step size collapsed at s = {s}, u = {}", y[0])));
        }
    }
    Err(Error::Integration("cooling solution did not reach equilibrium".into()))
}

/// Body temperature history under t_c du/dt = p(u).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t_seconds: f64,
    pub t_natural: f64,
    pub u: f64,
    pub t_body_k: f64,
}

pub fn cooling_trajectory(sc: &KinematicScenario, quad: &QuadratureSpec) -> Result<Vec<TrajectoryPoint>> {
    let t_c = sc.t_c()?;
    let (t, nu) = (sc.thermal0.t_env(), sc.nu()?);
    let rate = |u: f64| Ok(p_dimensionless(u, t, nu, quad)?.value);
    let pts = cooling_ode(&rate, &|_| Ok(0.0), sc.thermal0.ratio(), 1e-7, 1e-4)?;
    Ok(pts
        .into_iter()
        .map(|p| TrajectoryPoint {
            t_seconds: p.s * t_c.seconds,
            t_natural: p.s * t_c.natural,
            u: p.u,
            t_body_k: p.u * sc.thermal0.t_env_k,
        })
        .collect())
}

/// v_T from the time domain: integrates the drive along the cooling
/// trajectory instead of changing variables to u.
pub fn terminal_velocity_time_domain(sc: &KinematicScenario, quad: &QuadratureSpec) -> Result<TerminalVelocity> {
    if sc.drive != Drive::Force {
        return Err(Error::Usage("terminal velocity needs a force drive".into()));
    }
    let (t_c, mass) = (sc.t_c()?, sc.mass()?);
    let (t, nu) = (sc.thermal0.t_env(), sc.nu()?);
    let inner = quad.clone().with_rel_tol(quad.rel_tol * 0.1);
    let rate = |u: f64| Ok(p_dimensionless(u, t, nu, &inner)?.value);
    let load = |u: f64| Ok(sc.drive_at(u, &inner)?.value);
    let pts = cooling_ode(&rate, &load, sc.thermal0.ratio(), quad.rel_tol.max(1e-9), 1e-6)?;
    let last = pts.last().expect("non-empty");
    let reduced = IntegralResult {
        value: last.load,
        error_estimate: quad.rel_tol.max(1e-9) * last.load.abs() * pts.len() as f64,
        evaluations: 11 * pts.len() as u64,
        converged: true,
    };
    Ok(velocity_result(reduced, t_c, mass))
}
