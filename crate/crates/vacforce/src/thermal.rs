//! Thermal weights, radiated power and radiative cooling.

use std::f64::consts::PI;

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::constants::{Dimension, UnitSystem};
use crate::error::{Error, Result};
use crate::materials::MaterialModel;
use crate::quadrature::{integrate_1d_points, integrate_semi_infinite, Fallible, InfiniteMethod};
use crate::quadrature::{IntegralResult, QuadratureSpec};

/// Atomic number density of gold, m⁻³.
pub const GOLD_NUMBER_DENSITY_M3: f64 = 5.9e28;

/// Environment temperature T and body temperature T′.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalPair {
    pub t_env_k: f64,
    pub t_body_k: f64,
    /// 1/T in eV⁻¹.
    pub beta: f64,
    /// 1/T′ in eV⁻¹.
    pub beta_prime: f64,
}

impl ThermalPair {
    pub fn new(t_env_k: f64, t_body_k: f64) -> Result<Self> {
        if !(t_env_k > 0.0 && t_body_k > 0.0 && t_env_k.is_finite() && t_body_k.is_finite()) {
            return Err(Error::Domain(format!(
                "temperatures must be positive and finite (T = {t_env_k} K, T' = {t_body_k} K)"
            )));
        }
        let u = UnitSystem::SI;
        Ok(Self {
            t_env_k,
            t_body_k,
            beta: 1.0 / u.to_natural(t_env_k, Dimension::Temperature),
            beta_prime: 1.0 / u.to_natural(t_body_k, Dimension::Temperature),
        })
    }

    /// Environment at inverse temperature `beta` (eV⁻¹), body at T′ = u·T.
    pub fn from_beta_ratio(beta: f64, u: f64) -> Result<Self> {
        if !(beta > 0.0 && u > 0.0) {
            return Err(Error::Domain(format!("need beta > 0 and u > 0 (got {beta}, {u})")));
        }
        let us = UnitSystem::SI;
        let t = us.from_natural(1.0 / beta, Dimension::Temperature);
        Ok(Self { t_env_k: t, t_body_k: t * u, beta, beta_prime: beta / u })
    }

    pub fn t_env(&self) -> f64 {
        1.0 / self.beta
    }

    pub fn t_body(&self) -> f64 {
        1.0 / self.beta_prime
    }

    /// T′/T.
    pub fn ratio(&self) -> f64 {
        self.beta / self.beta_prime
    }

    pub fn swapped(&self) -> Self {
        Self {
            t_env_k: self.t_body_k,
            t_body_k: self.t_env_k,
            beta: self.beta_prime,
            beta_prime: self.beta,
        }
    }

    pub fn is_equilibrium(&self) -> bool {
        self.beta == self.beta_prime
    }

    /// The larger of the two temperatures (eV), a natural frequency scale.
    pub fn hottest(&self) -> f64 {
        1.0 / self.beta.min(self.beta_prime)
    }
}

/// Bose function 1/(eˣ − 1) for x > 0.
pub fn bose(x: f64) -> f64 {
    if x > 1.0 {
        let e = (-x).exp();
        e / -(-x).exp_m1()
    } else {
        1.0 / x.exp_m1()
    }
}

/// n(a) − n(b), with a Laurent series when both arguments are small.
pub fn bose_diff(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if a.max(b) < 0.1 {
        let (a3, b3) = (a * a * a, b * b * b);
        (b - a) / (a * b) + (a - b) / 12.0 - (a3 - b3) / 720.0 + (a3 * a * a - b3 * b * b) / 30240.0
    } else {
        bose(a) - bose(b)
    }
}

/// n(βω) − n(β′ω).
pub fn occupation_diff(omega: f64, thermal: &ThermalPair) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("occupation difference needs omega > 0, got {omega}")));
    }
    Ok(bose_diff(thermal.beta * omega, thermal.beta_prime * omega))
}

/// Power in natural units together with its SI value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerResult {
    pub natural: IntegralResult,
    pub watts: f64,
    pub watts_error: f64,
}

/// Radiated power P = (1/3π²) ∫₀^∞ dω ω⁴ Im tr α(ω) [n(βω) − n(β′ω)].
///
/// Positive when the environment is hotter than the body.
pub fn radiated_power(
    alpha: &(dyn Fn(f64) -> Result<Matrix3<Complex64>> + Sync),
    thermal: &ThermalPair,
    quad: &QuadratureSpec,
) -> Result<PowerResult> {
    let natural = if thermal.is_equilibrium() {
        IntegralResult::exact(0.0)
    } else {
        let fb = Fallible::default();
        let f = |w: f64| {
            if w <= 0.0 {
                return 0.0;
            }
            fb.value(alpha(w).and_then(|a| {
                let im_tr = a.trace().im;
                Ok(w.powi(4) * im_tr * occupation_diff(w, thermal)?)
            }))
        };
        let r = integrate_semi_infinite(f, 0.0, thermal.hottest(), InfiniteMethod::Map, quad);
        fb.finish(r)?.scaled(1.0 / (3.0 * PI * PI))
    };
    let k = UnitSystem::SI.si_factor(Dimension::Power);
    Ok(PowerResult { natural, watts: natural.value * k, watts_error: natural.error_estimate * k })
}

/// p(u) = ∫₀^∞ dx x³/(x²+1) [n(βνx) − n(βνx/u)] with β = 1/T_env.
pub fn p_dimensionless(u: f64, t_env: f64, nu: f64, quad: &QuadratureSpec) -> Result<IntegralResult> {
    if !(u > 0.0 && t_env > 0.0 && nu > 0.0) {
        return Err(Error::Domain(format!("p(u) needs u, T, nu > 0 (got {u}, {t_env}, {nu})")));
    }
    if u == 1.0 {
        return Ok(IntegralResult::exact(0.0));
    }
    let bn = nu / t_env;
    let f = |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        x.powi(3) / (x * x + 1.0) * bose_diff(bn * x, bn * x / u)
    };
    integrate_semi_infinite(f, 0.0, u.max(1.0) / bn, InfiniteMethod::Map, quad)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeScale {
    /// eV⁻¹.
    pub natural: f64,
    pub seconds: f64,
}

impl TimeScale {
    pub fn from_natural(natural: f64) -> Self {
        Self { natural, seconds: UnitSystem::SI.from_natural(natural, Dimension::Time) }
    }
}

/// t_c = 3π² n T/(ν³ ω_p²) for a Drude body with atomic density `n` (eV³).
pub fn cooling_timescale_tc(material: &MaterialModel, n_density: f64, t_env: f64) -> Result<TimeScale> {
    let MaterialModel::Drude { omega_p, nu } = material else {
        return Err(Error::Usage("cooling timescale needs a Drude model".into()));
    };
    if !(n_density > 0.0 && t_env > 0.0) {
        return Err(Error::Domain("cooling timescale needs n > 0 and T > 0".into()));
    }
    Ok(TimeScale::from_natural(3.0 * PI * PI * n_density * t_env / (nu.powi(3) * omega_p * omega_p)))
}

/// Dulong–Petit heat capacity 3n·V (dimensionless in natural units).
pub fn dulong_petit(n_density: f64, volume: f64) -> f64 {
    3.0 * n_density * volume
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoolingTime {
    pub natural: IntegralResult,
    pub seconds: f64,
}

/// Time to cool from T0 to T1: t = ∫_{T0}^{T1} dT′ C_V(T′)/P(T′, T).
///
/// `heat_capacity` and `power` take temperatures in eV; P is in eV² and is
/// negative while the body is hotter than its surroundings.
pub fn cooling_time(
    t0_k: f64,
    t1_k: f64,
    t_env_k: f64,
    heat_capacity: &(dyn Fn(f64) -> f64 + Sync),
    power: &(dyn Fn(f64, f64) -> Result<f64> + Sync),
    quad: &QuadratureSpec,
) -> Result<CoolingTime> {
    if !(t0_k >= t1_k && t1_k > t_env_k && t_env_k > 0.0) {
        return Err(Error::Domain(format!(
            "cooling needs T0 >= T1 > T_env > 0 (got {t0_k}, {t1_k}, {t_env_k})"
        )));
    }
    if t0_k == t1_k {
        return Ok(CoolingTime { natural: IntegralResult::exact(0.0), seconds: 0.0 });
    }
    let us = UnitSystem::SI;
    let to_ev = |t: f64| us.to_natural(t, Dimension::Temperature);
    let (t0, t1, te) = (to_ev(t0_k), to_ev(t1_k), to_ev(t_env_k));
    let fb = Fallible::default();
    let f = |tp: f64| {
        fb.value(power(tp, te).and_then(|p| {
            if !(p < 0.0) {
                return Err(Error::Divergence(format!(
                    "net power {p} is not negative at T' = {} K: the body no longer cools",
                    us.from_natural(tp, Dimension::Temperature)
                )));
            }
            Ok(heat_capacity(tp) / p)
        }))
    };
    let r = integrate_1d_points(f, t1, t0, &[], quad);
    let r = fb.finish(r)?.scaled(-1.0);
    Ok(CoolingTime { natural: r, seconds: us.from_natural(r.value, Dimension::Time) })
}

/// Doubling scan for the point beyond which |f| stays below `tol` times
/// its largest sampled value.
pub fn truncation_point(f: &dyn Fn(f64) -> f64, a: f64, scale: f64, tol: f64) -> Result<f64> {
    let mut peak = 0.0_f64;
    let mut quiet = 0;
    let mut k = -8.0;
    while k < 200.0 {
        let x = a + scale * 2f64.powf(k);
        let v = f(x).abs();
        if !v.is_finite() {
            return Err(Error::Integration(format!("non-finite weight at {x}")));
        }
        peak = peak.max(v);
        if peak > 0.0 && v < tol * peak {
            quiet += 1;
            if quiet == 2 {
                return Ok(x);
            }
        } else {
            quiet = 0;
        }
        k += 0.25;
    }
    Err(Error::Integration("integrand weight does not decay".into()))
}
