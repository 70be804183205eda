//! Natural units (ħ = c = ε₀ = k_B = 1) with the electron-volt as base unit.
//!
//! A natural-unit quantity of dimension eVⁿ is converted to SI by a single
//! multiplicative factor, so every conversion is `si = natural · factor`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// ħc in eV·nm (CODATA 2018).
pub const HBAR_C_EV_NM: f64 = 197.326_980_4;
/// ħ in eV·s.
pub const HBAR_EV_S: f64 = 6.582_119_569e-16;
/// Boltzmann constant in eV/K.
pub const KB_EV_PER_K: f64 = 8.617_333_262e-5;
/// Joules per electron-volt.
pub const JOULE_PER_EV: f64 = 1.602_176_634e-19;
/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Reference inverse temperature used by the scenario defaults (eV⁻¹).
/// Note 300 K is 38.68 eV⁻¹; 40 eV⁻¹ is about 290 K.
pub const BETA0: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Length,
    Area,
    Volume,
    Time,
    Temperature,
    Frequency,
    Energy,
    Force,
    Torque,
    Power,
    Mass,
    MassDensity,
    NumberDensity,
    Velocity,
    Acceleration,
}

impl Dimension {
    pub const ALL: [Dimension; 15] = [
        Dimension::Length,
        Dimension::Area,
        Dimension::Volume,
        Dimension::Time,
        Dimension::Temperature,
        Dimension::Frequency,
        Dimension::Energy,
        Dimension::Force,
        Dimension::Torque,
        Dimension::Power,
        Dimension::Mass,
        Dimension::MassDensity,
        Dimension::NumberDensity,
        Dimension::Velocity,
        Dimension::Acceleration,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Dimension::Length => "length",
            Dimension::Area => "area",
            Dimension::Volume => "volume",
            Dimension::Time => "time",
            Dimension::Temperature => "temperature",
            Dimension::Frequency => "frequency",
            Dimension::Energy => "energy",
            Dimension::Force => "force",
            Dimension::Torque => "torque",
            Dimension::Power => "power",
            Dimension::Mass => "mass",
            Dimension::MassDensity => "mass-density",
            Dimension::NumberDensity => "number-density",
            Dimension::Velocity => "velocity",
            Dimension::Acceleration => "acceleration",
        }
    }

    /// SI unit the lab-side value is expressed in.
    pub fn si_unit(self) -> &'static str {
        match self {
            Dimension::Length => "m",
            Dimension::Area => "m^2",
            Dimension::Volume => "m^3",
            Dimension::Time => "s",
            Dimension::Temperature => "K",
            Dimension::Frequency => "rad/s",
            Dimension::Energy => "J",
            Dimension::Force => "N",
            Dimension::Torque => "N m",
            Dimension::Power => "W",
            Dimension::Mass => "kg",
            Dimension::MassDensity => "kg/m^3",
            Dimension::NumberDensity => "m^-3",
            Dimension::Velocity => "m/s",
            Dimension::Acceleration => "m/s^2",
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Dimension::ALL
            .iter()
            .copied()
            .find(|d| d.tag() == s)
            .ok_or_else(|| Error::Usage(format!("unknown dimension tag '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    /// ħc in eV·nm.
    pub hbar_c: f64,
    pub kb_in_ev_per_k: f64,
    /// Angular frequency in s⁻¹ of 1 eV (1/ħ).
    pub ev_to_inverse_seconds: f64,
    /// Newtons per eV².
    pub ev_to_newton_scale: f64,
    /// Newton-metres per eV.
    pub ev_to_newton_meter_scale: f64,
    pub speed_of_light: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self::SI
    }
}

impl UnitSystem {
    pub const SI: UnitSystem = UnitSystem {
        hbar_c: HBAR_C_EV_NM,
        kb_in_ev_per_k: KB_EV_PER_K,
        ev_to_inverse_seconds: 1.0 / HBAR_EV_S,
        ev_to_newton_scale: JOULE_PER_EV / (HBAR_C_EV_NM * 1e-9),
        ev_to_newton_meter_scale: JOULE_PER_EV,
        speed_of_light: SPEED_OF_LIGHT,
    };

    /// Metres per eV⁻¹.
    pub fn meters_per_inverse_ev(&self) -> f64 {
        self.hbar_c * 1e-9
    }

    /// Multiplier taking a natural-unit value to SI.
    pub fn si_factor(&self, dim: Dimension) -> f64 {
        let len = self.meters_per_inverse_ev();
        let sec = 1.0 / self.ev_to_inverse_seconds;
        let joule = self.ev_to_newton_meter_scale;
        let c = self.speed_of_light;
        match dim {
            Dimension::Length => len,
            Dimension::Area => len * len,
            Dimension::Volume => len * len * len,
            Dimension::Time => sec,
            Dimension::Temperature => 1.0 / self.kb_in_ev_per_k,
            Dimension::Frequency => self.ev_to_inverse_seconds,
            Dimension::Energy | Dimension::Torque => joule,
            Dimension::Force => self.ev_to_newton_scale,
            Dimension::Power => joule * self.ev_to_inverse_seconds,
            Dimension::Mass => joule / (c * c),
            Dimension::MassDensity => joule / (c * c) / (len * len * len),
            Dimension::NumberDensity => 1.0 / (len * len * len),
            Dimension::Velocity => c,
            Dimension::Acceleration => c * self.ev_to_inverse_seconds,
        }
    }

    pub fn to_natural(&self, value: f64, dim: Dimension) -> f64 {
        value / self.si_factor(dim)
    }

    pub fn from_natural(&self, value: f64, dim: Dimension) -> f64 {
        value * self.si_factor(dim)
    }

    /// String-tagged variant of [`UnitSystem::to_natural`].
    pub fn to_natural_tagged(&self, value: f64, tag: &str) -> Result<f64> {
        Ok(self.to_natural(value, tag.parse()?))
    }

    pub fn from_natural_tagged(&self, value: f64, tag: &str) -> Result<f64> {
        Ok(self.from_natural(value, tag.parse()?))
    }
}

/// Natural length (eV⁻¹) from metres.
pub fn meters(x: f64) -> f64 {
    UnitSystem::SI.to_natural(x, Dimension::Length)
}

/// Natural temperature (eV) from kelvin.
pub fn kelvin(t: f64) -> f64 {
    UnitSystem::SI.to_natural(t, Dimension::Temperature)
}

/// Kelvin for a given inverse temperature in eV⁻¹.
pub fn kelvin_from_beta(beta: f64) -> f64 {
    UnitSystem::SI.from_natural(1.0 / beta, Dimension::Temperature)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_at_300k() {
        let beta = 1.0 / kelvin(300.0);
        assert!((beta - 38.68).abs() < 0.01, "{beta}");
    }

    #[test]
    fn beta0_is_about_290k() {
        let t = kelvin_from_beta(BETA0);
        assert!((t - 290.1).abs() < 0.1, "{t}");
    }

    #[test]
    fn zero_length() {
        assert_eq!(meters(0.0), 0.0);
    }

    #[test]
    fn unknown_tag_is_usage_error() {
        let e = UnitSystem::SI.to_natural_tagged(1.0, "furlong").unwrap_err();
        assert!(matches!(e, Error::Usage(_)));
    }

    #[test]
    fn force_scale() {
        // 1 eV² ≈ 8.119e-13 N
        let f = UnitSystem::SI.si_factor(Dimension::Force);
        assert!((f / 8.119e-13 - 1.0).abs() < 1e-3, "{f}");
    }

    #[test]
    fn tags_round_trip() {
        for d in Dimension::ALL {
            assert_eq!(d.tag().parse::<Dimension>().unwrap(), d);
        }
    }
}
