//! Spontaneous quantum-vacuum forces and torques on two-part bodies that are
//! out of thermal equilibrium with the blackbody background.
//!
//! Everything internal is in natural units (ħ = c = ε₀ = k_B = 1) with the
//! electron-volt as base unit; [`constants`] converts to and from SI.

pub mod constants;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod greens;
pub mod materials;
pub mod observables;
pub mod quadrature;
pub mod special;
pub mod thermal;

pub use error::{Error, Result};
