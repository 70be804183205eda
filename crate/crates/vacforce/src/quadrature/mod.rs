//! Integration engines: adaptive Gauss–Kronrod in 1-D, tensorized nested
//! quadrature up to four dimensions, and seeded stratified Monte Carlo.
//!
//! All engines are deterministic: work is split into independent pieces,
//! evaluated (optionally in parallel) and reduced in a fixed order.

mod gk;
mod mc;
mod nested;

pub use gk::{integrate_1d, integrate_1d_inner, integrate_1d_points, integrate_semi_infinite, InfiniteMethod};
pub use mc::{integrate_mc, BoxRegion, HalfBallSlab, ProductRegion, Region};
pub use nested::{integrate_nested, Limits};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub mc_samples: u64,
    pub seed: u64,
    /// Oscillation period of the integrand in its own variable; panels are
    /// then never longer than half of it.
    pub oscillation_period_hint: Option<f64>,
    /// Run the engines data-parallel (only effective with the `parallel` feature).
    pub parallel: bool,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-300,
            max_subdivisions: 20_000,
            mc_samples: 1_000_000,
            seed: 0x5EED_2024,
            oscillation_period_hint: None,
            parallel: true,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_period(mut self, period: Option<f64>) -> Self {
        self.oscillation_period_hint = period;
        self
    }

    pub fn with_samples(mut self, n: u64) -> Self {
        self.mc_samples = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::Usage("rel_tol and abs_tol must be positive".into()));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Usage("max_subdivisions must be at least 1".into()));
        }
        if let Some(p) = self.oscillation_period_hint {
            if !(p > 0.0 && p.is_finite()) {
                return Err(Error::Usage("oscillation period hint must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
}

impl IntegralResult {
    pub fn exact(value: f64) -> Self {
        Self { value, error_estimate: 0.0, evaluations: 0, converged: true }
    }

    pub fn scaled(self, k: f64) -> Self {
        Self { value: self.value * k, error_estimate: self.error_estimate * k.abs(), ..self }
    }

    /// Sum of two independent estimates; errors add linearly.
    pub fn plus(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    pub fn minus(self, other: Self) -> Self {
        self.plus(other.scaled(-1.0))
    }
}

/// Bridges fallible integrands into the engines: the first error is kept
/// and reported in place of the NaN the engine sees.
#[derive(Default)]
pub(crate) struct Fallible {
    first: std::sync::Mutex<Option<Error>>,
}

impl Fallible {
    pub fn value(&self, r: Result<f64>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.first.lock().unwrap().get_or_insert(e);
                f64::NAN
            }
        }
    }

    pub fn finish<T>(self, r: Result<T>) -> Result<T> {
        match self.first.into_inner().unwrap() {
            Some(e) => Err(e),
            None => r,
        }
    }
}
