use std::sync::Mutex;

use crate::error::{Error, Result};

use super::gk::{adaptive, Eval};
use super::{IntegralResult, QuadratureSpec};

/// Limits of one coordinate, either fixed or depending on the outer ones.
pub enum Limits<'a> {
    Fixed(f64, f64),
    Dependent(&'a (dyn Fn(&[f64]) -> (f64, f64) + Sync)),
}

impl Limits<'_> {
    fn at(&self, outer: &[f64]) -> (f64, f64) {
        match self {
            Limits::Fixed(a, b) => (*a, *b),
            Limits::Dependent(f) => f(outer),
        }
    }
}

const MAX_DIM: usize = 4;

/// Iterated adaptive quadrature, outermost coordinate first.
///
/// Inner integrals run at a tenth of the outer tolerance and their error
/// estimates are folded into the outer panel errors, so the returned error
/// covers every level. Only the outermost level is parallel.
pub fn integrate_nested(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    limits: &[Limits<'_>],
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    let d = limits.len();
    if d == 0 || d > MAX_DIM {
        return Err(Error::Usage(format!("nested quadrature supports 1..=4 dimensions, got {d}")));
    }
    spec.validate()?;
    let failure = Mutex::new(None);
    let r = level(f, limits, 0, [0.0; MAX_DIM], spec, &failure);
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    r
}

fn level(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    limits: &[Limits<'_>],
    depth: usize,
    prefix: [f64; MAX_DIM],
    spec: &QuadratureSpec,
    failure: &Mutex<Option<Error>>,
) -> Result<IntegralResult> {
    let d = limits.len();
    let (lo, hi) = limits[depth].at(&prefix[..depth]);
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::Usage(format!("non-finite limits at level {depth}: [{lo}, {hi}]")));
    }
    if lo == hi {
        return Ok(IntegralResult::exact(0.0));
    }
    let (a, b, sign) = if hi > lo { (lo, hi, 1.0) } else { (hi, lo, -1.0) };
    let inner_spec = QuadratureSpec {
        rel_tol: spec.rel_tol * 0.1,
        abs_tol: spec.abs_tol * 0.1,
        parallel: false,
        oscillation_period_hint: None,
        ..spec.clone()
    };
    let g = |x: f64| {
        let mut p = prefix;
        p[depth] = x;
        if depth + 1 == d {
            Eval::plain(f(&p[..d]))
        } else {
            match level(f, limits, depth + 1, p, &inner_spec, failure) {
                Ok(r) => r.into(),
                Err(e) => {
                    failure.lock().unwrap().get_or_insert(e);
                    Eval { value: f64::NAN, err: 0.0, evals: 0, ok: false }
                }
            }
        }
    };
    let mut s = spec.clone();
    s.oscillation_period_hint = None;
    Ok(adaptive(&g, &[a, b], &s)?.scaled(sign))
}
