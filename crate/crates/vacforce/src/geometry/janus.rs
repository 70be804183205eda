use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exec;
use crate::greens::g;
use crate::quadrature::{
    integrate_1d, integrate_mc, integrate_nested, HalfBallSlab, IntegralResult, Limits, ProductRegion,
    QuadratureSpec, Region,
};

/// Depth of the boundary-layer strata next to the interface, in radii.
pub const JANUS_BOUNDARY_LAYER: f64 = 0.1;

const TABLE_POINTS: usize = 513;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JanusEngine {
    /// Six-dimensional stratified Monte Carlo.
    MonteCarlo,
    /// One-dimensional integral against the tabulated pair profile.
    #[default]
    NestedProfile,
}

/// Overlap area of two discs with radii r1, r2 and centre distance d.
fn lens(r1: f64, r2: f64, d: f64) -> f64 {
    if r1 <= 0.0 || r2 <= 0.0 || d >= r1 + r2 {
        return 0.0;
    }
    if d <= (r1 - r2).abs() {
        let r = r1.min(r2);
        return PI * r * r;
    }
    let c1 = ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)).clamp(-1.0, 1.0);
    let c2 = ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)).clamp(-1.0, 1.0);
    let k = ((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)).max(0.0);
    r1 * r1 * c1.acos() + r2 * r2 * c2.acos() - 0.5 * k.sqrt()
}

/// Volume of (upper unit half-ball) ∩ (lower unit half-ball + s) for s = (R⊥, 0, Z).
fn overlap_integrand(r_perp: f64, z_shift: f64, z: f64) -> f64 {
    let r1 = (1.0 - z * z).max(0.0).sqrt();
    let zb = z - z_shift;
    let r2 = (1.0 - zb * zb).max(0.0).sqrt();
    lens(r1, r2, r_perp)
}

fn z_window(zs: f64) -> (f64, f64) {
    ((zs - 1.0).max(0.0), zs.min(1.0))
}

/// D_J(R) = ∫_A∫_B (z − z′) δ(|r − r′| − R) for the unit Janus ball,
/// by nested quadrature over the direction cosine and the height.
pub fn janus_profile_exact(r: f64, quad: &QuadratureSpec) -> Result<IntegralResult> {
    if !(0.0..=2.0).contains(&r) {
        return Ok(IntegralResult::exact(0.0));
    }
    if r == 0.0 {
        return Ok(IntegralResult::exact(0.0));
    }
    let f = |p: &[f64]| {
        let mu = p[0];
        overlap_integrand(r * (1.0 - mu * mu).max(0.0).sqrt(), r * mu, p[1]) * mu
    };
    let zl = |p: &[f64]| z_window(r * p[0]);
    let res = integrate_nested(&f, &[Limits::Fixed(0.0, 1.0), Limits::Dependent(&zl)], &quad.clone().sequential())?;
    Ok(res.scaled(2.0 * PI * r.powi(3)))
}

struct ProfileTable {
    h: f64,
    values: Vec<f64>,
    /// Per-node interpolation error bound from halving the grid.
    node_error: Vec<f64>,
    converged: bool,
}

impl ProfileTable {
    fn build() -> Self {
        let n = TABLE_POINTS;
        let h = 2.0 / (n - 1) as f64;
        let spec = QuadratureSpec::default().with_rel_tol(1e-9).with_abs_tol(1e-15);
        let rows = exec::map_range(true, n, |i| janus_profile_exact(i as f64 * h, &spec));
        let mut converged = true;
        let values: Vec<f64> = rows
            .into_iter()
            .map(|r| match r {
                Ok(r) => {
                    converged &= r.converged;
                    r.value
                }
                Err(_) => {
                    converged = false;
                    f64::NAN
                }
            })
            .collect();
        // every other node gives a grid of spacing 2h; its miss at the
        // dropped nodes is ~16 times the full-grid error for cubic interpolation
        let coarse: Vec<f64> = values.iter().step_by(2).copied().collect();
        let mut miss = vec![0.0; n];
        for i in (1..n - 1).step_by(2) {
            let x = i as f64 * h;
            miss[i] = 2.0 * (cubic(&coarse, 2.0 * h, x) - values[i]).abs() / 16.0;
        }
        // spread to the even nodes and over a stencil width
        let node_error: Vec<f64> =
            (0..n).map(|i| miss[i.saturating_sub(3)..(i + 4).min(n)].iter().fold(0.0, |m: f64, &e| m.max(e))).collect();
        Self { h, values, node_error, converged }
    }

    fn eval(&self, r: f64) -> f64 {
        if !(0.0..=2.0).contains(&r) {
            return 0.0;
        }
        cubic(&self.values, self.h, r)
    }

    fn error_at(&self, r: f64) -> f64 {
        if !(0.0..=2.0).contains(&r) {
            return 0.0;
        }
        let i = ((r / self.h).round() as usize).min(self.node_error.len() - 1);
        self.node_error[i]
    }
}

fn cubic(y: &[f64], h: f64, x: f64) -> f64 {
    let n = y.len();
    let i = ((x / h).floor() as isize).clamp(0, n as isize - 2) as usize;
    let base = i.saturating_sub(1).min(n - 4);
    let t = x / h - base as f64;
    let (y0, y1, y2, y3) = (y[base], y[base + 1], y[base + 2], y[base + 3]);
    // Lagrange on nodes 0, 1, 2, 3
    -y0 * (t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0 + y1 * t * (t - 2.0) * (t - 3.0) / 2.0
        - y2 * t * (t - 1.0) * (t - 3.0) / 2.0
        + y3 * t * (t - 1.0) * (t - 2.0) / 6.0
}

fn table() -> &'static ProfileTable {
    static TABLE: OnceLock<ProfileTable> = OnceLock::new();
    TABLE.get_or_init(ProfileTable::build)
}

/// Tabulated D_J(R), built on first use.
pub fn janus_profile(r: f64) -> f64 {
    table().eval(r)
}

/// Interpolation error bound of [`janus_profile`] at `r`.
pub fn janus_profile_error(r: f64) -> f64 {
    table().error_at(r)
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!("ωa must be positive, got {a}")));
    }
    Ok(())
}

/// J₆(A) = ∫_A∫_B (z − z′) g(A|r − r′|) over the unit Janus ball.
pub fn janus_reduced_integral(a: f64, engine: JanusEngine, quad: &QuadratureSpec) -> Result<IntegralResult> {
    check_a(a)?;
    match engine {
        JanusEngine::NestedProfile => {
            let t = table();
            let spec = quad.clone().with_period(Some(PI / a));
            let main = integrate_1d(|r| t.eval(r) * g(a * r), 0.0, 2.0, &spec)?;
            let table_err = integrate_1d(|r| t.error_at(r) * g(a * r).abs(), 0.0, 2.0, &spec.clone().with_rel_tol(1e-3))?;
            Ok(IntegralResult {
                error_estimate: main.error_estimate + table_err.value,
                converged: main.converged && t.converged,
                ..main
            })
        }
        JanusEngine::MonteCarlo => {
            let d = JANUS_BOUNDARY_LAYER;
            let upper = [HalfBallSlab::new(1.0, 0.0, d), HalfBallSlab::new(1.0, d, 1.0)];
            let lower = [HalfBallSlab::new(1.0, -d, 0.0), HalfBallSlab::new(1.0, -1.0, -d)];
            let strata: Vec<ProductRegion<HalfBallSlab, HalfBallSlab>> =
                upper.iter().flat_map(|&u| lower.iter().map(move |&l| ProductRegion { a: u, b: l })).collect();
            let refs: Vec<&dyn Region> = strata.iter().map(|s| s as &dyn Region).collect();
            let f = |p: &[f64]| {
                let (dx, dy, dz) = (p[0] - p[3], p[1] - p[4], p[2] - p[5]);
                dz * g(a * (dx * dx + dy * dy + dz * dz).sqrt())
            };
            integrate_mc(&f, &refs, quad)
        }
    }
}

/// J₆ by three-level nested quadrature over (R, μ, z) without the table.
pub fn janus_reduced_nested(a: f64, quad: &QuadratureSpec) -> Result<IntegralResult> {
    check_a(a)?;
    let f = |p: &[f64]| {
        let (r, mu) = (p[0], p[1]);
        2.0 * PI * r.powi(3) * mu * g(a * r) * overlap_integrand(r * (1.0 - mu * mu).max(0.0).sqrt(), r * mu, p[2])
    };
    let zl = |p: &[f64]| z_window(p[0] * p[1]);
    let limits = [Limits::Fixed(0.0, 2.0), Limits::Fixed(0.0, 1.0), Limits::Dependent(&zl)];
    integrate_nested(&f, &limits, &quad.clone().with_period(Some(PI / a)))
}

/// 8πa·I = A⁸J₆(A)/(2π), with A = ωa.
pub fn janus_scaled_integral(a: f64, engine: JanusEngine, quad: &QuadratureSpec) -> Result<IntegralResult> {
    Ok(janus_reduced_integral(a, engine, quad)?.scaled(a.powi(8) / (2.0 * PI)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lens_limits() {
        assert_eq!(lens(1.0, 1.0, 2.5), 0.0);
        assert!((lens(1.0, 0.5, 0.1) - PI * 0.25).abs() < 1e-15);
        // two unit discs at distance 1
        let expect = 2.0 * PI / 3.0 - 3f64.sqrt() / 2.0;
        assert!((lens(1.0, 1.0, 1.0) - expect).abs() < 1e-14);
    }

    #[test]
    fn profile_small_r() {
        // D_J → (2π²/3) R⁴
        let q = QuadratureSpec::default();
        let r = 1e-2;
        let d = janus_profile_exact(r, &q).unwrap().value;
        assert!((d / (2.0 * PI * PI / 3.0 * r.powi(4)) - 1.0).abs() < 2e-2, "{d}");
    }

    #[test]
    fn profile_first_moment_is_volume_moment() {
        // ∫ D_J dR = ∫_A∫_B (z − z′) = 2 V² (3/8) with V = 2π/3
        let q = QuadratureSpec::default().with_rel_tol(1e-9);
        let m = integrate_1d(janus_profile, 0.0, 2.0, &q).unwrap().value;
        assert!((m - PI * PI / 3.0).abs() < 1e-7, "{m}");
    }
}
