use crate::error::Result;
use crate::greens::{radial_moment, radial_moment_limit};
use crate::quadrature::{integrate_1d_points, IntegralResult, QuadratureSpec};

/// Slab pair integral in units of ω:
/// ∫₀^{T_A+T_B} w(u) u (M₁(∞) − M₁(u)) du, w(u) = min(u, T_A, T_B, T_A + T_B − u).
pub fn plate_reduced_integral(t_a: f64, t_b: f64, quad: &QuadratureSpec) -> Result<IntegralResult> {
    let m1_inf = radial_moment_limit(1).expect("M1 converges");
    let l = t_a + t_b;
    let (lo, hi) = if t_a < t_b { (t_a, t_b) } else { (t_b, t_a) };
    let f = |u: f64| {
        let w = u.min(lo).min(l - u);
        w * u * (m1_inf - radial_moment(1, u))
    };
    integrate_1d_points(f, 0.0, l, &[lo, hi], quad)
}
