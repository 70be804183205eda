use std::f64::consts::PI;

use crate::greens::radial_moment;

/// Pair distribution of the hemisphere shell on the unit sphere:
/// ∫_A∫_B (z − z′) δ(|r − r′| − R) dS dS′ = π²R³ for 0 ≤ R ≤ 2.
pub fn shell_profile(r: f64) -> f64 {
    if (0.0..=2.0).contains(&r) {
        PI * PI * r.powi(3)
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellRow {
    pub omega_a: f64,
    /// Ĩ = 8π I/(ω⁸a⁵t²) = (π/2) M₃(2ωa)/(ωa)⁴.
    pub scaled: f64,
    /// (ωa)⁸ Ĩ, the integrand weight seen by the frequency integral.
    pub weighted: f64,
}

pub fn shell_scaled_integral(omega_a: &[f64]) -> Vec<ShellRow> {
    omega_a
        .iter()
        .map(|&x| {
            let m3 = radial_moment(3, 2.0 * x);
            let scaled = if x < 1e-3 {
                // M₃(v) → −(4/9)v⁴/4 as v → 0
                -8.0 * PI / 9.0
            } else {
                0.5 * PI * m3 / x.powi(4)
            };
            ShellRow { omega_a: x, scaled, weighted: 0.5 * PI * m3 * x.powi(4) }
        })
        .collect()
}

/// Least-squares N in Ĩ ≈ N/(ωa)⁴ over n log-spaced points of [lo, hi].
pub fn shell_power_law_fit(lo: f64, hi: f64, n: usize) -> f64 {
    let n = n.max(2);
    let xs: Vec<f64> = (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect();
    let rows = shell_scaled_integral(&xs);
    let (mut num, mut den) = (0.0, 0.0);
    for r in rows {
        let basis = r.omega_a.powi(-4);
        num += r.scaled * basis;
        den += basis * basis;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_argument_limit() {
        let r = shell_scaled_integral(&[1e-2, 1e-4]);
        assert!((r[0].scaled + 8.0 * PI / 9.0).abs() < 1e-3);
        assert_eq!(r[1].scaled, -8.0 * PI / 9.0);
    }

    #[test]
    fn fit_coefficient_is_order_unity_negative() {
        let n = shell_power_law_fit(20.0, 100.0, 81);
        assert!(n < -1.0 && n > -15.0, "{n}");
    }
}
