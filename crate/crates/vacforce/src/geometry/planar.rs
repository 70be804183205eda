use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::error::{Error, Result};
use crate::greens::{g, radial_moments, G_SERIES};
use crate::quadrature::{integrate_1d_points, integrate_nested, IntegralResult, Limits, QuadratureSpec};

/// Polynomial Σ c[i][j] xⁱ yʲ of total degree at most 3.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Poly2 {
    pub c: [[f64; 4]; 4],
}

impl Poly2 {
    pub fn term(mut self, i: usize, j: usize, c: f64) -> Self {
        assert!(i + j <= 3, "degree above 3");
        self.c[i][j] += c;
        self
    }

    fn reflected(&self, sx: f64, sy: f64) -> Self {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.c[i][j] *= sx.powi(i as i32) * sy.powi(j as i32);
            }
        }
        out
    }
}

/// ∫₀^X∫₀^Y P g(√(x² + y²)) dy dx for X, Y > 0, in polar form: the radial
/// integral of each monomial is a kernel moment M_{i+j+1}(ρ_out(θ)).
fn corner(p: &Poly2, xm: f64, ym: f64, quad: &QuadratureSpec) -> Result<IntegralResult> {
    let tc = ym.atan2(xm);
    let rho_c = xm.hypot(ym);
    let rho = |t: f64| if t <= tc { xm / t.cos() } else { ym / t.sin() };
    let f = |t: f64| {
        let m = radial_moments(rho(t).min(rho_c));
        let (c, s) = (t.cos(), t.sin());
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 - i {
                let k = p.c[i][j];
                if k != 0.0 {
                    acc += k * c.powi(i as i32) * s.powi(j as i32) * m[i + j + 1];
                }
            }
        }
        acc
    };
    let mut pts = vec![tc];
    let mut k = (xm / FRAC_PI_4).floor() + 1.0;
    while k * FRAC_PI_4 < rho_c {
        pts.push((xm / (k * FRAC_PI_4)).acos());
        k += 1.0;
    }
    let mut k = (ym / FRAC_PI_4).floor() + 1.0;
    while k * FRAC_PI_4 < rho_c {
        pts.push((ym / (k * FRAC_PI_4)).asin().max(tc));
        k += 1.0;
    }
    let spec = quad.clone().with_period(None);
    integrate_1d_points(f, 0.0, FRAC_PI_2, &pts, &spec)
}

/// Signed origin-corner integral over [0, X] × [0, Y].
fn corner_signed(p: &Poly2, x: f64, y: f64, quad: &QuadratureSpec) -> Result<IntegralResult> {
    if x == 0.0 || y == 0.0 {
        return Ok(IntegralResult::exact(0.0));
    }
    let (sx, sy) = (x.signum(), y.signum());
    Ok(corner(&p.reflected(sx, sy), x.abs(), y.abs(), quad)?.scaled(sx * sy))
}

/// ∫_{x0}^{x1}∫_{y0}^{y1} P(x, y) g(√(x² + y²)) dy dx, coordinates in units of 1/ω.
pub fn rect_kernel_integral(
    p: &Poly2,
    (x0, x1): (f64, f64),
    (y0, y1): (f64, f64),
    quad: &QuadratureSpec,
) -> Result<IntegralResult> {
    for v in [x0, x1, y0, y1] {
        if !v.is_finite() {
            return Err(Error::Domain(format!("rectangle corner {v} is not finite")));
        }
    }
    let pp = corner_signed(p, x1, y1, quad)?;
    let mp = corner_signed(p, x0, y1, quad)?;
    let pm = corner_signed(p, x1, y0, quad)?;
    let mm = corner_signed(p, x0, y0, quad)?;
    Ok(pp.minus(mp).minus(pm).plus(mm))
}

/// Below this outer radius the planar integrals use the Taylor series of g.
/// Corner subtraction loses all digits there: the g(0) term cancels exactly.
const SERIES_RADIUS: f64 = 0.5;

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Σₙ gₙ ∫₀^B dX X ∫ dΣ Ŵ(Σ) (X² + Σ²)ⁿ for n ≥ 1, given the even moments
/// M(m) = ∫ Ŵ(Σ) Σ^{2m} dΣ; the n = 0 term vanishes for a centred wire.
fn series_reduced(b: f64, moment: impl Fn(usize) -> f64) -> IntegralResult {
    let mut sum = 0.0;
    let mut last = 0.0;
    let mut evals = 0;
    for (n, &c) in G_SERIES.iter().enumerate().skip(1) {
        let mut t = 0.0;
        for k in 0..=n {
            t += binomial(n, k) * b.powi(2 * k as i32 + 2) / (2 * k + 2) as f64 * moment(n - k);
        }
        t *= c;
        sum += t;
        last = t.abs();
        evals += 1;
        if n >= 2 && last <= 1e-18 * sum.abs() {
            break;
        }
    }
    IntegralResult { value: sum, error_estimate: last + 4.0 * f64::EPSILON * sum.abs(), evaluations: evals, converged: true }
}

/// Ĵ(A, B) = ∫₀^{2A} dW ∫₀^B dX X (W − A) g(√(X² + W²)).
pub fn wrench_reduced_integral(a: f64, b: f64, quad: &QuadratureSpec) -> Result<IntegralResult> {
    if (2.0 * a).hypot(b) <= SERIES_RADIUS && a > 0.0 && b > 0.0 {
        // ∫₀^{2A} (W − A) W^{2m} dW
        let m = |m: usize| {
            let m2 = 2.0 * m as f64;
            (2.0 * a).powi(2 * m as i32 + 1) * a * m2 / ((m2 + 2.0) * (m2 + 1.0))
        };
        return Ok(series_reduced(b, m));
    }
    let p = Poly2::default().term(1, 1, 1.0).term(1, 0, -a);
    rect_kernel_integral(&p, (0.0, b), (0.0, 2.0 * a), quad)
}

/// Ĵ by plain two-level Cartesian quadrature, for cross-checks.
pub fn wrench_reduced_cartesian(a: f64, b: f64, quad: &QuadratureSpec) -> Result<IntegralResult> {
    let f = |p: &[f64]| p[0] * (p[1] - a) * g(p[0].hypot(p[1]));
    integrate_nested(&f, &[Limits::Fixed(0.0, b), Limits::Fixed(0.0, 2.0 * a)], quad)
}

/// Flag analogue of Ĵ with flag height H:
/// ∫₀^B dX X ∫_{−H}^{2A} dΣ Ŵ(Σ) g(√(X² + Σ²)), Ŵ(Σ) = ∫ y dy over the
/// wire points at offset Σ from the flag.
pub fn flags_reduced_integral(a: f64, b: f64, h: f64, quad: &QuadratureSpec) -> Result<IntegralResult> {
    if !(h > 0.0 && h <= 2.0 * a) {
        return Err(Error::Domain(format!("flag height {h} outside (0, 2a]")));
    }
    if b.hypot((2.0 * a).max(h)) <= SERIES_RADIUS && a > 0.0 && b > 0.0 {
        // ∫∫ y_w (y_w − y_f)^{2m} over the wire |y_w| < A and the flag
        // −A < y_f < −A + H; only odd powers of y_w survive
        let m = |m: usize| {
            let mut acc = 0.0;
            for j in (1..=2 * m).step_by(2) {
                let p = (2 * m - j) as i32;
                let wire = 2.0 * a.powi(j as i32 + 2) / (j + 2) as f64;
                let flag = (a.powi(p + 1) - (a - h).powi(p + 1)) / (p + 1) as f64;
                acc += binomial(2 * m, j) * wire * flag;
            }
            acc
        };
        return Ok(series_reduced(b, m));
    }
    let x = (0.0, b);
    let low = Poly2::default().term(1, 2, 0.5).term(1, 1, h - a).term(1, 0, 0.5 * ((h - a).powi(2) - a * a));
    let mid = Poly2::default().term(1, 1, h).term(1, 0, h * (0.5 * h - a));
    let high = Poly2::default().term(1, 2, -0.5).term(1, 1, a);
    let r1 = rect_kernel_integral(&low, x, (-h, 0.0), quad)?;
    let r2 = rect_kernel_integral(&mid, x, (0.0, 2.0 * a - h), quad)?;
    let r3 = rect_kernel_integral(&high, x, (2.0 * a - h, 2.0 * a), quad)?;
    Ok(r1.plus(r2).plus(r3))
}
