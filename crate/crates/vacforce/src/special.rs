//! Sine and cosine integrals.

use num_complex::Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 500;

/// `(Si(x), Ci(x))` for `x > 0`.
///
/// Power series below x = 2, continued fraction for E₁(ix) above.
pub fn sici(x: f64) -> (f64, f64) {
    debug_assert!(x > 0.0);
    if x > 2.0 {
        let mut b = Complex64::new(1.0, x);
        let mut c = Complex64::new(1.0 / FPMIN, 0.0);
        let mut d = Complex64::new(1.0, 0.0) / b;
        let mut h = d;
        for i in 2..MAXIT {
            let a = -(((i - 1) * (i - 1)) as f64);
            b += 2.0;
            d = Complex64::new(1.0, 0.0) / (d * a + b);
            c = b + c.inv() * a;
            let del = c * d;
            h *= del;
            if (del.re - 1.0).abs() + del.im.abs() < EPS {
                break;
            }
        }
        let h = Complex64::new(x.cos(), -x.sin()) * h;
        (std::f64::consts::FRAC_PI_2 + h.im, -h.re)
    } else if x < FPMIN.sqrt() {
        (x, EULER_GAMMA + x.ln())
    } else {
        let mut sum = 0.0;
        let mut sums = 0.0;
        let mut sumc = 0.0;
        let mut sign = 1.0;
        let mut fact = 1.0;
        let mut odd = true;
        let mut k = 1;
        loop {
            fact *= x / k as f64;
            let term = fact / k as f64;
            sum += sign * term;
            let err = term / sum.abs();
            if odd {
                sign = -sign;
                sums = sum;
                sum = sumc;
            } else {
                sumc = sum;
                sum = sums;
            }
            if err < EPS || k > MAXIT {
                break;
            }
            odd = !odd;
            k += 1;
        }
        (sums, sumc + x.ln() + EULER_GAMMA)
    }
}
