//! Scalar kernels of the vacuum Green's dyadic.
//!
//! The force and torque integrands only need the contracted gradient
//! ½∇[Im Γ_ji(−R) Im Γ_ij(R)] = R φ(ωR) / (16π² R⁸), with
//!
//! φ(v) = −9 − 2v² − v⁴ + (9 − 16v² + 3v⁴) cos 2v + v(18 − 8v² + v⁴) sin 2v.
//!
//! φ ~ −(4/9)v⁸ near the origin, so seven leading digits cancel in the
//! closed form; below v = 1 everything goes through the Taylor series of
//! g(v) = φ(v)/v⁸ instead. The radial moments M_k(V) = ∫₀^V v^k g(v) dv
//! (k ≤ 4) have closed forms in Si and Ci, which lets thin-structure
//! integrals be done analytically in the radial direction.

use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::special::sici;

/// Taylor coefficients of g(v) = φ(v)/v⁸ in powers of v².
pub(crate) const G_SERIES: [f64; 34] = [
    -0.444_444_444_444_444_4,
    0.124_444_444_444_444_44,
    -0.013_968_253_968_253_968,
    0.000_859_998_320_315_780_7,
    -3.359_368_438_733_518e-5,
    9.083_606_967_204_851e-7,
    -1.802_800_156_709_621_6e-8,
    2.739_580_276_543_434_3e-10,
    -3.291_257_769_302_753e-12,
    3.205_335_637_875_522_6e-14,
    -2.582_216_250_406_813e-16,
    1.749_607_512_358_494e-18,
    -1.011_036_949_824_713_6e-20,
    5.042_132_946_896_801_7e-23,
    -2.192_343_037_808_526_7e-25,
    8.384_937_729_442_266e-28,
    -2.842_945_027_932_42e-30,
    8.604_109_782_470_074e-33,
    -2.338_723_258_760_414e-35,
    5.740_887_838_338_458e-38,
    -1.278_981_878_579_312_7e-40,
    2.597_713_808_461_386_4e-43,
    -4.829_942_654_006_538e-46,
    8.251_760_909_786_76e-49,
    -1.299_876_985_668_665_3e-51,
    1.894_036_170_932_014_4e-54,
    -2.560_235_619_729_494e-57,
    3.219_287_244_816_217e-60,
    -3.775_088_423_752_273e-63,
    4.138_158_091_845_537_5e-66,
    -4.249_690_771_342_964e-69,
    4.097_083_852_303_075e-72,
    -3.715_364_698_927_924_7e-75,
    3.174_890_182_545_321e-78,
];

/// Below this v the series is used for φ and g.
pub const SERIES_SWITCH: f64 = 1.0;

/// Above this V the radial moments use the Si/Ci antiderivatives.
const MOMENT_SWITCH: f64 = 2.0;

const INV_16PI2: f64 = 1.0 / (16.0 * PI * PI);

fn g_series(v: f64) -> f64 {
    let x = v * v;
    G_SERIES.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn phi_closed(v: f64) -> f64 {
    let v2 = v * v;
    let v4 = v2 * v2;
    let (s, c) = (2.0 * v).sin_cos();
    -9.0 - 2.0 * v2 - v4 + (9.0 - 16.0 * v2 + 3.0 * v4) * c + v * (18.0 - 8.0 * v2 + v4) * s
}

/// φ(v) for finite v ≥ 0.
pub fn phi(v: f64) -> Result<f64> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::Domain(format!("phi needs finite v >= 0, got {v}")));
    }
    Ok(phi_unchecked(v))
}

pub fn phi_unchecked(v: f64) -> f64 {
    if v < SERIES_SWITCH {
        let v2 = v * v;
        let v8 = v2 * v2 * v2 * v2;
        v8 * g_series(v)
    } else {
        phi_closed(v)
    }
}

/// The closed form without the series branch (for crossover checks).
pub fn phi_direct(v: f64) -> f64 {
    phi_closed(v)
}

/// g(v) = φ(v)/v⁸, finite at the origin where it equals −4/9.
pub fn g(v: f64) -> f64 {
    let v = v.abs();
    if v < SERIES_SWITCH {
        g_series(v)
    } else {
        let v2 = v * v;
        let v4 = v2 * v2;
        phi_closed(v) / (v4 * v4)
    }
}

/// Large-v form −v⁴ + v⁵ sin 2v + 3v⁴ cos 2v.
pub fn phi_asymptotic(v: f64) -> f64 {
    let v4 = v.powi(4);
    let (s, c) = (2.0 * v).sin_cos();
    -v4 + v4 * v * s + 3.0 * v4 * c
}

/// ½∇[Im Γ_ji(−R;ω) Im Γ_ij(R;ω)] = R φ(ωR)/(16π² R⁸).
///
/// Evaluated as R ω⁸ g(ωR)/(16π²), which is finite (zero) at R = 0.
pub fn grad_im_gamma_product(r: &Vector3<f64>, omega: f64) -> Vector3<f64> {
    let w2 = omega * omega;
    let w8 = w2 * w2 * w2 * w2;
    r * (w8 * g(omega * r.norm()) * INV_16PI2)
}

/// Identity coefficient of Im Γ at coincident points, ω³/(6π).
pub fn im_gamma_coincident(omega: f64) -> f64 {
    omega.powi(3) / (6.0 * PI)
}

fn series_moment(k: usize, v: f64) -> f64 {
    let x = v * v;
    let mut acc = 0.0;
    for (n, &c) in G_SERIES.iter().enumerate().rev() {
        acc = acc * x + c / (2 * n + k + 1) as f64;
    }
    acc * v.powi(k as i32 + 1)
}

/// Antiderivatives F_k with F_k' = v^k g(v), all five at once.
fn antiderivatives(v: f64) -> [f64; 5] {
    let (si, ci) = sici(2.0 * v);
    let (s, c) = (2.0 * v).sin_cos();
    let i1 = 1.0 / v;
    let i2 = i1 * i1;
    let i3 = i2 * i1;
    let i4 = i2 * i2;
    let i5 = i4 * i1;
    let i6 = i3 * i3;
    let i7 = i6 * i1;
    let f0 = -46.0 * si / 105.0 - 23.0 * c * i1 / 105.0 - 23.0 * s * i2 / 210.0
        - 41.0 * c * i3 / 105.0
        + i3 / 3.0
        + 32.0 * s * i4 / 35.0
        + 76.0 * c * i5 / 35.0
        + 2.0 * i5 / 5.0
        - 18.0 * s * i6 / 7.0
        - 9.0 * c * i7 / 7.0
        + 9.0 * i7 / 7.0;
    let f1 = -c * i2 / 2.0 + i2 / 2.0 + s * i3 + 5.0 * c * i4 / 2.0 + i4 / 2.0 - 3.0 * s * i5
        - 3.0 * c * i6 / 2.0
        + 3.0 * i6 / 2.0;
    let f2 = -11.0 * si / 15.0 - 13.0 * c * i1 / 15.0 + i1 + 16.0 * s * i2 / 15.0
        + 44.0 * c * i3 / 15.0
        + 2.0 * i3 / 3.0
        - 18.0 * s * i4 / 5.0
        - 9.0 * c * i5 / 5.0
        + 9.0 * i5 / 5.0;
    let f3 = -v.ln() - c / 2.0 + ci + s * i1 + 7.0 * c * i2 / 2.0 + i2 - 9.0 * s * i3 / 2.0
        - 9.0 * c * i4 / 4.0
        + 9.0 * i4 / 4.0;
    let f4 = -v * c / 2.0 - v + 7.0 * s / 4.0 + 4.0 * c * i1 + 2.0 * i1 - 6.0 * s * i2
        - 3.0 * c * i3
        + 3.0 * i3;
    [f0, f1, f2, f3, f4]
}

fn moment_offsets() -> &'static [f64; 5] {
    use std::sync::OnceLock;
    static OFFSETS: OnceLock<[f64; 5]> = OnceLock::new();
    OFFSETS.get_or_init(|| {
        let f = antiderivatives(MOMENT_SWITCH);
        std::array::from_fn(|k| series_moment(k, MOMENT_SWITCH) - f[k])
    })
}

/// All radial moments M_0..M_4 at V ≥ 0.
pub fn radial_moments(v: f64) -> [f64; 5] {
    debug_assert!(v >= 0.0);
    if v <= MOMENT_SWITCH {
        std::array::from_fn(|k| series_moment(k, v))
    } else {
        let f = antiderivatives(v);
        let off = moment_offsets();
        std::array::from_fn(|k| f[k] + off[k])
    }
}

/// M_k(V) = ∫₀^V v^k g(v) dv for k ≤ 4.
pub fn radial_moment(k: usize, v: f64) -> f64 {
    assert!(k <= 4, "radial moments are provided for k <= 4");
    if v <= MOMENT_SWITCH {
        series_moment(k, v)
    } else {
        radial_moments(v)[k]
    }
}

/// M_k(∞) where it exists (k ≤ 2); M_3 and M_4 grow like −ln V and −V.
pub fn radial_moment_limit(k: usize) -> Option<f64> {
    match k {
        0 => Some(moment_offsets()[0] - 23.0 * PI / 105.0),
        1 => Some(-2.0 / 3.0),
        2 => Some(-11.0 * PI / 30.0),
        _ => None,
    }
}
