use std::sync::Arc;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use proptest::prelude::*;

use vacforce::constants::{Dimension, UnitSystem};
use vacforce::geometry::{i_ab, j_ab, wrench_moment_of_inertia, Shape, TwoPartBody};
use vacforce::greens::{grad_im_gamma_product, phi, phi_asymptotic, phi_direct, phi_unchecked, SERIES_SWITCH};
use vacforce::materials::{chi, drude_chi, x_product, MaterialModel, GOLD_NU, GOLD_OMEGA_P};
use vacforce::observables::torque_first_order;
use vacforce::quadrature::QuadratureSpec;
use vacforce::thermal::{occupation_diff, ThermalPair};

fn quick() -> QuadratureSpec {
    QuadratureSpec::default().with_rel_tol(1e-7)
}

proptest! {
    #[test]
    fn phi_small_argument_series(e in -6.0f64..-2.0) {
        let v = 10f64.powf(e);
        let series = -4.0 / 9.0 * v.powi(8) + 28.0 / 225.0 * v.powi(10);
        let got = phi(v).unwrap();
        prop_assert!((got - series).abs() <= 1e-6 * 4.0 / 9.0 * v.powi(8));
        prop_assert!(got < 0.0);
    }

    #[test]
    fn phi_large_argument_form(v in 100.0f64..1000.0) {
        prop_assert!((phi(v).unwrap() - phi_asymptotic(v)).abs() <= 9.0 * v.powi(3));
    }

    #[test]
    fn phi_branches_agree_near_switch(t in -0.1f64..0.1) {
        let v = SERIES_SWITCH * (1.0 + t);
        let (a, b) = (phi_unchecked(v), phi_direct(v));
        prop_assert!((a - b).abs() <= 1e-10 * b.abs(), "{} vs {}", a, b);
    }

    #[test]
    fn phi_negative_at_small_v(v in 1e-4f64..0.5) {
        prop_assert!(phi(v).unwrap() <= 0.0);
    }

    #[test]
    fn gradient_kernel_is_odd(x in -3.0f64..3.0, y in -3.0f64..3.0, z in -3.0f64..3.0, w in 0.01f64..5.0) {
        let r = Vector3::new(x, y, z);
        prop_assume!(r.norm() > 1e-3);
        let (p, m) = (grad_im_gamma_product(&r, w), grad_im_gamma_product(&-r, w));
        prop_assert!((p + m).norm() <= 1e-14 * p.norm());
        prop_assert!(p.cross(&r).norm() <= 1e-12 * p.norm() * r.norm());
    }

    #[test]
    fn units_round_trip(x in -1e30f64..1e30, k in 0usize..Dimension::ALL.len()) {
        let us = UnitSystem::SI;
        let d = Dimension::ALL[k];
        let back = us.from_natural(us.to_natural(x, d), d);
        prop_assert!((back - x).abs() <= 1e-12 * x.abs());
    }

    #[test]
    fn coth_identity(e in -6.0f64..1.0, t1 in 50.0f64..2000.0, t2 in 50.0f64..2000.0) {
        let w = 10f64.powf(e);
        let th = ThermalPair::new(t1, t2).unwrap();
        let coth = |x: f64| 1.0 / x.tanh();
        let want = 0.5 * (coth(th.beta * w / 2.0) - coth(th.beta_prime * w / 2.0));
        let got = occupation_diff(w, &th).unwrap();
        let scale = 0.5 * (coth(th.beta * w / 2.0).abs() + coth(th.beta_prime * w / 2.0).abs());
        prop_assert!((got - want).abs() <= 1e-12 * scale, "{} vs {}", got, want);
    }

    #[test]
    fn occupation_swap_antisymmetric(w in 1e-4f64..2.0, t1 in 50.0f64..2000.0, t2 in 50.0f64..2000.0) {
        let th = ThermalPair::new(t1, t2).unwrap();
        prop_assert_eq!(occupation_diff(w, &th).unwrap(), -occupation_diff(w, &th.swapped()).unwrap());
    }

    #[test]
    fn x_product_antisymmetric_and_bilinear(
        ar in -5.0f64..5.0, ai in -5.0f64..5.0, br in -5.0f64..5.0, bi in -5.0f64..5.0, l in -3.0f64..3.0,
    ) {
        let (a, b) = (Complex64::new(ar, ai), Complex64::new(br, bi));
        prop_assert_eq!(x_product(a, b), -x_product(b, a));
        prop_assert!((x_product(a * l, b) - l * x_product(a, b)).abs() <= 1e-13 * (1.0 + x_product(a, b).abs() * l.abs()));
    }

    #[test]
    fn drude_is_passive(w in 1e-4f64..50.0, wp in 0.5f64..20.0, nu in 1e-3f64..1.0) {
        let c = drude_chi(wp, nu, w);
        let want = wp * wp * nu / (w * (w * w + nu * nu));
        prop_assert!(c.im > 0.0);
        prop_assert!((c.im - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn first_order_torque_ignores_symmetric_part(s in prop::array::uniform6(-2.0f64..2.0)) {
        let th = ThermalPair::new(300.0, 500.0).unwrap();
        let toy = |w: f64| {
            let a = 1.0 / (1.0 + w * w);
            Ok(Matrix3::new(0.0, a, 0.0, -a, 0.0, 0.0, 0.0, 0.0, 0.0).map(|x| Complex64::new(x, 0.1 * x)))
        };
        let sym = Matrix3::new(s[0], s[3], s[4], s[3], s[1], s[5], s[4], s[5], s[2]).map(|x| Complex64::new(x, 0.0));
        let with_sym = |w: f64| toy(w).map(|m: Matrix3<Complex64>| m + sym);
        let q = quick();
        let a = torque_first_order(&toy, &th, &q).unwrap();
        let b = torque_first_order(&with_sym, &th, &q).unwrap();
        for k in 0..3 {
            prop_assert_eq!(a[k].value_natural, b[k].value_natural);
        }
    }

    #[test]
    fn moment_of_inertia_linear_in_density(
        a in 0.1f64..10.0, b in 0.1f64..10.0, ra in 0.1f64..10.0, rb in 0.1f64..10.0, k in 0.1f64..10.0,
    ) {
        let i1 = wrench_moment_of_inertia(a, b, 1.0, 2.0, ra, rb);
        let i2 = wrench_moment_of_inertia(a, b, 1.0, 2.0, k * ra, k * rb);
        prop_assert!((i2 - k * i1).abs() <= 1e-13 * i2);
        let thin = wrench_moment_of_inertia(a, 1e-12 * b, 1.0, 2.0, ra, rb);
        prop_assert!((thin - ra * 2.0 / 3.0 * a.powi(3)).abs() <= 1e-7 * thin);
    }
}

fn diel() -> MaterialModel {
    MaterialModel::dielectric(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn needle_material_swap_flips_spectrum(la in -1.0f64..2.0, lb in -1.0f64..2.0, w in 0.05f64..0.5) {
        let shape = Shape::Needle { a: 10f64.powf(la) / w, b: 10f64.powf(lb) / w, s: 1.0 };
        let body = TwoPartBody::new(shape, diel(), MaterialModel::gold()).unwrap();
        let q = quick();
        let i = i_ab(&body, w, &q).unwrap();
        let x = body.x_ab(w).unwrap();
        let xs = body.swapped_materials().x_ab(w).unwrap();
        prop_assert_eq!(x, -xs);
        prop_assert!(i.value != 0.0);
    }

    #[test]
    fn wrench_is_reflection_invariant(a in 0.1f64..30.0, b in 0.1f64..30.0) {
        let body = TwoPartBody::new(
            Shape::AllenWrench { a, b, s_a: 1.0, s_b: 1.0 },
            MaterialModel::gold(),
            diel(),
        )
        .unwrap();
        let q = quick();
        prop_assert_eq!(i_ab(&body, 1.0, &q).unwrap().value, 0.0);
        let j = j_ab(&body, 1.0, &q).unwrap();
        prop_assert_eq!(j[0].value, 0.0);
        prop_assert_eq!(j[1].value, 0.0);
        prop_assert!(j[2].value != 0.0);
    }
}

#[test]
fn blackbody_regulator_is_immaterial_at_thermal_frequencies() {
    let a = chi(&MaterialModel::BlackbodySurface { epsilon_reg: 1e-6 }, 0.03).unwrap();
    let b = chi(&MaterialModel::BlackbodySurface { epsilon_reg: 0.5e-6 }, 0.03).unwrap();
    assert!((a.im - b.im).abs() < 1e-8 * a.im);
    assert!((a.im - 1.0 / (4.0 * 0.03)).abs() < 1e-8 * a.im);
}

#[test]
fn gold_skin_depth_minimum_is_two_over_omega_p() {
    let gold = MaterialModel::gold();
    let d = vacforce::materials::skin_depth(&gold, GOLD_NU).unwrap();
    assert!((d - 2.0 / GOLD_OMEGA_P).abs() < 1e-12 * d);
    // tens of nanometres
    let nm = UnitSystem::SI.from_natural(d, Dimension::Length) * 1e9;
    assert!(nm > 10.0 && nm < 100.0, "{nm}");
}

#[test]
fn voxel_body_material_swap_flips_force_spectrum() {
    let cloud = vacforce::geometry::VoxelCloud::needle(2.0, 3.0, 0.5, 40);
    let body = TwoPartBody::new(Shape::Voxelized(Arc::new(cloud)), diel(), MaterialModel::gold()).unwrap();
    let q = quick();
    let th = ThermalPair::new(300.0, 600.0).unwrap();
    let w = 0.1;
    let f = vacforce::observables::force_spectrum(&body, w, &th, &q).unwrap().value;
    let g = vacforce::observables::force_spectrum(&body.swapped_materials(), w, &th, &q).unwrap().value;
    assert!(f != 0.0);
    assert_eq!(f, -g);
}
