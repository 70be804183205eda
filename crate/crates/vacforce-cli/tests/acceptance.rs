//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Criteria 3 and 7 are known to fail (see EXPECTED_RED); the process exits
//! nonzero only when the set of failing criteria differs from that list.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::Matrix3;
use num_complex::Complex64;

use vacforce::constants::{Dimension, UnitSystem};
use vacforce::dynamics::{terminal_velocity_cooling, terminal_velocity_time_domain, Drive, KinematicScenario};
use vacforce::geometry::{
    i_ab, janus_reduced_integral, janus_reduced_nested, janus_scaled_integral, shell_power_law_fit,
    wrench_reduced_integral, JanusEngine, Shape, TwoPartBody, VoxelCloud,
};
use vacforce::greens::{phi, phi_asymptotic};
use vacforce::materials::MaterialModel;
use vacforce::observables::{force_z, torque_first_order, torque_second_order};
use vacforce::quadrature::{
    integrate_1d, integrate_mc, integrate_nested, integrate_semi_infinite, BoxRegion, HalfBallSlab, InfiniteMethod,
    IntegralResult, Limits, ProductRegion, QuadratureSpec, Region,
};
use vacforce::thermal::{radiated_power, ThermalPair, GOLD_NUMBER_DENSITY_M3};
use vacforce_cli::config::{Config, Part};
use vacforce_cli::output::csv;
use vacforce_cli::{execute, scenario_shape, with_threads, Report, ScenarioName};

const EXPECTED_RED: [u8; 2] = [3, 7];

// criterion 1
const PHI_SERIES_REL: f64 = 1e-6;
const PHI_LARGE_C: f64 = 9.0;
// criterion 3
const SHELL_N: f64 = -27.0;
const SHELL_N_REL: f64 = 0.10;
// criterion 4
const JANUS_SMALL_SLOPE: (f64, f64) = (8.0, 0.2);
const JANUS_LARGE_SLOPE: (f64, f64) = (4.0, 0.3);
const JANUS_MC_SAMPLES: u64 = 2_000_000;
// criterion 5
const WRENCH_LARGE_BAND: (f64, f64) = (0.95, 1.05);
const WRENCH_SMALL_REL: f64 = 0.02;
// criterion 6
const STEFAN_REL: f64 = 1e-3;
const STEFAN_EPS_SHIFT: f64 = 1e-4;
// criterion 7
const PREFACTOR_FACTOR: f64 = 3.0;
// criterion 9
const VOXEL_REL: f64 = 0.01;
const MC_SIGMAS: f64 = 3.0;
const KINEMATIC_REL: f64 = 0.01;
// criterion 10
const HONESTY_SIGMAS: f64 = 3.0;
const HONESTY_FRACTION: f64 = 0.95;

struct Outcome {
    pass: bool,
    detail: String,
}

type Check = fn() -> anyhow::Result<Outcome>;

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, Duration, Check); 10] = [
        (1, "phi-kernel asymptotics", secs(1), c1_phi),
        (2, "null suite", secs(1), c2_nulls),
        (3, "shell power law N", secs(300), c3_shell),
        (4, "Janus-ball scaling slopes", secs(900), c4_janus),
        (5, "wrench asymptotes", secs(120), c5_wrench),
        (6, "Stefan's law", secs(10), c6_stefan),
        (7, "dimensionful prefactors", secs(600), c7_prefactors),
        (8, "force toward the metal side", secs(300), c8_signs),
        (9, "oracle equivalence", secs(600), c9_oracles),
        (10, "integrator honesty and determinism", secs(300), c10_honesty),
    ];
    let mut red = Vec::new();
    for (id, title, limit, check) in criteria {
        let t = Instant::now();
        let out = check();
        let dt = t.elapsed();
        let (pass, detail) = match out {
            Ok(o) => (o.pass && dt <= limit, o.detail),
            Err(e) => (false, format!("error: {e:#}")),
        };
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("{tag} {id:>2} {title} [{:.1} s / {} s] {detail}", dt.as_secs_f64(), limit.as_secs());
        if !pass {
            red.push(id);
        }
    }
    let unexpected: Vec<u8> = red.iter().copied().filter(|id| !EXPECTED_RED.contains(id)).collect();
    let recovered: Vec<u8> = EXPECTED_RED.iter().copied().filter(|id| !red.contains(id)).collect();
    println!("failing: {red:?}; expected to fail: {EXPECTED_RED:?}");
    if !recovered.is_empty() {
        println!("now passing although listed as expected failures: {recovered:?}");
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

fn c1_phi() -> anyhow::Result<Outcome> {
    let mut worst_series: f64 = 0.0;
    for v in log_grid(1e-6, 1e-2, 401) {
        let series = -4.0 / 9.0 * v.powi(8) + 28.0 / 225.0 * v.powi(10);
        worst_series = worst_series.max((phi(v)? / series - 1.0).abs());
    }
    let mut worst_c: f64 = 0.0;
    for v in log_grid(1e2, 1e3, 401) {
        worst_c = worst_c.max((phi(v)? - phi_asymptotic(v)).abs() / v.powi(3));
    }
    Ok(Outcome {
        pass: worst_series <= PHI_SERIES_REL && worst_c <= PHI_LARGE_C,
        detail: format!("max series deviation {worst_series:.2e} (<= {PHI_SERIES_REL:.0e}); max |phi - large-v form|/v^3 = {worst_c:.3} (<= {PHI_LARGE_C})"),
    })
}

fn quick() -> QuadratureSpec {
    QuadratureSpec::default().with_rel_tol(1e-6)
}

fn toy_alpha(w: f64) -> vacforce::Result<Matrix3<Complex64>> {
    let a = 1.0 / (1.0 + w * w);
    Ok(Matrix3::new(0.0, a, 0.0, -a, 0.0, 0.0, 0.0, 0.0, 0.0).map(|x| Complex64::new(x, 0.0)))
}

fn c2_nulls() -> anyhow::Result<Outcome> {
    let q = quick();
    let eq = ThermalPair::new(300.0, 300.0)?;
    let hot = ThermalPair::new(300.0, 600.0)?;
    let gold = MaterialModel::gold;
    let diel = || MaterialModel::dielectric(1.0);
    let needle = |a: MaterialModel, b: MaterialModel| TwoPartBody::new(Shape::Needle { a: 20.0, b: 20.0, s: 1e-2 }, a, b);
    let wrench = |a: MaterialModel, b: MaterialModel| {
        TwoPartBody::new(Shape::AllenWrench { a: 5.0, b: 5.0, s_a: 0.2, s_b: 0.2 }, a, b)
    };
    let iso = |w: f64| Ok(Matrix3::from_diagonal_element(Complex64::new(1.0 / (1.0 + w * w), 0.3)));
    let values = [
        ("T = T' force", force_z(&needle(diel(), gold())?, &eq, &q)?.value),
        ("T = T' torque", torque_second_order(&wrench(gold(), diel())?, &eq, &q)?[2].value),
        ("T = T' first-order torque", torque_first_order(&toy_alpha, &eq, &q)?[2].value),
        ("A = B force", force_z(&needle(gold(), gold())?, &hot, &q)?.value),
        ("A = B torque", torque_second_order(&wrench(gold(), gold())?, &hot, &q)?[2].value),
        ("real chi force", force_z(&needle(diel(), MaterialModel::dielectric(3.0))?, &hot, &q)?.value),
        ("real chi torque", torque_second_order(&wrench(diel(), MaterialModel::dielectric(3.0))?, &hot, &q)?[2].value),
        ("isotropic alpha", torque_first_order(&iso, &hot, &q)?.iter().map(|o| o.value.abs()).sum()),
    ];
    let bad: Vec<&str> = values.iter().filter(|(_, v)| *v != 0.0).map(|(n, _)| *n).collect();
    // the hot asymmetric case must not vanish, or the zeros above mean nothing
    let live = force_z(&needle(diel(), gold())?, &hot, &q)?.value;
    Ok(Outcome {
        pass: bad.is_empty() && live != 0.0,
        detail: if bad.is_empty() {
            format!("{} exact zeros; control force {live:.3e} N", values.len())
        } else {
            format!("nonzero: {bad:?}")
        },
    })
}

fn c3_shell() -> anyhow::Result<Outcome> {
    let n = shell_power_law_fit(20.0, 100.0, 81);
    Ok(Outcome {
        pass: (n / SHELL_N - 1.0).abs() <= SHELL_N_REL,
        detail: format!("fitted N = {n:.3} over wa in [20, 100], want {SHELL_N} +- {:.0}%", SHELL_N_REL * 100.0),
    })
}

fn slope(engine: JanusEngine, lo: f64, hi: f64, q: &QuadratureSpec) -> anyhow::Result<f64> {
    let a = janus_scaled_integral(lo, engine, q)?.value;
    let b = janus_scaled_integral(hi, engine, q)?.value;
    Ok((b / a).abs().ln() / (hi / lo).ln())
}

fn c4_janus() -> anyhow::Result<Outcome> {
    let q = QuadratureSpec::default().with_rel_tol(1e-8);
    let mc = QuadratureSpec::default().with_samples(JANUS_MC_SAMPLES);
    let within = |s: f64, (want, tol): (f64, f64)| (s - want).abs() <= tol;
    let ps = slope(JanusEngine::NestedProfile, 0.01, 0.1, &q)?;
    let pl = slope(JanusEngine::NestedProfile, 20.0, 100.0, &q)?;
    let ms = slope(JanusEngine::MonteCarlo, 0.01, 0.1, &mc)?;
    let ml = slope(JanusEngine::MonteCarlo, 20.0, 100.0, &mc)?;
    Ok(Outcome {
        pass: within(ps, JANUS_SMALL_SLOPE)
            && within(ms, JANUS_SMALL_SLOPE)
            && within(pl, JANUS_LARGE_SLOPE)
            && within(ml, JANUS_LARGE_SLOPE),
        detail: format!(
            "slope wa 0.01-0.1: {ps:.4} (profile) {ms:.4} (MC); wa 20-100: {pl:.4} (profile) {ml:.4} (MC, {JANUS_MC_SAMPLES} samples)"
        ),
    })
}

fn c5_wrench() -> anyhow::Result<Outcome> {
    let q = QuadratureSpec::default().with_rel_tol(1e-8);
    let big = wrench_reduced_integral(100.0, 100.0, &q)?.value / (11.0 * PI * 100.0 / 30.0);
    let x: f64 = 0.01;
    let small = wrench_reduced_integral(x, x, &q)?.value / (56.0 * x.powi(6) / 675.0);
    Ok(Outcome {
        pass: (WRENCH_LARGE_BAND.0..=WRENCH_LARGE_BAND.1).contains(&big) && (small - 1.0).abs() <= WRENCH_SMALL_REL,
        detail: format!("J/(11 pi wa/30) at wa = 100: {big:.4}; J/(56 A^4 B^2/675) at 0.01: {small:.6}"),
    })
}

fn c6_stefan() -> anyhow::Result<Outcome> {
    let q = QuadratureSpec::default().with_rel_tol(1e-9);
    let th = ThermalPair::new(300.0, 600.0)?;
    let s = 1e5;
    let power = |eps: f64| -> anyhow::Result<f64> {
        let bb = MaterialModel::BlackbodySurface { epsilon_reg: eps };
        let alpha = |w: f64| Ok(Matrix3::from_diagonal_element(vacforce::materials::chi(&bb, w)? * s));
        Ok(radiated_power(&alpha, &th, &q)?.natural.value)
    };
    let want = s * PI * PI * (th.t_env().powi(4) - th.t_body().powi(4)) / 60.0;
    let p = power(1e-6)?;
    let shift = (power(0.5e-6)? / p - 1.0).abs();
    let rel = (p / want - 1.0).abs();
    Ok(Outcome {
        pass: rel <= STEFAN_REL && shift <= STEFAN_EPS_SHIFT,
        detail: format!("|P/P_Stefan - 1| = {rel:.2e}; regulator-halving shift {shift:.2e}"),
    })
}

fn scalar(r: &Report, name: &str) -> anyhow::Result<f64> {
    r.scalar(name).map(|s| s.value).ok_or_else(|| anyhow::anyhow!("{name} missing from {}", r.scenario))
}

fn c7_prefactors() -> anyhow::Result<Outcome> {
    let run = |text: &str| execute(&Config::parse(text).map_err(anyhow::Error::msg)?);
    let plate = run("scenario = \"plate\"\n")?;
    let large = run("scenario = \"wrench-large\"\n")?;
    let small = run("scenario = \"wrench-small\"\n[wrench-small]\nfull_torque = false\n")?;
    let janus = run("scenario = \"janus-ball\"\n[janus-ball]\nradius_m = 1e-7\n")?;
    let needle = run("scenario = \"needle\"\n[needle]\nradius_m = 1e-8\n")?;
    let year = 365.25 * 86400.0;
    let rows = [
        ("plate prefactor [N]", scalar(&plate, "force_prefactor")?, 4e-13),
        ("wrench tau0 [N m]", scalar(&large, "tau0")?, 7e-22),
        ("t_c [s]", scalar(&large, "t_c")?, 1e-4),
        ("small-wrench omega_T prefactor [1/s]", scalar(&small, "omega_terminal_prefactor")?, 2e-7),
        ("omega_hat_T(u0 = 2)", scalar(&small, "omega_hat_terminal")?.abs(), 2e4),
        ("omega_T [1/s]", scalar(&small, "omega_terminal")?.abs(), 4e-3),
        ("Janus v_T [m/s]", scalar(&janus, "cooling_v_terminal")?.abs(), 1e-10),
        ("needle friction v_T [m/s]", scalar(&needle, "friction_v_terminal")?.abs(), 5.0),
        ("needle t0 [yr]", scalar(&needle, "friction_t0")? / year, 15.0),
        ("needle F_hat", scalar(&needle, "force_reduced")?.abs(), 1e18),
    ];
    let mut bad = Vec::new();
    let mut detail = Vec::new();
    for (name, got, want) in rows {
        let ratio = got / want;
        let ok = ratio >= 1.0 / PREFACTOR_FACTOR && ratio <= PREFACTOR_FACTOR;
        if !ok {
            bad.push(name);
        }
        detail.push(format!("{name} {got:.3e} (x{ratio:.2})"));
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!("{}; outside factor {PREFACTOR_FACTOR}: {bad:?}", detail.join(", ")),
    })
}

fn c8_signs() -> anyhow::Result<Outcome> {
    let mut bad = Vec::new();
    let mut n = 0;
    for (s, extra) in [
        (ScenarioName::Needle, ""),
        (ScenarioName::Shell, ""),
        (ScenarioName::JanusBall, ""),
        (ScenarioName::Plate, ""),
        (ScenarioName::Voxel, "[voxel]\na_m = 2e-6\nb_m = 2e-6\n"),
    ] {
        for metal in [Part::A, Part::B] {
            for (te, tb) in [(300.0, 600.0), (600.0, 300.0)] {
                let text = format!(
                    "scenario = \"{s}\"\n[thermal]\nt_env_k = {te:.1}\nt_body_k = {tb:.1}\n[materials]\nmetal_part = \"{}\"\n{extra}",
                    if metal == Part::A { "A" } else { "B" }
                );
                let mut cfg = Config::parse(&text).map_err(anyhow::Error::msg)?;
                cfg.output.json = false;
                let body = vacforce_cli::scenarios::body(&cfg)?;
                let th = ThermalPair::new(te, tb)?;
                let f = force_z(&body, &th, &cfg.resolved().quadrature.spec())?.value;
                // metal on the z < 0 side pulls the body toward negative z when it is hot
                let toward_metal = if metal == Part::B { -1.0 } else { 1.0 };
                let hot = if tb > te { 1.0 } else { -1.0 };
                n += 1;
                if f.signum() != toward_metal * hot || f == 0.0 {
                    bad.push(format!("{s} metal {metal:?} T'={tb}: {f:.3e}"));
                }
            }
        }
        let _ = scenario_shape(s);
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{n} cases: force toward the metal for T' > T, reversed by either swap")
        } else {
            format!("wrong sign: {bad:?}")
        },
    })
}

fn c9_oracles() -> anyhow::Result<Outcome> {
    let q = QuadratureSpec::default().with_rel_tol(1e-8);
    let (a, s) = (10.0, 1e-2);
    let analytic = TwoPartBody::new(Shape::Needle { a, b: a, s }, MaterialModel::dielectric(1.0), MaterialModel::gold())?;
    let cloud = VoxelCloud::needle(a, a, s, 400);
    let voxel = TwoPartBody::new(Shape::Voxelized(cloud.into()), MaterialModel::dielectric(1.0), MaterialModel::gold())?;
    let mut voxel_worst: f64 = 0.0;
    for w in [0.05, 0.2, 1.0] {
        let x = i_ab(&analytic, w, &q)?.value;
        let y = i_ab(&voxel, w, &q)?.value;
        voxel_worst = voxel_worst.max((y / x - 1.0).abs());
    }

    let mc = QuadratureSpec::default().with_samples(1_000_000);
    let mut z_worst: f64 = 0.0;
    for x in [0.5, 2.0, 8.0] {
        let m = janus_reduced_integral(x, JanusEngine::MonteCarlo, &mc)?;
        let n = janus_reduced_nested(x, &QuadratureSpec::default().with_rel_tol(1e-7))?;
        let comb = m.error_estimate.hypot(n.error_estimate);
        z_worst = z_worst.max((m.value - n.value).abs() / comb);
    }

    let to_natural = |x: f64, d| UnitSystem::SI.to_natural(x, d);
    let body = TwoPartBody::new(
        Shape::JanusBall { a: to_natural(1e-7, Dimension::Length), engine: JanusEngine::NestedProfile },
        MaterialModel::dielectric(1.0),
        MaterialModel::gold(),
    )?
    .with_densities(to_natural(2200.0, Dimension::MassDensity), to_natural(19300.0, Dimension::MassDensity));
    let sc = KinematicScenario {
        body,
        thermal0: ThermalPair::new(300.0, 600.0)?,
        drive: Drive::Force,
        number_density: to_natural(GOLD_NUMBER_DENSITY_M3, Dimension::NumberDensity),
    };
    let kq = quick();
    let u = terminal_velocity_cooling(&sc, &kq)?.si;
    let t = terminal_velocity_time_domain(&sc, &kq)?.si;
    let kin = (t / u - 1.0).abs();
    Ok(Outcome {
        pass: voxel_worst <= VOXEL_REL && z_worst <= MC_SIGMAS && kin <= KINEMATIC_REL,
        detail: format!(
            "voxel/analytic needle worst {voxel_worst:.2e}; Janus MC vs nested worst {z_worst:.2} sigma; v_T time domain vs u-substitution {kin:.2e}"
        ),
    })
}

fn bose(x: f64, k: i32) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.powi(k) / x.exp_m1()
    }
}

struct Case {
    got: IntegralResult,
    truth: f64,
}

fn case(r: vacforce::Result<IntegralResult>, truth: f64) -> anyhow::Result<Case> {
    Ok(Case { got: r?, truth })
}

fn battery() -> anyhow::Result<Vec<(&'static str, Vec<Case>)>> {
    let q = QuadratureSpec::default().with_rel_tol(1e-8);
    let e = std::f64::consts::E;
    let one = |f: fn(f64) -> f64, a: f64, b: f64, t: f64| case(integrate_1d(f, a, b, &q), t);
    let finite = vec![
        one(|x| x.powi(5), 0.0, 1.0, 1.0 / 6.0)?,
        one(f64::sin, 0.0, PI, 2.0)?,
        one(f64::exp, 0.0, 1.0, e - 1.0)?,
        one(|x| 1.0 / (1.0 + x * x), 0.0, 1.0, PI / 4.0)?,
        one(f64::sqrt, 0.0, 1.0, 2.0 / 3.0)?,
        one(f64::ln, 0.0, 1.0, -1.0)?,
        one(|x| 1.0 / x.sqrt(), 0.0, 1.0, 2.0)?,
        one(|x| 1.0 / (1.0 + 25.0 * x * x), 0.0, 1.0, 5f64.atan() / 5.0)?,
        one(|x| (-x / 10.0).exp() * x.sin(), 0.0, 50.0, {
            let a: f64 = 0.1;
            (1.0 - (-a * 50.0).exp() * (a * 50f64.sin() + 50f64.cos())) / (1.0 + a * a)
        })?,
        one(|x| (20.0 * x).cos().powi(2), 0.0, PI, PI / 2.0)?,
    ];
    let inf = |f: fn(f64) -> f64, t: f64| case(integrate_semi_infinite(f, 0.0, 1.0, InfiniteMethod::Map, &q), t);
    let semi = vec![
        inf(|x| (-x).exp(), 1.0)?,
        inf(|x| bose(x, 3), PI.powi(4) / 15.0)?,
        inf(|x| bose(x, 1), PI * PI / 6.0)?,
        inf(|x| 1.0 / (1.0 + x * x), PI / 2.0)?,
        inf(|x| x * (-x * x).exp(), 0.5)?,
        inf(|x| (-x).exp() * x.cos(), 0.5)?,
        inf(|x| bose(x, 5), 8.0 * PI.powi(6) / 63.0)?,
        inf(|x| 1.0 / (1.0 + x).powi(2), 1.0)?,
        inf(|x| x * x * (-2.0 * x).exp(), 0.25)?,
        inf(|x| x.sqrt() * (-x).exp(), PI.sqrt() / 2.0)?,
    ];
    let unit = |d: usize| (0..d).map(|_| Limits::Fixed(0.0, 1.0)).collect::<Vec<_>>();
    let nest = |f: &(dyn Fn(&[f64]) -> f64 + Sync), l: &[Limits], t: f64| case(integrate_nested(f, l, &q), t);
    let upto_x = |p: &[f64]| (0.0, p[0]);
    let disc = |p: &[f64]| {
        let h = (1.0 - p[0] * p[0]).max(0.0).sqrt();
        (-h, h)
    };
    let nested = vec![
        nest(&|p| p[0] * p[1], &unit(2), 0.25)?,
        nest(&|p| (p[0] + p[1]).exp(), &unit(2), (e - 1.0).powi(2))?,
        nest(&|p| p[0], &[Limits::Fixed(0.0, 1.0), Limits::Dependent(&upto_x)], 1.0 / 3.0)?,
        nest(&|p| p[0] * p[1] * p[2], &unit(3), 0.125)?,
        nest(&|p| (p[0] + p[1]).sin(), &[Limits::Fixed(0.0, PI / 2.0), Limits::Fixed(0.0, PI / 2.0)], 2.0)?,
        nest(&|p| 1.0 / (1.0 + p[0] + p[1]), &unit(2), 3.0 * 3f64.ln() - 4.0 * 2f64.ln())?,
        nest(&|_| 1.0, &[Limits::Fixed(-1.0, 1.0), Limits::Dependent(&disc)], PI)?,
        nest(&|p| p[0] * p[0] + p[1] * p[1], &unit(2), 2.0 / 3.0)?,
        nest(&|p| (-(p[0] + p[1] + p[2])).exp(), &unit(3), (1.0 - 1.0 / e).powi(3))?,
        nest(&|p| p[1], &[Limits::Fixed(0.0, 1.0), Limits::Dependent(&upto_x)], 1.0 / 6.0)?,
    ];
    let m = QuadratureSpec::default().with_samples(200_000).with_seed(2024);
    let cube = |d: usize| BoxRegion::new(vec![0.0; d], vec![1.0; d]);
    let (c2, c3, c6) = (cube(2), cube(3), cube(6));
    let up = HalfBallSlab::new(1.0, 0.0, 1.0);
    let down = HalfBallSlab::new(1.0, -1.0, 0.0);
    let pair = ProductRegion { a: up, b: down };
    let mc = |f: &(dyn Fn(&[f64]) -> f64 + Sync), r: &dyn Region, t: f64| case(integrate_mc(f, &[r], &m), t);
    let monte = vec![
        mc(&|p| p.iter().sum(), &c6, 3.0)?,
        mc(&|p| p[0] * p[3], &c6, 0.25)?,
        mc(&|p| p[2], &up, PI / 4.0)?,
        mc(&|p| p[2] - p[5], &pair, PI * PI / 3.0)?,
        mc(&|p| (-p.iter().sum::<f64>()).exp(), &c6, (1.0 - 1.0 / e).powi(6))?,
        mc(&|p| p[0] * p[0], &c3, 1.0 / 3.0)?,
        mc(&|p| (PI * p[0]).sin(), &c2, 2.0 / PI)?,
        mc(&|p| (p[0] - p[1]).abs(), &c2, 1.0 / 3.0)?,
        mc(&|p| (p[0] + p[1]).powi(2), &c2, 7.0 / 6.0)?,
        mc(&|p| p[0] * p[0] + p[1] * p[1] + p[2] * p[2], &up, 2.0 * PI / 5.0)?,
    ];
    Ok(vec![("finite", finite), ("semi-infinite", semi), ("nested", nested), ("monte-carlo", monte)])
}

fn c10_honesty() -> anyhow::Result<Outcome> {
    let mut total = 0;
    let mut honest = 0;
    let mut misses = Vec::new();
    for (engine, cases) in battery()? {
        for (i, c) in cases.iter().enumerate() {
            total += 1;
            let err = (c.got.value - c.truth).abs();
            if err <= HONESTY_SIGMAS * c.got.error_estimate {
                honest += 1;
            } else {
                misses.push(format!("{engine}#{i} ({err:.1e} vs est {:.1e})", c.got.error_estimate));
            }
        }
    }
    let fraction = honest as f64 / total as f64;

    let mc_sweep = "scenario = \"janus-ball\"\n[quadrature]\nmc_samples = 50000\nseed = 11\n[janus-ball]\nengine = \"monte-carlo\"\n[sweep]\nvariable = \"omega_a\"\nvalues = [0.5, 5.0, 50.0]\n";
    let plate = "scenario = \"plate\"\n[sweep]\nvariable = \"t_ratio\"\nfrom = 0.5\nto = 3.0\npoints = 11\n";
    let mut identical = true;
    for text in [mc_sweep, plate] {
        let c = Config::parse(text).map_err(anyhow::Error::msg)?.resolved();
        let outs = [1, 4, 16]
            .iter()
            .map(|&n| Ok(csv(&c, &with_threads(n, || execute(&c))??)))
            .collect::<anyhow::Result<Vec<String>>>()?;
        identical &= outs.iter().all(|o| *o == outs[0]);
    }
    Ok(Outcome {
        pass: fraction >= HONESTY_FRACTION && identical,
        detail: format!(
            "{honest}/{total} battery cases within {HONESTY_SIGMAS} error estimates{}; CSV identical across 1/4/16 threads: {identical}",
            if misses.is_empty() { String::new() } else { format!(" (misses: {})", misses.join(", ")) }
        ),
    })
}
