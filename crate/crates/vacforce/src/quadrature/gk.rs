use crate::error::{Error, Result};
use crate::exec;

use super::{IntegralResult, QuadratureSpec};

// 21-point Kronrod abscissae and weights; the odd entries are the 10-point
// Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// One integrand sample: a value plus the error it already carries when it
/// is itself the result of an inner integration.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Eval {
    pub value: f64,
    pub err: f64,
    pub evals: u64,
    pub ok: bool,
}

impl Eval {
    pub fn plain(value: f64) -> Self {
        Self { value, err: 0.0, evals: 1, ok: true }
    }
}

impl From<IntegralResult> for Eval {
    fn from(r: IntegralResult) -> Self {
        Self { value: r.value, err: r.error_estimate, evals: r.evaluations, ok: r.converged }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    /// Rule error plus the error carried in by the samples.
    err: f64,
    /// Rule error alone; only this shrinks under bisection.
    own: f64,
    evals: u64,
    ok: bool,
}

fn gk21(f: &(dyn Fn(f64) -> Eval + Sync), a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut evals = 0;
    let mut ok = true;
    let mut inner = 0.0;
    let mut sample = |x: f64, w: f64| {
        let e = f(x);
        evals += e.evals;
        ok &= e.ok;
        inner += w * e.err;
        e.value
    };
    let fc = sample(center, WGK[10]);
    let mut resg = 0.0;
    let mut resk = WGK[10] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..5 {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let f1 = sample(center - dx, WGK[jtw]);
        let f2 = sample(center + dx, WGK[jtw]);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += WG[j] * (f1 + f2);
        resk += WGK[jtw] * (f1 + f2);
        resabs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let f1 = sample(center - dx, WGK[jtwm1]);
        let f2 = sample(center + dx, WGK[jtwm1]);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += WGK[jtwm1] * (f1 + f2);
        resabs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let ah = half.abs();
    let result = resk * half;
    resabs *= ah;
    resasc *= ah;
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Panel { a, b, value: result, err: err + ah * inner, own: err, evals, ok }
}

/// Adaptive bisection over an ordered partition.
///
/// Each round bisects every panel whose rule error exceeds its share of the
/// tolerance (largest first, capped by the subdivision budget); the new
/// panels are evaluated in parallel and the partition is summed in order.
/// When only inherited sample error is left above tolerance the result is
/// returned unconverged rather than refined further.
pub(crate) fn adaptive(
    f: &(dyn Fn(f64) -> Eval + Sync),
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    spec.validate()?;
    let bounds: Vec<(f64, f64)> = breaks.windows(2).map(|w| (w[0], w[1])).filter(|(a, b)| b > a).collect();
    if bounds.is_empty() {
        return Ok(IntegralResult::exact(0.0));
    }
    let mut panels = exec::map(spec.parallel, &bounds, |&(a, b)| gk21(f, a, b));
    loop {
        if let Some(p) = panels.iter().find(|p| !p.value.is_finite() || !p.err.is_finite()) {
            return Err(Error::Integration(format!(
                "non-finite integrand on [{}, {}]",
                p.a, p.b
            )));
        }
        let value = exec::compensated_sum(panels.iter().map(|p| p.value));
        let err: f64 = panels.iter().map(|p| p.err).sum();
        let evaluations = panels.iter().map(|p| p.evals).sum();
        let inner_ok = panels.iter().all(|p| p.ok);
        let tol = spec.tolerance(value);
        let done = IntegralResult { value, error_estimate: err, evaluations, converged: false };
        if err <= tol {
            return Ok(IntegralResult { converged: inner_ok, ..done });
        }
        let room = spec.max_subdivisions.saturating_sub(panels.len());
        if room == 0 {
            return Ok(done);
        }
        let share = tol / panels.len() as f64;
        let mut order: Vec<usize> = (0..panels.len())
            .filter(|&i| {
                let p = &panels[i];
                let mid = 0.5 * (p.a + p.b);
                p.own > share && mid > p.a && mid < p.b
            })
            .collect();
        if order.is_empty() {
            return Ok(done);
        }
        order.sort_by(|&i, &j| panels[j].own.total_cmp(&panels[i].own).then(i.cmp(&j)));
        order.truncate(room);
        order.sort_unstable();
        let halves: Vec<(f64, f64)> = order
            .iter()
            .flat_map(|&i| {
                let p = panels[i];
                let mid = 0.5 * (p.a + p.b);
                [(p.a, mid), (mid, p.b)]
            })
            .collect();
        let fresh = exec::map(spec.parallel, &halves, |&(a, b)| gk21(f, a, b));
        let mut next = Vec::with_capacity(panels.len() + order.len());
        let mut k = 0;
        for (i, p) in panels.iter().enumerate() {
            if k < order.len() && order[k] == i {
                next.push(fresh[2 * k]);
                next.push(fresh[2 * k + 1]);
                k += 1;
            } else {
                next.push(*p);
            }
        }
        panels = next;
    }
}

/// Partition of [a, b] through the interior break points, further cut so no
/// piece exceeds half the oscillation period.
fn partition(a: f64, b: f64, points: &[f64], period: Option<f64>) -> Vec<f64> {
    let mut cuts: Vec<f64> = points.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let Some(p) = period else { return cuts };
    let max_len = 0.5 * p;

    let mut out = vec![cuts[0]];
    for w in cuts.windows(2) {
        let n = ((w[1] - w[0]) / max_len).ceil().max(1.0) as usize;
        for i in 1..=n {
            out.push(if i == n { w[1] } else { w[0] + (w[1] - w[0]) * i as f64 / n as f64 });
        }
    }
    out
}

fn check_period(a: f64, b: f64, spec: &QuadratureSpec) -> Result<()> {
    if let Some(p) = spec.oscillation_period_hint {
        let pieces = (b - a) / (0.5 * p);
        if !(pieces <= spec.max_subdivisions as f64) {
            return Err(Error::Integration(format!(
                "{pieces:.3e} half-period panels exceed the subdivision budget of {}",
                spec.max_subdivisions
            )));
        }
    }
    Ok(())
}

fn check_limits(a: f64, b: f64) -> Result<()> {
    if a.is_nan() || b.is_nan() || a.is_infinite() {
        return Err(Error::Usage(format!("bad integration limits [{a}, {b}]")));
    }
    if b < a {
        return Err(Error::Usage(format!("lower limit {a} exceeds upper limit {b}")));
    }
    Ok(())
}

/// ∫_a^b f. `b` may be `f64::INFINITY`, in which case x = a + t/(1−t).
pub fn integrate_1d<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    integrate_1d_points(f, a, b, &[], spec)
}

/// [`integrate_1d`] with known interior kinks or singular points.
pub fn integrate_1d_points<F>(
    f: F,
    a: f64,
    b: f64,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    points_dyn(&f, a, b, points, spec)
}

fn points_dyn(
    f: &(dyn Fn(f64) -> f64 + Sync),
    a: f64,
    b: f64,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    check_limits(a, b)?;
    if b.is_infinite() {
        return semi_infinite_dyn(f, a, 1.0, InfiniteMethod::Map, spec);
    }
    check_period(a, b, spec)?;
    let g = |x: f64| Eval::plain(f(x));
    adaptive(&g, &partition(a, b, points, spec.oscillation_period_hint), spec)
}

/// ∫_a^b of an integrand that is itself an integral (or may fail). Its
/// error estimates and convergence flags are carried into the result and
/// the first integrand error is returned as is. `b` may be infinite, in
/// which case x = a + scale·t/(1−t).
pub fn integrate_1d_inner(
    f: &(dyn Fn(f64) -> Result<IntegralResult> + Sync),
    a: f64,
    b: f64,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    check_limits(a, b)?;
    let fb = super::Fallible::default();
    let call = |x: f64| match f(x) {
        Ok(r) => Eval::from(r),
        Err(e) => Eval::plain(fb.value(Err(e))),
    };
    let r = if b.is_infinite() {
        if !(scale > 0.0) {
            return Err(Error::Usage("semi-infinite integral needs scale > 0".into()));
        }
        let g = |t: f64| {
            let u = 1.0 - t;
            let e = call(a + scale * t / u);
            let j = scale / (u * u);
            if e.value == 0.0 && e.err == 0.0 {
                return e;
            }
            Eval { value: e.value * j, err: e.err * j, ..e }
        };
        let mut s = spec.clone();
        s.oscillation_period_hint = None;
        adaptive(&g, &[0.0, 1.0], &s)
    } else {
        check_period(a, b, spec)?;
        adaptive(&call, &partition(a, b, &[], spec.oscillation_period_hint), spec)
    };
    fb.finish(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfiniteMethod {
    /// x = a + s·t/(1−t) on t ∈ [0, 1).
    Map,
    /// Cut at the point where |f| has fallen below tolerance times its peak
    /// (found by a doubling scan), then check by doubling the cut once.
    Truncate,
}

/// ∫_a^∞ f with `scale` the characteristic width of the integrand.
pub fn integrate_semi_infinite<F>(
    f: F,
    a: f64,
    scale: f64,
    method: InfiniteMethod,
    spec: &QuadratureSpec,
) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    semi_infinite_dyn(&f, a, scale, method, spec)
}

fn semi_infinite_dyn(
    f: &(dyn Fn(f64) -> f64 + Sync),
    a: f64,
    scale: f64,
    method: InfiniteMethod,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    if !(scale > 0.0) || !a.is_finite() {
        return Err(Error::Usage("semi-infinite integral needs finite a and scale > 0".into()));
    }
    match method {
        InfiniteMethod::Map => {
            let g = |t: f64| {
                let u = 1.0 - t;
                let x = a + scale * t / u;
                let v = f(x);
                Eval::plain(if v == 0.0 { 0.0 } else { v * scale / (u * u) })
            };
            let mut s = spec.clone();
            s.oscillation_period_hint = None;
            adaptive(&g, &[0.0, 1.0], &s)
        }
        InfiniteMethod::Truncate => {
            let cut = crate::thermal::truncation_point(f, a, scale, spec.rel_tol)?;
            let first = points_dyn(f, a, cut, &[], spec)?;
            let tail = points_dyn(f, cut, a + 2.0 * (cut - a), &[], spec)?;
            let tol = spec.tolerance(first.value);
            if tail.value.abs() > tol.max(first.error_estimate) {
                return Err(Error::Integration(format!(
                    "truncation at {cut} leaves a tail of {} (tolerance {tol})",
                    tail.value
                )));
            }
            Ok(first.plus(tail))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gauss_nodes_integrate_polynomials() {
        // 10-point Gauss is exact through degree 19, Kronrod through 31
        let g = |x: f64| Eval::plain(x.powi(19) + x.powi(18));
        let p = gk21(&g, 0.0, 1.0);
        assert!((p.value - (1.0 / 20.0 + 1.0 / 19.0)).abs() < 1e-15);
    }

    #[test]
    fn zero_integrand() {
        let r = integrate_1d(|_| 0.0, 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.converged);
    }

    #[test]
    fn bose_integral() {
        let f = |x: f64| if x == 0.0 { 0.0 } else { x.powi(3) / x.exp_m1() };
        let r = integrate_1d(f, 0.0, f64::INFINITY, &QuadratureSpec::default()).unwrap();
        let truth = PI.powi(4) / 15.0;
        assert!((r.value - truth).abs() < 1e-8 * truth, "{r:?}");
        assert!(r.converged);
    }

    #[test]
    fn oscillatory_with_hint() {
        let spec = QuadratureSpec::default().with_period(Some(PI));
        let r = integrate_1d(|v: f64| (2.0 * v).sin(), 0.0, 100.0, &spec).unwrap();
        let truth = (1.0 - 200f64.cos()) / 2.0;
        assert!((r.value - truth).abs() < 1e-9, "{r:?}");
        assert!(r.evaluations >= 64 * 21);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let spec = QuadratureSpec { max_subdivisions: 3, rel_tol: 1e-14, ..Default::default() };
        let r = integrate_1d(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &spec).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn nan_is_an_error() {
        let r = integrate_1d(|_| f64::NAN, 0.0, 1.0, &QuadratureSpec::default());
        assert!(matches!(r, Err(Error::Integration(_))));
    }

    #[test]
    fn truncation_agrees_with_map() {
        let f = |x: f64| if x == 0.0 { 0.0 } else { x.powi(5) / x.exp_m1() };
        let spec = QuadratureSpec::default();
        let a = integrate_semi_infinite(f, 0.0, 1.0, InfiniteMethod::Map, &spec).unwrap();
        let b = integrate_semi_infinite(f, 0.0, 1.0, InfiniteMethod::Truncate, &spec).unwrap();
        assert!((a.value - b.value).abs() < 1e-7 * a.value);
    }
}
