use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec;

use super::{IntegralResult, QuadratureSpec};

/// A sampleable region of finite volume.
pub trait Region: Send + Sync {
    fn dim(&self) -> usize;
    fn volume(&self) -> f64;
    /// Write one uniformly distributed point into `out` (length `dim()`).
    fn sample(&self, rng: &mut ChaCha8Rng, out: &mut [f64]);
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxRegion {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl BoxRegion {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        assert_eq!(lo.len(), hi.len());
        Self { lo, hi }
    }
}

impl Region for BoxRegion {
    fn dim(&self) -> usize {
        self.lo.len()
    }

    fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    fn sample(&self, rng: &mut ChaCha8Rng, out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.lo[i] + (self.hi[i] - self.lo[i]) * rng.random::<f64>();
        }
    }
}

/// Points of the ball |r| < radius with z in [z0, z1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfBallSlab {
    radius: f64,
    z0: f64,
    z1: f64,
}

impl HalfBallSlab {
    pub fn new(radius: f64, z0: f64, z1: f64) -> Self {
        assert!(-radius <= z0 && z0 <= z1 && z1 <= radius);
        Self { radius, z0, z1 }
    }
}

impl Region for HalfBallSlab {
    fn dim(&self) -> usize {
        3
    }

    fn volume(&self) -> f64 {
        let r2 = self.radius * self.radius;
        PI * (r2 * (self.z1 - self.z0) - (self.z1.powi(3) - self.z0.powi(3)) / 3.0)
    }

    fn sample(&self, rng: &mut ChaCha8Rng, out: &mut [f64]) {
        let r = self.radius;
        loop {
            let x = r * (2.0 * rng.random::<f64>() - 1.0);
            let y = r * (2.0 * rng.random::<f64>() - 1.0);
            let z = self.z0 + (self.z1 - self.z0) * rng.random::<f64>();
            if x * x + y * y + z * z < r * r {
                out[..3].copy_from_slice(&[x, y, z]);
                return;
            }
        }
    }
}

/// Cartesian product A × B; points are `[a..., b...]`.
pub struct ProductRegion<A, B> {
    pub a: A,
    pub b: B,
}

impl<A: Region, B: Region> Region for ProductRegion<A, B> {
    fn dim(&self) -> usize {
        self.a.dim() + self.b.dim()
    }

    fn volume(&self) -> f64 {
        self.a.volume() * self.b.volume()
    }

    fn sample(&self, rng: &mut ChaCha8Rng, out: &mut [f64]) {
        let da = self.a.dim();
        self.a.sample(rng, &mut out[..da]);
        self.b.sample(rng, &mut out[da..]);
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * o.n as f64 / n as f64,
            m2: self.m2 + o.m2 + d * d * (self.n as f64 * o.n as f64 / n as f64),
        }
    }

    fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }
}

const BATCH: u64 = 1024;
const STRATUM_KEY: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Copy)]
struct Job {
    stratum: usize,
    stream: u64,
    len: u64,
}

fn batches(stratum: usize, first_stream: u64, n: u64) -> Vec<Job> {
    let mut jobs = Vec::new();
    let mut left = n;
    let mut stream = first_stream;
    while left > 0 {
        let len = left.min(BATCH);
        jobs.push(Job { stratum, stream, len });
        left -= len;
        stream += 1;
    }
    jobs
}

fn run(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    strata: &[&dyn Region],
    jobs: &[Job],
    seed: u64,
    parallel: bool,
) -> Vec<Moments> {
    let dim = strata[0].dim();
    let stats = exec::map(parallel, jobs, |job| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (job.stratum as u64 + 1).wrapping_mul(STRATUM_KEY));
        rng.set_stream(job.stream);
        let mut x = vec![0.0; dim];
        let mut m = Moments::default();
        for _ in 0..job.len {
            strata[job.stratum].sample(&mut rng, &mut x);
            m.push(f(&x));
        }
        m
    });
    let mut per = vec![Moments::default(); strata.len()];
    for (job, m) in jobs.iter().zip(stats) {
        per[job.stratum] = per[job.stratum].merge(m);
    }
    per
}

/// Stratified Monte Carlo over the disjoint union of `strata`.
///
/// A pilot run of about a tenth of the budget estimates each stratum's
/// spread; the rest is allocated in proportion to volume × standard
/// deviation. Every batch of samples draws from its own ChaCha8 stream keyed
/// by (seed, stratum, batch index), so the result is bit-identical for any
/// thread count. The returned error is one standard error.
pub fn integrate_mc(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    strata: &[&dyn Region],
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    if strata.is_empty() {
        return Err(Error::Usage("Monte Carlo needs at least one region".into()));
    }
    if spec.mc_samples < 10_000 {
        return Err(Error::Usage(format!("mc_samples must be >= 10^4, got {}", spec.mc_samples)));
    }
    let dim = strata[0].dim();
    for s in strata {
        let v = s.volume();
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Usage(format!("region of volume {v} cannot be sampled")));
        }
        if s.dim() != dim {
            return Err(Error::Usage("strata must share a dimension".into()));
        }
    }
    let budget = spec.mc_samples;
    let ns = strata.len() as u64;
    let pilot = (budget / (10 * ns)).max(BATCH.min(budget / (2 * ns))).max(2);
    let pilot_jobs: Vec<Job> = (0..strata.len()).flat_map(|s| batches(s, 0, pilot)).collect();
    let pilot_stats = run(f, strata, &pilot_jobs, spec.seed, spec.parallel);

    let remaining = budget.saturating_sub(pilot * ns);
    let weights: Vec<f64> =
        strata.iter().zip(&pilot_stats).map(|(s, m)| s.volume() * m.variance().sqrt()).collect();
    let total_w: f64 = weights.iter().sum();
    let weights = if total_w > 0.0 {
        weights
    } else {
        strata.iter().map(|s| s.volume()).collect()
    };
    let total_w: f64 = weights.iter().sum();
    let first_main_stream = pilot.div_ceil(BATCH);
    let main_jobs: Vec<Job> = weights
        .iter()
        .enumerate()
        .flat_map(|(s, w)| batches(s, first_main_stream, (remaining as f64 * w / total_w).floor() as u64))
        .collect();
    let main_stats = run(f, strata, &main_jobs, spec.seed, spec.parallel);

    let mut value = 0.0;
    let mut var = 0.0;
    let mut evaluations = 0;
    for (i, s) in strata.iter().enumerate() {
        let m = pilot_stats[i].merge(main_stats[i]);
        let v = s.volume();
        value += v * m.mean;
        var += v * v * m.variance() / m.n as f64;
        evaluations += m.n;
    }
    if !value.is_finite() {
        return Err(Error::Integration("non-finite Monte Carlo estimate".into()));
    }
    let error_estimate = var.sqrt();
    Ok(IntegralResult {
        value,
        error_estimate,
        evaluations,
        converged: error_estimate <= spec.tolerance(value),
    })
}
