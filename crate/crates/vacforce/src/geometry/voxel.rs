use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::Vector3;

use crate::constants::meters;
use crate::error::{Error, Result};
use crate::exec;
use crate::greens::g;
use crate::quadrature::IntegralResult;

/// Length unit of a point-cloud file, declared by a `# units: <u>` header.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VoxelUnits {
    /// eV⁻¹
    #[default]
    Natural,
    Nanometer,
    Micrometer,
    Meter,
}

impl VoxelUnits {
    pub fn tag(self) -> &'static str {
        match self {
            VoxelUnits::Natural => "natural",
            VoxelUnits::Nanometer => "nm",
            VoxelUnits::Micrometer => "um",
            VoxelUnits::Meter => "m",
        }
    }

    /// Natural length per file unit.
    pub fn length(self) -> f64 {
        match self {
            VoxelUnits::Natural => 1.0,
            VoxelUnits::Nanometer => meters(1e-9),
            VoxelUnits::Micrometer => meters(1e-6),
            VoxelUnits::Meter => meters(1.0),
        }
    }
}

impl FromStr for VoxelUnits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "natural" | "eV^-1" => Ok(VoxelUnits::Natural),
            "nm" => Ok(VoxelUnits::Nanometer),
            "um" => Ok(VoxelUnits::Micrometer),
            "m" => Ok(VoxelUnits::Meter),
            other => Err(Error::Usage(format!("unknown voxel length unit '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoxelPoint {
    pub r: Vector3<f64>,
    /// Volume represented by the point (natural units).
    pub weight: f64,
}

/// Weighted sample points for the two parts of an arbitrary body.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VoxelCloud {
    pub points_a: Vec<VoxelPoint>,
    pub points_b: Vec<VoxelPoint>,
}

impl VoxelCloud {
    /// Reads lines of `x y z weight tag` with tag `A` or `B`. Weights are
    /// volumes in the cube of the declared unit.
    pub fn parse(text: &str) -> Result<Self> {
        let mut units = VoxelUnits::Natural;
        let mut cloud = VoxelCloud::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(c) = line.strip_prefix('#') {
                if let Some(u) = c.trim().strip_prefix("units:") {
                    units = u.parse()?;
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 5 {
                return Err(Error::Usage(format!("voxel line {}: expected 'x y z weight tag'", n + 1)));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::Usage(format!("voxel line {}: bad number '{s}'", n + 1)))
            };
            let l = units.length();
            let r = Vector3::new(num(f[0])? * l, num(f[1])? * l, num(f[2])? * l);
            let weight = num(f[3])? * l.powi(3);
            if weight <= 0.0 {
                return Err(Error::Domain(format!("voxel line {}: weight must be positive", n + 1)));
            }
            let p = VoxelPoint { r, weight };
            match f[4] {
                "A" | "a" => cloud.points_a.push(p),
                "B" | "b" => cloud.points_b.push(p),
                t => return Err(Error::Usage(format!("voxel line {}: tag must be A or B, got '{t}'", n + 1))),
            }
        }
        Ok(cloud)
    }

    pub fn to_text(&self, units: VoxelUnits) -> String {
        let l = units.length();
        let mut s = format!("# units: {}\n# x y z weight tag\n", units.tag());
        for (tag, pts) in [("A", &self.points_a), ("B", &self.points_b)] {
            for p in pts {
                let _ = writeln!(
                    s,
                    "{:.17e} {:.17e} {:.17e} {:.17e} {tag}",
                    p.r.x / l,
                    p.r.y / l,
                    p.r.z / l,
                    p.weight / l.powi(3)
                );
            }
        }
        s
    }

    /// Midpoint discretisation of a needle (A on 0 < z < a, B on −b < z < 0).
    pub fn needle(a: f64, b: f64, s: f64, per_segment: usize) -> Self {
        let n = per_segment.max(1);
        let seg = |lo: f64, hi: f64| {
            let h = (hi - lo) / n as f64;
            (0..n)
                .map(|i| VoxelPoint { r: Vector3::new(0.0, 0.0, lo + (i as f64 + 0.5) * h), weight: s * h })
                .collect()
        };
        Self { points_a: seg(0.0, a), points_b: seg(-b, 0.0) }
    }

    /// Exchange the two parts.
    pub fn swapped(&self) -> Self {
        Self { points_a: self.points_b.clone(), points_b: self.points_a.clone() }
    }

    pub fn total_weight_a(&self) -> f64 {
        self.points_a.iter().map(|p| p.weight).sum()
    }

    pub fn total_weight_b(&self) -> f64 {
        self.points_b.iter().map(|p| p.weight).sum()
    }

    fn pair_sum<const N: usize>(&self, parallel: bool, term: impl Fn(&VoxelPoint, &VoxelPoint) -> [f64; N] + Sync + Send) -> [IntegralResult; N] {
        let rows = exec::map(parallel, &self.points_a, |pa| {
            let mut acc = [(0.0, 0.0); N];
            let mut mags = [0.0; N];
            for pb in &self.points_b {
                let t = term(pa, pb);
                for k in 0..N {
                    // Neumaier step per component
                    let (s, c) = acc[k];
                    let u = s + t[k];
                    let c = if s.abs() >= t[k].abs() { c + ((s - u) + t[k]) } else { c + ((t[k] - u) + s) };
                    acc[k] = (u, c);
                    mags[k] += t[k].abs();
                }
            }
            (acc.map(|(s, c)| s + c), mags)
        });
        let pairs = (self.points_a.len() * self.points_b.len()) as u64;
        std::array::from_fn(|k| {
            let value = exec::compensated_sum(rows.iter().map(|r| r.0[k]));
            let mag: f64 = rows.iter().map(|r| r.1[k]).sum();
            IntegralResult { value, error_estimate: 4.0 * f64::EPSILON * mag, evaluations: pairs, converged: true }
        })
    }

    /// I_AB as the pair sum Σ w w′ (z − z′) ω⁸ g(ω d)/(16π²).
    pub fn force_sum(&self, omega: f64, parallel: bool) -> IntegralResult {
        let k = omega.powi(8) / (16.0 * PI * PI);
        let [r] = self.pair_sum(parallel, |pa, pb| {
            let d = pa.r - pb.r;
            [pa.weight * pb.weight * d.z * g(omega * d.norm())]
        });
        r.scaled(k)
    }

    /// J_AB as −Σ w w′ (r × r′) ω⁸ g(ω d).
    pub fn torque_sum(&self, omega: f64, parallel: bool) -> [IntegralResult; 3] {
        let k = -omega.powi(8);
        self.pair_sum(parallel, |pa, pb| {
            let c = pa.r.cross(&pb.r) * (pa.weight * pb.weight * g(omega * (pa.r - pb.r).norm()));
            [c.x, c.y, c.z]
        })
        .map(|r| r.scaled(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let c = VoxelCloud::needle(2.0, 1.0, 0.01, 7);
        let back = VoxelCloud::parse(&c.to_text(VoxelUnits::Nanometer)).unwrap();
        assert_eq!(back.points_a.len(), 7);
        for (p, q) in c.points_b.iter().zip(&back.points_b) {
            assert!((p.r - q.r).norm() < 1e-12 * (1.0 + p.r.norm()));
            assert!((p.weight / q.weight - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(VoxelCloud::parse("0 0 1 1 C").is_err());
        assert!(VoxelCloud::parse("0 0 1 -1 A").is_err());
        assert!(VoxelCloud::parse("# units: furlong\n0 0 1 1 A").is_err());
        assert!(VoxelCloud::parse("0 0 1 A").is_err());
    }

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let c = VoxelCloud::needle(3.0, 2.0, 0.1, 150);
        assert_eq!(c.force_sum(1.3, true).value, c.force_sum(1.3, false).value);
    }
}
