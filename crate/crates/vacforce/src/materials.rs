//! Frequency-dependent susceptibilities.

use std::fmt;
use std::sync::Arc;

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::TwoPartBody;

/// Gold plasma frequency (eV). Not given in the source material; a standard
/// Drude fit value.
pub const GOLD_OMEGA_P: f64 = 9.0;
/// Gold collision frequency (eV).
pub const GOLD_NU: f64 = 0.035;
/// Default regulator of the blackbody surface susceptibility (eV).
pub const BLACKBODY_EPSILON: f64 = 1e-6;

pub type TensorFn = dyn Fn(f64) -> Matrix3<Complex64> + Send + Sync;

#[derive(Clone)]
pub enum MaterialModel {
    ConstantDielectric { chi: f64 },
    Drude { omega_p: f64, nu: f64 },
    /// Surface susceptibility (i/4)/(ω + iε); bulk χ is this over the layer thickness.
    BlackbodySurface { epsilon_reg: f64 },
    Tabulated(Arc<SusceptibilityTable>),
    /// ω ↦ α_jk(ω) in eV⁻³, already volume integrated.
    PolarizabilityTensor(Arc<TensorFn>),
}

impl fmt::Debug for MaterialModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ConstantDielectric { chi } => write!(f, "ConstantDielectric {{ chi: {chi} }}"),
            Self::Drude { omega_p, nu } => write!(f, "Drude {{ omega_p: {omega_p}, nu: {nu} }}"),
            Self::BlackbodySurface { epsilon_reg } => {
                write!(f, "BlackbodySurface {{ epsilon_reg: {epsilon_reg} }}")
            }
            Self::Tabulated(t) => write!(f, "Tabulated({} rows)", t.omega.len()),
            Self::PolarizabilityTensor(_) => f.write_str("PolarizabilityTensor(..)"),
        }
    }
}

impl MaterialModel {
    pub fn gold() -> Self {
        Self::Drude { omega_p: GOLD_OMEGA_P, nu: GOLD_NU }
    }

    pub fn drude(omega_p: f64, nu: f64) -> Result<Self> {
        if !(omega_p > 0.0 && nu > 0.0) {
            return Err(Error::Domain(format!("Drude needs omega_p, nu > 0 (got {omega_p}, {nu})")));
        }
        Ok(Self::Drude { omega_p, nu })
    }

    pub fn dielectric(chi: f64) -> Self {
        Self::ConstantDielectric { chi }
    }

    pub fn blackbody() -> Self {
        Self::BlackbodySurface { epsilon_reg: BLACKBODY_EPSILON }
    }

    pub fn is_metal(&self) -> bool {
        matches!(self, Self::Drude { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::ConstantDielectric { .. } => "dielectric",
            Self::Drude { .. } => "drude",
            Self::BlackbodySurface { .. } => "blackbody-surface",
            Self::Tabulated(_) => "tabulated",
            Self::PolarizabilityTensor(_) => "polarizability-tensor",
        }
    }
}

/// χ(ω) for the scalar models.
pub fn chi(model: &MaterialModel, omega: f64) -> Result<Complex64> {
    match model {
        MaterialModel::ConstantDielectric { chi } => Ok(Complex64::new(*chi, 0.0)),
        MaterialModel::Drude { omega_p, nu } => {
            if !(omega > 0.0) {
                return Err(Error::Domain(format!("Drude susceptibility needs omega > 0, got {omega}")));
            }
            Ok(drude_chi(*omega_p, *nu, omega))
        }
        MaterialModel::BlackbodySurface { epsilon_reg } => {
            if !(*epsilon_reg > 0.0) {
                return Err(Error::Domain("blackbody regulator must be positive".into()));
            }
            Ok(Complex64::new(0.0, 0.25) / Complex64::new(omega, *epsilon_reg))
        }
        MaterialModel::Tabulated(t) => t.eval(omega),
        MaterialModel::PolarizabilityTensor(_) => Err(Error::Usage(
            "a polarizability tensor has no scalar susceptibility".into(),
        )),
    }
}

/// −ω_p²/(ω² + iων), written out so Im χ is formed without cancellation.
pub fn drude_chi(omega_p: f64, nu: f64, omega: f64) -> Complex64 {
    let wp2 = omega_p * omega_p;
    let d = omega * omega + nu * nu;
    Complex64::new(-wp2 / d, wp2 * nu / (omega * d))
}

/// X = Im χ_A Re χ_B − Re χ_A Im χ_B.
pub fn x_product(chi_a: Complex64, chi_b: Complex64) -> f64 {
    chi_a.im * chi_b.re - chi_a.re * chi_b.im
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusceptibilityPairSample {
    pub chi_a: Complex64,
    pub chi_b: Complex64,
    pub x_ab: f64,
}

impl SusceptibilityPairSample {
    pub fn new(chi_a: Complex64, chi_b: Complex64) -> Self {
        Self { chi_a, chi_b, x_ab: x_product(chi_a, chi_b) }
    }
}

/// δ(ω) = sqrt(2(ω² + ν²)/(ω ω_p² ν)).
pub fn skin_depth(model: &MaterialModel, omega: f64) -> Result<f64> {
    let MaterialModel::Drude { omega_p, nu } = model else {
        return Err(Error::Usage("skin depth is defined for Drude models only".into()));
    };
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("skin depth needs omega > 0, got {omega}")));
    }
    Ok((2.0 * (omega * omega + nu * nu) / (omega * omega_p * omega_p * nu)).sqrt())
}

/// α_jk(ω) = ∫ χ_jk. Isotropic bodies give (V_A χ_A + V_B χ_B)·1.
pub fn mean_polarizability(body: &TwoPartBody, omega: f64) -> Result<Matrix3<Complex64>> {
    let (va, vb) = body.volumes();
    let ca = body.bulk_chi_a(omega)?;
    let cb = body.bulk_chi_b(omega)?;
    Ok(Matrix3::from_diagonal_element(ca * va + cb * vb))
}

/// Tensor-model variant of [`mean_polarizability`].
pub fn tensor_polarizability(model: &MaterialModel, omega: f64) -> Result<Matrix3<Complex64>> {
    match model {
        MaterialModel::PolarizabilityTensor(f) => Ok(f(omega)),
        _ => Err(Error::Usage("expected a polarizability tensor model".into())),
    }
}

/// Complex susceptibility sampled on a positive frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SusceptibilityTable {
    omega: Vec<f64>,
    chi: Vec<Complex64>,
}

impl SusceptibilityTable {
    /// Rows may include negative frequencies; those must be the complex
    /// conjugates of their positive partners and are then dropped.
    pub fn new(rows: Vec<(f64, Complex64)>) -> Result<Self> {
        let (neg, pos): (Vec<_>, Vec<_>) = rows.into_iter().partition(|(w, _)| *w < 0.0);
        let pos: Vec<_> = pos.into_iter().filter(|(w, _)| *w > 0.0).collect();
        if pos.len() < 2 {
            return Err(Error::Usage("a table needs at least two positive frequencies".into()));
        }
        for w in pos.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::Usage("table frequencies must be strictly increasing".into()));
            }
        }
        for (w, c) in &pos {
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::Usage(format!("non-finite susceptibility at omega = {w}")));
            }
            if c.im < 0.0 {
                return Err(Error::Domain(format!("Im chi < 0 at omega = {w} (not passive)")));
            }
        }
        let table = Self {
            omega: pos.iter().map(|r| r.0).collect(),
            chi: pos.iter().map(|r| r.1).collect(),
        };
        for (w, c) in neg {
            let partner = table.eval(-w).map_err(|_| {
                Error::Domain(format!("negative frequency {w} has no positive partner in range"))
            })?;
            let tol = 1e-9 * partner.norm().max(1e-300);
            if (partner.conj() - c).norm() > tol {
                return Err(Error::Domain(format!("reality condition chi(-w) = chi(w)* fails at {w}")));
            }
        }
        Ok(table)
    }

    pub fn range(&self) -> (f64, f64) {
        (self.omega[0], *self.omega.last().unwrap())
    }

    /// Linear in ln ω between grid points; no extrapolation.
    pub fn eval(&self, omega: f64) -> Result<Complex64> {
        let (lo, hi) = self.range();
        if !(omega >= lo && omega <= hi) {
            return Err(Error::Range(format!("omega = {omega} outside table [{lo}, {hi}]")));
        }
        let i = match self.omega.partition_point(|&w| w <= omega) {
            0 => 0,
            n if n >= self.omega.len() => self.omega.len() - 2,
            n => n - 1,
        };
        let (w0, w1) = (self.omega[i], self.omega[i + 1]);
        let t = (omega.ln() - w0.ln()) / (w1.ln() - w0.ln());
        Ok(self.chi[i] * (1.0 - t) + self.chi[i + 1] * t)
    }
}

/// Parse a whitespace table `ω Reχ_A Imχ_A [Reχ_B Imχ_B]` with `#` comments.
pub fn parse_table(text: &str) -> Result<(SusceptibilityTable, Option<SusceptibilityTable>)> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut width = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<f64> = line
            .split_whitespace()
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Usage(format!("line {}: {e}", lineno + 1)))?;
        if cols.len() != 3 && cols.len() != 5 {
            return Err(Error::Usage(format!("line {}: expected 3 or 5 columns", lineno + 1)));
        }
        if *width.get_or_insert(cols.len()) != cols.len() {
            return Err(Error::Usage(format!("line {}: inconsistent column count", lineno + 1)));
        }
        a.push((cols[0], Complex64::new(cols[1], cols[2])));
        if cols.len() == 5 {
            b.push((cols[0], Complex64::new(cols[3], cols[4])));
        }
    }
    let ta = SusceptibilityTable::new(a)?;
    let tb = if b.is_empty() { None } else { Some(SusceptibilityTable::new(b)?) };
    Ok((ta, tb))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drude_at_collision_frequency() {
        let (wp, nu) = (9.0, 0.035);
        let c = chi(&MaterialModel::gold(), nu).unwrap();
        let expect = Complex64::new(-1.0, 1.0) * (wp * wp / (2.0 * nu * nu));
        assert!((c - expect).norm() < 1e-12 * expect.norm());
    }

    #[test]
    fn drude_high_frequency() {
        let c = chi(&MaterialModel::gold(), 1e4).unwrap();
        assert!((c.re / (-81.0 / 1e8) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn drude_rejects_nonpositive_omega() {
        assert!(chi(&MaterialModel::gold(), 0.0).is_err());
    }

    #[test]
    fn blackbody_surface() {
        let c = chi(&MaterialModel::blackbody(), 0.1).unwrap();
        assert!((c.im - 2.5).abs() < 1e-9);
        assert!(c.re.abs() < 1e-4);
    }

    #[test]
    fn x_product_nulls() {
        let a = Complex64::new(0.3, 1.2);
        assert_eq!(x_product(a, a), 0.0);
        assert_eq!(x_product(Complex64::new(2.0, 0.0), Complex64::new(-5.0, 0.0)), 0.0);
    }

    #[test]
    fn skin_depth_minimum() {
        let d = skin_depth(&MaterialModel::gold(), GOLD_NU).unwrap();
        assert!((d - 2.0 / GOLD_OMEGA_P).abs() < 1e-12);
        assert!(skin_depth(&MaterialModel::dielectric(1.0), 1.0).is_err());
    }

    #[test]
    fn skin_depth_thermal_scale_is_tens_of_nm() {
        let d = skin_depth(&MaterialModel::gold(), 1.0 / 40.0).unwrap();
        let nm = d * crate::constants::HBAR_C_EV_NM;
        assert!(nm > 15.0 && nm < 150.0, "{nm}");
    }

    #[test]
    fn table_interpolates_log_linearly() {
        let t = parse_table("# w re im\n1 1 0\n100 3 2\n").unwrap().0;
        let c = t.eval(10.0).unwrap();
        assert!((c.re - 2.0).abs() < 1e-12 && (c.im - 1.0).abs() < 1e-12);
        assert!(matches!(t.eval(1000.0), Err(Error::Range(_))));
    }

    #[test]
    fn table_reality_condition() {
        assert!(parse_table("-1 2 -1\n1 2 1\n2 1 1\n").is_ok());
        assert!(parse_table("-1 2 1\n1 2 1\n2 1 1\n").is_err());
    }

    #[test]
    fn table_two_parts() {
        let (a, b) = parse_table("1 1 0 2 0.5\n2 1 0 2 0.25\n").unwrap();
        assert_eq!(a.eval(1.0).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(b.unwrap().eval(2.0).unwrap(), Complex64::new(2.0, 0.25));
    }
}
