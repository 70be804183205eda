//! Two-part bodies and their geometric pair integrals.
//!
//! Thin parts (needle, shell, wires, slabs, flags) live on their
//! lower-dimensional skeletons with the cross-section or thickness pulled
//! out as a factor. Lengths are natural (eV⁻¹), frequencies eV.
//!
//! Orientation: part A sits at z > 0 (or is the central wire of the planar
//! objects), part B at z < 0, so a negative z-force points from A to B.

mod janus;
mod needle;
mod planar;
mod plate;
mod shell;
mod voxel;

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::materials::{chi, x_product, MaterialModel};
use crate::quadrature::{IntegralResult, QuadratureSpec};

pub use janus::{
    janus_profile, janus_profile_error, janus_profile_exact, janus_reduced_integral, janus_reduced_nested, janus_scaled_integral,
    JanusEngine, JANUS_BOUNDARY_LAYER,
};
pub use needle::needle_reduced_integral;
pub use planar::{flags_reduced_integral, rect_kernel_integral, wrench_reduced_cartesian, wrench_reduced_integral, Poly2};
pub use plate::plate_reduced_integral;
pub use shell::{shell_power_law_fit, shell_profile, shell_scaled_integral, ShellRow};
pub use voxel::{VoxelCloud, VoxelUnits};

#[derive(Debug, Clone)]
pub enum Shape {
    /// Part A on 0 < z < a, part B on −b < z < 0, cross-section S.
    Needle { a: f64, b: f64, s: f64 },
    /// Thin spherical shell; A the upper hemisphere.
    HemisphereShell { a: f64, t: f64 },
    /// Ball of radius a; A the upper half.
    JanusBall { a: f64, engine: JanusEngine },
    /// Area S, A on 0 < z < t_A over B on −t_B < z < 0.
    PlanarSlab { s: f64, t_a: f64, t_b: f64 },
    /// Wire A along x = 0, |y| < a; tags B on y = −a, 0 < x < b and on
    /// y = a, −b < x < 0; all in the z = 0 plane.
    AllenWrench { a: f64, b: f64, s_a: f64, s_b: f64 },
    /// Wrench wire with the tags replaced by sheets of thickness t_f
    /// covering 0 < x < b, −a < y < −a + h and its point mirror.
    DualFlags { a: f64, b: f64, height: f64, thickness: f64, s_a: f64 },
    Voxelized(Arc<VoxelCloud>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    Needle,
    HemisphereShell,
    JanusBall,
    PlanarSlab,
    AllenWrench,
    DualFlags,
    Voxelized,
}

impl ShapeKind {
    pub const ALL: [ShapeKind; 7] = [
        ShapeKind::Needle,
        ShapeKind::HemisphereShell,
        ShapeKind::JanusBall,
        ShapeKind::PlanarSlab,
        ShapeKind::AllenWrench,
        ShapeKind::DualFlags,
        ShapeKind::Voxelized,
    ];
}

impl Shape {
    pub fn kind(&self) -> ShapeKind {
        match self {
            Shape::Needle { .. } => ShapeKind::Needle,
            Shape::HemisphereShell { .. } => ShapeKind::HemisphereShell,
            Shape::JanusBall { .. } => ShapeKind::JanusBall,
            Shape::PlanarSlab { .. } => ShapeKind::PlanarSlab,
            Shape::AllenWrench { .. } => ShapeKind::AllenWrench,
            Shape::DualFlags { .. } => ShapeKind::DualFlags,
            Shape::Voxelized(_) => ShapeKind::Voxelized,
        }
    }

    fn dimensions(&self) -> Vec<(&'static str, f64)> {
        match self {
            Shape::Needle { a, b, s } => vec![("a", *a), ("b", *b), ("S", *s)],
            Shape::HemisphereShell { a, t } => vec![("a", *a), ("t", *t)],
            Shape::JanusBall { a, .. } => vec![("a", *a)],
            Shape::PlanarSlab { s, t_a, t_b } => vec![("S", *s), ("t_A", *t_a), ("t_B", *t_b)],
            Shape::AllenWrench { a, b, s_a, s_b } => vec![("a", *a), ("b", *b), ("S_A", *s_a), ("S_B", *s_b)],
            Shape::DualFlags { a, b, height, thickness, s_a } => {
                vec![("a", *a), ("b", *b), ("h", *height), ("t_f", *thickness), ("S_A", *s_a)]
            }
            Shape::Voxelized(_) => vec![],
        }
    }
}

#[derive(Debug, Clone)]
pub struct TwoPartBody {
    pub shape: Shape,
    pub material_a: MaterialModel,
    pub material_b: MaterialModel,
    /// Mass densities in natural units (eV⁴).
    pub rho_a: f64,
    pub rho_b: f64,
}

impl TwoPartBody {
    pub fn new(shape: Shape, material_a: MaterialModel, material_b: MaterialModel) -> Result<Self> {
        for (name, v) in shape.dimensions() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("dimension {name} must be positive, got {v}")));
            }
        }
        match &shape {
            Shape::HemisphereShell { a, t } if t >= a => {
                return Err(Error::Domain("shell thickness must be much smaller than its radius".into()))
            }
            Shape::DualFlags { a, height, .. } if *height > 2.0 * a => {
                return Err(Error::Domain("flag height cannot exceed the wire length 2a".into()))
            }
            Shape::Voxelized(c) if c.points_a.is_empty() || c.points_b.is_empty() => {
                return Err(Error::Domain("voxel cloud needs points in both parts".into()))
            }
            _ => {}
        }
        Ok(Self { shape, material_a, material_b, rho_a: 0.0, rho_b: 0.0 })
    }

    pub fn with_densities(mut self, rho_a: f64, rho_b: f64) -> Self {
        self.rho_a = rho_a;
        self.rho_b = rho_b;
        self
    }

    /// Same geometry with the two materials (and densities) exchanged.
    pub fn swapped_materials(&self) -> Self {
        Self {
            shape: self.shape.clone(),
            material_a: self.material_b.clone(),
            material_b: self.material_a.clone(),
            rho_a: self.rho_b,
            rho_b: self.rho_a,
        }
    }

    /// Volumes (V_A, V_B).
    pub fn volumes(&self) -> (f64, f64) {
        match &self.shape {
            Shape::Needle { a, b, s } => (s * a, s * b),
            Shape::HemisphereShell { a, t } => (2.0 * PI * a * a * t, 2.0 * PI * a * a * t),
            Shape::JanusBall { a, .. } => {
                let v = 2.0 * PI * a.powi(3) / 3.0;
                (v, v)
            }
            Shape::PlanarSlab { s, t_a, t_b } => (s * t_a, s * t_b),
            Shape::AllenWrench { a, b, s_a, s_b } => (2.0 * a * s_a, 2.0 * b * s_b),
            Shape::DualFlags { a, b, height, thickness, s_a } => (2.0 * a * s_a, 2.0 * b * height * thickness),
            Shape::Voxelized(c) => (c.total_weight_a(), c.total_weight_b()),
        }
    }

    pub fn mass(&self) -> f64 {
        let (va, vb) = self.volumes();
        self.rho_a * va + self.rho_b * vb
    }

    fn layer_thickness(&self, part_a: bool) -> Result<f64> {
        match self.shape {
            Shape::PlanarSlab { t_a, t_b, .. } => Ok(if part_a { t_a } else { t_b }),
            _ => Err(Error::Usage("a blackbody surface susceptibility needs a planar slab".into())),
        }
    }

    fn bulk_chi(&self, model: &MaterialModel, part_a: bool, omega: f64) -> Result<Complex64> {
        let c = chi(model, omega)?;
        match model {
            MaterialModel::BlackbodySurface { .. } => Ok(c / self.layer_thickness(part_a)?),
            _ => Ok(c),
        }
    }

    /// Volume susceptibility of part A (surface models divided by the layer thickness).
    pub fn bulk_chi_a(&self, omega: f64) -> Result<Complex64> {
        self.bulk_chi(&self.material_a, true, omega)
    }

    pub fn bulk_chi_b(&self, omega: f64) -> Result<Complex64> {
        self.bulk_chi(&self.material_b, false, omega)
    }

    pub fn x_ab(&self, omega: f64) -> Result<f64> {
        Ok(x_product(self.bulk_chi_a(omega)?, self.bulk_chi_b(omega)?))
    }

    /// Thin-structure validity: the metal's transverse size should not
    /// exceed its minimum skin depth 2/ω_p.
    pub fn validity_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let metal = |m: &MaterialModel| match m {
            MaterialModel::Drude { omega_p, .. } => Some(2.0 / omega_p),
            _ => None,
        };
        let mut check = |what: &str, size: f64, delta: Option<f64>| {
            if let Some(d) = delta {
                if size > d {
                    out.push(format!(
                        "{what} ({size:.3e} eV^-1) exceeds the minimum skin depth ({d:.3e} eV^-1); \
                         the weak-susceptibility model is optimistic here"
                    ));
                }
            }
        };
        let (da, db) = (metal(&self.material_a), metal(&self.material_b));
        let radius = |s: f64| (s / PI).sqrt();
        match &self.shape {
            Shape::Needle { s, .. } => {
                check("needle radius", radius(*s), da);
                check("needle radius", radius(*s), db);
            }
            Shape::HemisphereShell { t, .. } => {
                check("shell thickness", *t, da);
                check("shell thickness", *t, db);
            }
            Shape::PlanarSlab { t_a, t_b, .. } => {
                check("layer A thickness", *t_a, da);
                check("layer B thickness", *t_b, db);
            }
            Shape::AllenWrench { s_a, s_b, .. } => {
                check("wire radius", radius(*s_a), da);
                check("tag radius", radius(*s_b), db);
            }
            Shape::DualFlags { s_a, thickness, .. } => {
                check("wire radius", radius(*s_a), da);
                check("flag thickness", *thickness, db);
            }
            Shape::JanusBall { .. } | Shape::Voxelized(_) => {}
        }
        out
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!("geometric integrals need omega > 0, got {omega}")));
    }
    Ok(())
}

/// I_AB(ω) = ∫_A∫_B ½∇_z[Im Γ_ji Im Γ_ij], volume factors included.
pub fn i_ab(body: &TwoPartBody, omega: f64, quad: &QuadratureSpec) -> Result<IntegralResult> {
    check_omega(omega)?;
    let w4 = omega.powi(4);
    let w8 = w4 * w4;
    Ok(match &body.shape {
        Shape::Needle { a, b, s } => {
            needle_reduced_integral(omega * a, omega * b).scaled(s * s * w8 / (16.0 * PI * PI) / omega.powi(3))
        }
        Shape::HemisphereShell { a, t } => {
            let m3 = crate::greens::radial_moment(3, 2.0 * omega * a);
            let v = w4 * a * t * t * m3 / 16.0;
            IntegralResult { value: v, error_estimate: 1e-13 * v.abs(), evaluations: 1, converged: true }
        }
        Shape::JanusBall { a, engine } => {
            janus_reduced_integral(omega * a, *engine, quad)?.scaled(w8 * a.powi(7) / (16.0 * PI * PI))
        }
        Shape::PlanarSlab { s, t_a, t_b } => {
            plate_reduced_integral(omega * t_a, omega * t_b, quad)?.scaled(s * omega.powi(3) / (8.0 * PI))
        }
        Shape::AllenWrench { .. } | Shape::DualFlags { .. } => IntegralResult::exact(0.0),
        Shape::Voxelized(c) => c.force_sum(omega, quad.parallel),
    })
}

/// J_AB(ω) = −∫_A∫_B (r × r′) φ(ω|r − r′|)/|r − r′|⁸, as (x, y, z).
pub fn j_ab(body: &TwoPartBody, omega: f64, quad: &QuadratureSpec) -> Result<[IntegralResult; 3]> {
    check_omega(omega)?;
    let zero = IntegralResult::exact(0.0);
    Ok(match &body.shape {
        // axisymmetric or mirror-symmetric: no geometric torque
        Shape::Needle { .. } | Shape::HemisphereShell { .. } | Shape::JanusBall { .. } | Shape::PlanarSlab { .. } => {
            [zero; 3]
        }
        Shape::AllenWrench { a, b, s_a, s_b } => {
            let j = wrench_reduced_integral(omega * a, omega * b, quad)?;
            [zero, zero, j.scaled(2.0 * s_a * s_b * omega.powi(4))]
        }
        Shape::DualFlags { a, b, height, thickness, s_a } => {
            let j = flags_reduced_integral(omega * a, omega * b, omega * height, quad)?;
            [zero, zero, j.scaled(2.0 * s_a * thickness * omega.powi(3))]
        }
        Shape::Voxelized(c) => c.torque_sum(omega, quad.parallel),
    })
}

/// Moment of inertia about the normal through the centre (planar bodies).
pub fn moment_of_inertia(body: &TwoPartBody) -> Result<f64> {
    match body.shape {
        Shape::AllenWrench { a, b, s_a, s_b } => {
            Ok(wrench_moment_of_inertia(a, b, s_a, s_b, body.rho_a, body.rho_b))
        }
        Shape::DualFlags { a, b, height, thickness, s_a } => {
            let wire = body.rho_a * s_a * 2.0 / 3.0 * a.powi(3);
            let y0 = -a;
            let y1 = -a + height;
            let sheet = body.rho_b * thickness * (height * b.powi(3) / 3.0 + b * (y1.powi(3) - y0.powi(3)) / 3.0);
            Ok(wire + 2.0 * sheet)
        }
        _ => Err(Error::Usage("moment of inertia is provided for planar wrench-type bodies".into())),
    }
}

/// I = ρ_A S_A (2/3)a³ + ρ_B S_B 2b(a² + b²/3).
pub fn wrench_moment_of_inertia(a: f64, b: f64, s_a: f64, s_b: f64, rho_a: f64, rho_b: f64) -> f64 {
    rho_a * s_a * 2.0 / 3.0 * a.powi(3) + rho_b * s_b * 2.0 * b * (a * a + b * b / 3.0)
}
