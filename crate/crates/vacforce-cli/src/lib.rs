//! Config-driven runner for the vacforce scenarios.

pub mod config;
pub mod output;
pub mod scenarios;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use vacforce::geometry::ShapeKind;

pub use config::{Config, ScenarioName};
pub use scenarios::{execute, Report};

/// Reads a config file; relative data paths are taken from the file's directory.
pub fn load_config(path: &Path) -> Result<Config> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut cfg = Config::parse(&text).with_context(|| format!("in {}", path.display()))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let fix = |p: &mut PathBuf| {
        if p.is_relative() {
            *p = dir.join(&*p);
        }
    };
    if let Some(p) = cfg.materials.metal_table.as_mut() {
        fix(p);
    }
    if let Some(p) = cfg.voxel.as_mut().and_then(|v| v.path.as_mut()) {
        fix(p);
    }
    Ok(cfg)
}

pub struct RunOutput {
    pub report: Report,
    pub files: Vec<PathBuf>,
}

/// Runs a config and writes `<label>.csv` and, as configured, the plot
/// script and the JSON summary into `out_dir`.
pub fn run(cfg: &Config, out_dir: &Path) -> Result<RunOutput> {
    let cfg = cfg.resolved();
    let report = execute(&cfg)?;
    let label = cfg.label.clone().expect("resolved");
    std::fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let mut files = Vec::new();
    let mut write = |name: String, body: String| -> Result<()> {
        let p = out_dir.join(name);
        std::fs::write(&p, body).with_context(|| format!("writing {}", p.display()))?;
        files.push(p);
        Ok(())
    };
    let csv_name = format!("{label}.csv");
    write(csv_name.clone(), output::csv(&cfg, &report))?;
    if cfg.output.plot_script {
        if let Some(g) = output::gnuplot(&report, &csv_name, &label) {
            write(format!("{label}.gp"), g)?;
        }
    }
    if cfg.output.json {
        write(format!("{label}.json"), output::json(&cfg, &report))?;
    }
    Ok(RunOutput { report, files })
}

/// Runs `f` on a pool of `n` threads.
pub fn with_threads<T: Send>(n: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
        Ok(pool.install(f))
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
        Ok(f())
    }
}

/// Body shape behind a scenario; the first-order scenario has none.
pub fn scenario_shape(s: ScenarioName) -> Option<ShapeKind> {
    Some(match s {
        ScenarioName::Needle => ShapeKind::Needle,
        ScenarioName::Shell => ShapeKind::HemisphereShell,
        ScenarioName::JanusBall => ShapeKind::JanusBall,
        ScenarioName::Plate => ShapeKind::PlanarSlab,
        ScenarioName::WrenchLarge | ScenarioName::WrenchSmall => ShapeKind::AllenWrench,
        ScenarioName::DualFlags => ShapeKind::DualFlags,
        ScenarioName::Voxel => ShapeKind::Voxelized,
        ScenarioName::FirstOrderTorque => return None,
    })
}

fn describe(s: ScenarioName) -> &'static str {
    match s {
        ScenarioName::Needle => "dielectric and metal rods end to end along z; force",
        ScenarioName::Shell => "thin spherical shell, dielectric and metal hemispheres; force",
        ScenarioName::JanusBall => "solid ball, dielectric and metal halves; force and terminal velocity while cooling",
        ScenarioName::Plate => "blackbody sheet on a metal film; force and radiated power",
        ScenarioName::WrenchLarge => "planar wrench, metal wire with dielectric tags, nu a >= 1; torque and spin-up",
        ScenarioName::WrenchSmall => "planar wrench, nu a < 1; torque and spin-up",
        ScenarioName::DualFlags => "wrench with sheet flags in place of the tags; torque",
        ScenarioName::Voxel => "arbitrary two-part point cloud; force and torque",
        ScenarioName::FirstOrderTorque => "single chiral body with an antisymmetric polarizability; first-order torque",
    }
}

/// Every scenario with its sweep variables and full default config.
pub fn list_scenarios() -> String {
    let mut s = String::new();
    for sc in ScenarioName::ALL {
        let vars: Vec<&str> = sc.sweep_variables().iter().map(|v| v.as_str()).collect();
        let _ = writeln!(s, "== {sc}: {}", describe(sc));
        let schema = scenario_shape(sc).map_or("first-order polarizability".to_string(), |k| format!("{k:?}"));
        let _ = writeln!(s, "   schema: {schema}");
        let _ = writeln!(s, "   sweep variables: {}", vars.join(", "));
        for line in Config::defaults(sc).to_toml().lines() {
            let _ = writeln!(s, "   {line}");
        }
        s.push('\n');
    }
    s
}
