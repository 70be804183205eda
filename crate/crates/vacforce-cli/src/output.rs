//! CSV, gnuplot and JSON writers.
//!
//! Every CSV starts with the resolved config as `# ` comment lines, so a
//! run can be reproduced from its own output, followed by `#! ` lines with
//! run information and a single header row.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::config::{Config, ConfigError};
use crate::scenarios::Report;

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn header(cfg: &Config, report: &Report) -> String {
    let mut s = String::new();
    for line in cfg.to_toml().lines() {
        if line.is_empty() {
            s.push_str("#\n");
        } else {
            let _ = writeln!(s, "# {line}");
        }
    }
    let _ = writeln!(s, "#! vacforce-cli {VERSION}");
    for n in &report.notes {
        let _ = writeln!(s, "#! {n}");
    }
    for sc in &report.scalars {
        let _ = write!(s, "#! {} = {} {}", sc.name, num(sc.value), sc.unit);
        if let Some(e) = sc.error {
            let _ = write!(s, " +- {}", num(e));
        }
        if !sc.converged {
            s.push_str(" UNCONVERGED");
        }
        s.push('\n');
    }
    s
}

/// The curve as CSV, or the scalars alone when there is no sweep.
pub fn csv(cfg: &Config, report: &Report) -> String {
    let mut s = header(cfg, report);
    match &report.curve {
        Some(c) => {
            let _ = writeln!(s, "{},converged", c.columns.join(","));
            for (row, ok) in c.rows.iter().zip(&c.converged) {
                let cells: Vec<String> = row.iter().map(|&x| num(x)).collect();
                let _ = writeln!(s, "{},{}", cells.join(","), ok);
            }
        }
        None => {
            s.push_str("name,value,error,unit,converged\n");
            for sc in &report.scalars {
                let e = sc.error.map(num).unwrap_or_default();
                let _ = writeln!(s, "{},{},{},{},{}", sc.name, num(sc.value), e, sc.unit, sc.converged);
            }
        }
    }
    s
}

/// Recovers the config embedded in a CSV written by [`csv`].
pub fn config_from_csv(text: &str) -> Result<Config, ConfigError> {
    let mut toml = String::new();
    for line in text.lines() {
        if line == "#" {
            toml.push('\n');
        } else if let Some(rest) = line.strip_prefix("# ") {
            toml.push_str(rest);
            toml.push('\n');
        } else if !line.starts_with('#') {
            break;
        }
    }
    Config::parse(&toml)
}

pub fn gnuplot(report: &Report, csv_name: &str, label: &str) -> Option<String> {
    let c = report.curve.as_ref()?;
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set key autotitle columnhead");
    let _ = writeln!(s, "set title '{label}' noenhanced");
    let _ = writeln!(s, "set xlabel '{}' noenhanced", c.columns[0]);
    let _ = writeln!(s, "set ylabel '{}' noenhanced", c.columns[1]);
    if c.log_x {
        s.push_str("set logscale x\n");
    }
    if c.log_y {
        s.push_str("set logscale y\n");
        let _ = writeln!(s, "plot '{csv_name}' using 1:(abs(${})) with linespoints", 2);
    } else {
        let _ = writeln!(s, "plot '{csv_name}' using 1:2 with linespoints");
    }
    Some(s)
}

/// Flat map of the scalars and their errors.
pub fn json(cfg: &Config, report: &Report) -> String {
    let mut m = Map::new();
    m.insert("scenario".into(), Value::from(report.scenario.as_str()));
    m.insert("label".into(), Value::from(cfg.label.clone().unwrap_or_default()));
    m.insert("version".into(), Value::from(VERSION));
    m.insert("converged".into(), Value::from(report.unconverged().is_empty()));
    for sc in &report.scalars {
        m.insert(sc.name.clone(), Value::from(sc.value));
        if let Some(e) = sc.error {
            m.insert(format!("{}_error", sc.name), Value::from(e));
        }
    }
    m.insert("notes".into(), Value::from(report.notes.clone()));
    serde_json::to_string_pretty(&Value::Object(m)).expect("json") + "\n"
}
