//! CSV and key=value summary emission. All CSVs use '.' decimals, comma
//! delimiters, and a header row; metadata rides in `#`-prefixed comment
//! lines above the header.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::core_model::WaveField;
use crate::error::Result;
use crate::gaussian_ode::Orbit;
use crate::pde_solver::ObservableRow;

pub struct CsvWriter {
    out: BufWriter<File>,
}

impl CsvWriter {
    pub fn create(path: &Path) -> Result<Self> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        Ok(Self { out: BufWriter::new(File::create(path)?) })
    }

    pub fn comment(&mut self, text: &str) -> Result<()> {
        writeln!(self.out, "# {text}")?;
        Ok(())
    }

    pub fn header(&mut self, columns: &[&str]) -> Result<()> {
        writeln!(self.out, "{}", columns.join(","))?;
        Ok(())
    }

    pub fn row(&mut self, values: &[f64]) -> Result<()> {
        let mut first = true;
        for v in values {
            if !first {
                write!(self.out, ",")?;
            }
            write!(self.out, "{v:.12e}")?;
            first = false;
        }
        writeln!(self.out)?;
        Ok(())
    }

    pub fn raw_row(&mut self, values: &[String]) -> Result<()> {
        writeln!(self.out, "{}", values.join(","))?;
        Ok(())
    }
}

/// Snapshot CSV: x, re(u), im(u) with the time and parameters in the header
/// comment (1D fields).
pub fn write_snapshot(path: &Path, u: &WaveField, t: f64, params_desc: &str) -> Result<()> {
    let mut w = CsvWriter::create(path)?;
    w.comment(&format!("t={t} {params_desc}"))?;
    w.header(&["x", "re_u", "im_u"])?;
    let xs = u.grid().axis_coords();
    for (x, v) in xs.iter().zip(u.values()) {
        w.row(&[*x, v.re, v.im])?;
    }
    Ok(())
}

/// Observables CSV: t, mass, energy, sigma_norm, xmean, variance, supnorm.
pub fn write_observables(path: &Path, rows: &[ObservableRow], params_desc: &str) -> Result<()> {
    let mut w = CsvWriter::create(path)?;
    w.comment(params_desc)?;
    w.header(&["t", "mass", "energy", "sigma_norm", "xmean", "variance", "supnorm"])?;
    for r in rows {
        w.row(&[r.t, r.mass, r.energy, r.sigma_norm, r.xmean, r.variance, r.supnorm])?;
    }
    Ok(())
}

/// Orbit CSV: t, tau, tau_dot, first_integral.
pub fn write_orbit(path: &Path, orbit: &Orbit, params_desc: &str) -> Result<()> {
    let mut w = CsvWriter::create(path)?;
    w.comment(&format!(
        "tau0={} taudot0={} {params_desc}",
        orbit.init.tau, orbit.init.tau_dot
    ))?;
    w.header(&["t", "tau", "tau_dot", "first_integral"])?;
    for r in &orbit.rows {
        w.row(&[r.t, r.tau, r.tau_dot, r.first_integral])?;
    }
    Ok(())
}

/// Ordered key=value summary; the machine-readable contract of every command.
#[derive(Debug, Default, Clone)]
pub struct Summary {
    entries: Vec<(String, String)>,
}

impl Summary {
    pub fn new(command: &str) -> Self {
        let mut s = Self::default();
        s.push_str("command", command);
        s
    }

    pub fn push_str(&mut self, key: &str, value: &str) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn push_f64(&mut self, key: &str, value: f64) {
        self.entries.push((key.to_string(), format!("{value:.12e}")));
    }

    pub fn push_usize(&mut self, key: &str, value: usize) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn push_bool(&mut self, key: &str, value: bool) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let mut out = BufWriter::new(File::create(path)?);
        for (k, v) in &self.entries {
            writeln!(out, "{k}={v}")?;
        }
        Ok(())
    }

    /// Parse a key=value summary file (used by tests and downstream tools).
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut s = Self::default();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((k, v)) = line.split_once('=') {
                s.push_str(k.trim(), v.trim());
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_roundtrip() {
        let dir = std::env::temp_dir().join("lognls_csv_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("summary.txt");
        let mut s = Summary::new("demo");
        s.push_f64("value", 1.25e-3);
        s.push_bool("pass", true);
        s.write(&path).unwrap();
        let back = Summary::read(&path).unwrap();
        assert_eq!(back.get("command"), Some("demo"));
        assert_eq!(back.get("pass"), Some("true"));
        assert!(back.get("value").unwrap().starts_with("1.25"));
    }
}
