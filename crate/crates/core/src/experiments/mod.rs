//! Command-line experiments: each runs one of the named studies end to end,
//! emits CSVs (the machine contract), a key=value summary, and best-effort
//! SVG plots.

mod config;
mod dispersion_cmd;
mod gausson_check;
mod instability_gaussian;
mod instability_translate;
mod invariance_check;
mod nehari_cmd;
mod portrait_cmd;

pub use config::{ExperimentConfig, KNOWN_KEYS};
pub use dispersion_cmd::cmd_dispersion;
pub use gausson_check::cmd_gausson_check;
pub use instability_gaussian::cmd_instability_gaussian;
pub use instability_translate::cmd_instability_translate;
pub use invariance_check::cmd_invariance_check;
pub use nehari_cmd::cmd_nehari_witness;
pub use portrait_cmd::cmd_phase_portrait;

use std::path::{Path, PathBuf};

use crate::core_model::{Grid, PhysParams};
use crate::csv_io::Summary;
use crate::error::Result;

/// Outcome of a command: the summary that was written and the overall
/// verdict (exit code 1 when `pass` is false).
#[derive(Debug, Clone)]
pub struct Report {
    pub summary: Summary,
    pub pass: bool,
    pub out_dir: PathBuf,
}

impl Report {
    fn finish(mut summary: Summary, pass: bool, out_dir: &Path) -> Result<Report> {
        summary.push_bool("pass", pass);
        summary.write(&out_dir.join("summary.txt"))?;
        Ok(Report { summary, pass, out_dir: out_dir.to_path_buf() })
    }
}

fn grid_from_config(cfg: &ExperimentConfig, default_l: f64, default_n: usize) -> Result<Grid> {
    let l = cfg.f64_or("grid.L", default_l)?;
    let n = cfg.usize_or("grid.N", default_n)?;
    Grid::new_1d(l, n)
}

fn params_desc(p: &PhysParams) -> String {
    format!("lambda={} omega={} dim={}", p.lambda, p.omega, p.dim)
}

fn plot_enabled(cfg: &ExperimentConfig) -> bool {
    cfg.bool_or("plot", true).unwrap_or(true)
}

fn warn_plot_failure(what: &str, err: anyhow::Error) {
    eprintln!("warning: could not render {what}: {err} (CSV output is unaffected)");
}
