//! phase-portrait: orbit curves through a (τ, τ̇) window plus a
//! classification census over a grid of initial conditions.

use std::path::Path;

use super::{params_desc, plot_enabled, warn_plot_failure, ExperimentConfig, Report};
use crate::core_model::Regime;
use crate::csv_io::{write_orbit, CsvWriter, Summary};
use crate::error::{Error, Result};
use crate::gaussian_ode::{classify_trajectory, phase_portrait, TauState, TrajectoryClass};
use crate::plotting;

pub fn cmd_phase_portrait(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Report> {
    let p = cfg.phys_params()?;
    let tau_range = (cfg.f64_or("tau.min", 0.25)?, cfg.f64_or("tau.max", 2.75)?);
    let taudot_range = (cfg.f64_or("taudot.min", -2.0)?, cfg.f64_or("taudot.max", 2.0)?);
    let n_orbits = cfg.usize_or("n_orbits", 24)?;
    let n_class = cfg.usize_or("class_grid.n", 10)?;

    let portrait = phase_portrait(&p, tau_range, taudot_range, n_orbits)?;

    let desc = params_desc(&p);
    let mut index = CsvWriter::create(&out_dir.join("portrait_index.csv"))?;
    index.comment(&desc)?;
    index.header(&["kind", "file", "tau0", "taudot0"])?;
    for (i, orbit) in portrait.orbits.iter().enumerate() {
        let file = format!("orbit_{i:03}.csv");
        write_orbit(&out_dir.join(&file), orbit, &desc)?;
        index.raw_row(&[
            "orbit".into(),
            file,
            format!("{:.12e}", orbit.init.tau),
            format!("{:.12e}", orbit.init.tau_dot),
        ])?;
    }
    for &tau in &portrait.stationary {
        index.raw_row(&["stationary".into(), String::new(), format!("{tau:.12e}"), "0".into()])?;
    }

    // classification census on cell centers (avoids landing exactly on
    // stationary points or the tau_dot = 0 axis)
    let mut counts = [0usize; 4]; // stationary, periodic, unbounded, inconclusive
    let mut census = CsvWriter::create(&out_dir.join("classification.csv"))?;
    census.comment(&desc)?;
    census.header(&["tau0", "taudot0", "class", "period_or_rate"])?;
    for i in 0..n_class {
        for j in 0..n_class {
            let tau0 = tau_range.0
                + (i as f64 + 0.5) * (tau_range.1 - tau_range.0) / n_class as f64;
            let taudot0 = taudot_range.0
                + (j as f64 + 0.5) * (taudot_range.1 - taudot_range.0) / n_class as f64;
            let init = TauState { tau: tau0, tau_dot: taudot0 };
            let (label, value) = match classify_trajectory(init, &p) {
                Ok(TrajectoryClass::Stationary) => {
                    counts[0] += 1;
                    ("stationary", 0.0)
                }
                Ok(TrajectoryClass::Periodic { period }) => {
                    counts[1] += 1;
                    ("periodic", period)
                }
                Ok(TrajectoryClass::Unbounded { growth_rate }) => {
                    counts[2] += 1;
                    ("unbounded", growth_rate)
                }
                Err(Error::Inconclusive { .. }) => {
                    counts[3] += 1;
                    ("inconclusive", f64::NAN)
                }
                Err(e) => return Err(e),
            };
            census.raw_row(&[
                format!("{tau0:.12e}"),
                format!("{taudot0:.12e}"),
                label.into(),
                format!("{value:.12e}"),
            ])?;
        }
    }

    // the figure topology expected from the regime
    let topology = match p.regime() {
        Regime::TwoGaussons => "center+saddle",
        Regime::Degenerate => "single-degenerate-point",
        Regime::NoStationary => "no-fixed-points",
        Regime::FlatGausson => "single-center",
    };
    let topology_ok = match p.regime() {
        Regime::TwoGaussons => {
            portrait.stationary.len() == 2 && counts[1] > 0 && counts[2] > 0
        }
        Regime::Degenerate => {
            portrait.stationary.len() == 1 && counts[1] == 0 && counts[2] > 0
        }
        Regime::NoStationary => {
            portrait.stationary.is_empty()
                && counts[0] == 0
                && counts[1] == 0
                && counts[2] > 0
        }
        Regime::FlatGausson => portrait.stationary.len() == 1 && counts[2] == 0,
    };

    let mut summary = Summary::new("phase-portrait");
    summary.push_str("regime", &format!("{:?}", p.regime()));
    summary.push_str("topology", topology);
    summary.push_usize("n_stationary_points", portrait.stationary.len());
    for (i, tau) in portrait.stationary.iter().enumerate() {
        summary.push_f64(&format!("stationary_tau_{i}"), *tau);
    }
    summary.push_usize("n_orbits", portrait.orbits.len());
    summary.push_usize("count_stationary", counts[0]);
    summary.push_usize("count_periodic", counts[1]);
    summary.push_usize("count_unbounded", counts[2]);
    summary.push_usize("count_inconclusive", counts[3]);
    summary.push_bool("topology_ok", topology_ok);

    // first-integral drift along every emitted orbit, scale-relative
    let mut drift: f64 = 0.0;
    for orbit in &portrait.orbits {
        let c0 = orbit.rows[0].first_integral;
        for row in &orbit.rows {
            let scale = (row.tau_dot * row.tau_dot)
                .max((4.0 * p.lambda * row.tau.ln()).abs())
                .max(1.0 / (row.tau * row.tau))
                .max(p.omega * p.omega * row.tau * row.tau)
                .max(1.0);
            drift = drift.max((row.first_integral - c0).abs() / scale);
        }
    }
    summary.push_f64("max_first_integral_drift", drift);

    let pass = counts[3] == 0 && topology_ok && drift <= 1e-8;

    if plot_enabled(cfg) {
        let curves: Vec<Vec<(f64, f64)>> = portrait
            .orbits
            .iter()
            .map(|o| o.rows.iter().map(|r| (r.tau, r.tau_dot)).collect())
            .collect();
        if let Err(e) = plotting::portrait_chart(
            &out_dir.join("portrait.svg"),
            &format!("Phase portrait ({desc})"),
            &curves,
            &portrait.stationary,
            tau_range,
            taudot_range,
        ) {
            warn_plot_failure("portrait.svg", e);
        }
    }

    Report::finish(summary, pass, out_dir)
}
