//! gausson-check: build every Gausson the regime admits, verify the root
//! equation, the stationary residual, the closed-form vs grid mass, the mass
//! ordering, and short-horizon PDE stationarity.

use std::path::Path;

use super::{grid_from_config, params_desc, plot_enabled, warn_plot_failure, ExperimentConfig, Report};
use crate::core_model::{
    gausson_field, gausson_k, gausson_mass, gausson_specs, stationary_residual, GaussonBranch,
    Regime,
};
use crate::csv_io::{CsvWriter, Summary};
use crate::error::{Error, Result};
use crate::pde_solver::{evolve, mod_distance, suggested_dt, SolverConfig};
use crate::plotting;

const RESIDUAL_TOL: f64 = 1e-6;
const MASS_TOL: f64 = 1e-6;
const MOD_DISTANCE_TOL: f64 = 1e-5;

fn branch_label(branch: GaussonBranch) -> &'static str {
    match branch {
        GaussonBranch::Minus => "minus",
        GaussonBranch::Plus => "plus",
        GaussonBranch::Degenerate => "degenerate",
    }
}

pub fn cmd_gausson_check(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Report> {
    let p = cfg.phys_params()?;
    match p.regime() {
        Regime::TwoGaussons | Regime::Degenerate => {}
        other => {
            return Err(Error::Regime(format!(
                "gausson-check needs the two-Gausson or degenerate regime, got {other:?} \
                 (lambda={}, omega={})",
                p.lambda, p.omega
            )))
        }
    }
    let grid = grid_from_config(cfg, 40.0, 2048)?;
    let dt = cfg.f64_or("dt", suggested_dt(&p, grid.length()))?;
    let t_end = cfg.f64_or("t_end", 2.0)?;
    let reg = cfg.f64_or("reg", crate::core_model::DEFAULT_REG)?;
    let solver = SolverConfig {
        dt,
        t_end,
        reg,
        boundary_mass_limit: cfg.f64_or("boundary_mass_limit", 1e-6)?,
        record_every: cfg.usize_or("record_every", 200)?,
    };

    let mut summary = Summary::new("gausson-check");
    summary.push_str("regime", &format!("{:?}", p.regime()));
    if let Some((km, kp)) = gausson_k(&p) {
        summary.push_f64("k_minus", km);
        summary.push_f64("k_plus", kp);
        summary.push_f64("root_residual_minus", (km * km + 2.0 * p.lambda * km + p.omega * p.omega).abs());
        summary.push_f64("root_residual_plus", (kp * kp + 2.0 * p.lambda * kp + p.omega * p.omega).abs());
    }

    let mut pass = true;
    let mut masses = Vec::new();
    let mut series = Vec::new();

    for spec in gausson_specs(&p) {
        let label = branch_label(spec.branch);
        let phi = gausson_field(&spec, &p, grid)?;
        let norm = phi.l2_norm();

        let residual = stationary_residual(&phi, &p, 0.0);
        let mass_closed = gausson_mass(spec.k, p.lambda, p.dim)?;
        let mass_grid = phi.mass();
        let mass_err = (mass_grid - mass_closed).abs() / mass_closed;

        let ev = evolve(&phi, &p, &solver)?;
        let mut w = CsvWriter::create(&out_dir.join(format!("stationarity_{label}.csv")))?;
        w.comment(&format!("k={} {}", spec.k, params_desc(&p)))?;
        w.header(&["t", "mod_distance"])?;
        let mut max_mod: f64 = 0.0;
        let mut curve = Vec::new();
        for (t, u) in &ev.snapshots {
            let d = mod_distance(u, &phi)?;
            max_mod = max_mod.max(d);
            curve.push((*t, d));
            w.row(&[*t, d])?;
        }
        series.push(plotting::Series { label: format!("k_{label}"), points: curve });

        summary.push_f64(&format!("k_{label}"), spec.k);
        summary.push_f64(&format!("mass_closed_{label}"), mass_closed);
        summary.push_f64(&format!("mass_grid_{label}"), mass_grid);
        summary.push_f64(&format!("residual_{label}"), residual);
        summary.push_f64(&format!("residual_rel_{label}"), residual / norm);
        summary.push_f64(&format!("max_mod_distance_{label}"), max_mod);
        summary.push_f64(&format!("mass_drift_{label}"), ev.max_mass_drift);

        pass &= residual <= RESIDUAL_TOL * norm;
        pass &= mass_err <= MASS_TOL;
        pass &= max_mod <= MOD_DISTANCE_TOL;
        masses.push((spec.branch, mass_closed));
    }

    // Lemma ordering: the smaller root carries the larger mass
    if p.regime() == Regime::TwoGaussons {
        let m_minus = masses.iter().find(|(b, _)| *b == GaussonBranch::Minus).unwrap().1;
        let m_plus = masses.iter().find(|(b, _)| *b == GaussonBranch::Plus).unwrap().1;
        let ordered = m_minus > m_plus;
        summary.push_bool("mass_ordering_ok", ordered);
        pass &= ordered;
    }

    if plot_enabled(cfg) {
        if let Err(e) = plotting::line_chart(
            &out_dir.join("stationarity.svg"),
            "PDE stationarity of the Gaussons",
            "t",
            "inf_theta ||u - e^{i theta} phi||",
            &series,
            false,
        ) {
            warn_plot_failure("stationarity.svg", e);
        }
    }

    Report::finish(summary, pass, out_dir)
}
