//! instability-translate: drive a slightly shifted Gausson with the exact
//! translation transform (the analytic solution), record the modulation
//! distance to the gauge orbit, find the time it crosses half the Gausson
//! norm, and cross-check a short horizon against the PDE solver.
//!
//! The exact transform, not the PDE, is the long-horizon engine: the
//! periodic box cannot host cosh-growth trajectories for long.

use std::path::Path;

use super::{params_desc, plot_enabled, warn_plot_failure, ExperimentConfig, Report};
use crate::core_model::{
    gausson_field, gausson_specs, sigma_distance, GaussonBranch, Grid, Regime, WaveField,
};
use crate::core_model::{GaussonSpec, PhysParams};
use crate::csv_io::{CsvWriter, Summary};
use crate::error::{Error, Result};
use crate::invariances::apply_translation;
use crate::pde_solver::{evolve, mod_distance, suggested_dt, SolverConfig};
use crate::plotting;

const T_STAR_REL_TOL: f64 = 0.01;
const PDE_DEFECT_TOL: f64 = 1e-4;
const CURVE_SAMPLES: usize = 400;

/// Closed-form overlap oracle: ‖φ(·−s) − φ‖² = 2‖φ‖²(1 − e^{−ks²/4}).
fn shifted_distance_closed(phi_mass: f64, k: f64, s: f64) -> f64 {
    (2.0 * phi_mass * (1.0 - (-k * s * s / 4.0).exp())).max(0.0).sqrt()
}

/// Crossing time of the closed-form curve: s* with 2(1 − e^{−ks²/4}) = 1/4,
/// then t* = arccosh(s*/x₀)/ω.
fn t_star_closed(k: f64, x0: f64, omega: f64) -> f64 {
    let s_star = (-4.0 * (7.0f64 / 8.0).ln() / k).sqrt();
    if s_star <= x0 {
        return 0.0;
    }
    (s_star / x0).acosh() / omega
}

struct BranchResult {
    label: &'static str,
    t_star: f64,
    t_star_oracle: f64,
    rel_diff: f64,
    sigma_dist: f64,
    max_pde_defect: f64,
}

pub fn cmd_instability_translate(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Report> {
    let p = cfg.phys_params()?;
    match p.regime() {
        Regime::TwoGaussons | Regime::Degenerate => {}
        other => {
            return Err(Error::Regime(format!(
                "instability-translate needs a Gausson regime, got {other:?}"
            )))
        }
    }
    let x0 = cfg.f64_or("x0", 0.05)?;
    if !(x0 >= 0.0) {
        return Err(Error::Config(format!("x0 = {x0} must be >= 0")));
    }
    let eta = cfg.f64_or("eta", 0.5)?;
    let t_star_max = cfg.f64_or("t_star_max", 8.0)?;

    let wanted = cfg.str_or("branch", "both");
    let specs: Vec<_> = gausson_specs(&p)
        .into_iter()
        .filter(|s| match wanted {
            "both" => true,
            "plus" => s.branch != GaussonBranch::Minus,
            "minus" => s.branch != GaussonBranch::Plus,
            _ => true,
        })
        .collect();
    if !["both", "plus", "minus"].contains(&wanted) {
        return Err(Error::Config(format!("branch must be plus|minus|both, got '{wanted}'")));
    }

    let mut summary = Summary::new("instability-translate");
    summary.push_f64("x0", x0);
    summary.push_f64("eta", eta);
    let mut pass = true;
    let mut curves = Vec::new();

    for spec in &specs {
        let r = run_branch(cfg, out_dir, &p, spec, x0, t_star_max, &mut curves)?;
        summary.push_f64(&format!("t_star_{}", r.label), r.t_star);
        summary.push_f64(&format!("t_star_oracle_{}", r.label), r.t_star_oracle);
        summary.push_f64(&format!("t_star_rel_diff_{}", r.label), r.rel_diff);
        summary.push_f64(&format!("sigma_distance_{}", r.label), r.sigma_dist);
        summary.push_f64(&format!("max_pde_defect_{}", r.label), r.max_pde_defect);
        pass &= r.rel_diff <= T_STAR_REL_TOL;
        pass &= r.max_pde_defect <= PDE_DEFECT_TOL;
        pass &= x0 == 0.0 || r.sigma_dist < eta;
    }

    if plot_enabled(cfg) {
        if let Err(e) = plotting::line_chart(
            &out_dir.join("mod_distance.svg"),
            "Modulation distance of the translated Gausson",
            "t",
            "inf_theta ||u - e^{i theta} phi||",
            &curves,
            false,
        ) {
            warn_plot_failure("mod_distance.svg", e);
        }
    }

    Report::finish(summary, pass, out_dir)
}

fn run_branch(
    cfg: &ExperimentConfig,
    out_dir: &Path,
    p: &PhysParams,
    spec: &GaussonSpec,
    x0: f64,
    t_star_max: f64,
    curves: &mut Vec<plotting::Series>,
) -> Result<BranchResult> {
    let label = match spec.branch {
        GaussonBranch::Minus => "minus",
        GaussonBranch::Plus => "plus",
        GaussonBranch::Degenerate => "degenerate",
    };
    let k = spec.k;

    // horizon: just past the predicted crossing, capped by config
    let t_oracle = t_star_closed(k, x0.max(1e-12), p.omega);
    let t_max = (t_oracle + 1.0).min(t_star_max).max(1.0);

    // the box must hold the shifted Gaussian at the horizon
    let max_shift = x0 * (p.omega * t_max).cosh();
    let needed_l = 2.0 * max_shift + 14.0 / k.sqrt();
    let base = super::grid_from_config(cfg, 40.0, 2048)?;
    let grid = if base.length() >= needed_l && base.adequate_for(k) {
        base
    } else {
        Grid::adequate(k, needed_l.max(base.length()), 1)?
    };

    let phi = gausson_field(spec, p, grid)?;
    let phi_norm = phi.l2_norm();
    let target = 0.5 * phi_norm;

    let transformed = |t: f64| -> Result<WaveField> { apply_translation(&phi, &[x0], t, p.omega) };

    let u0 = transformed(0.0)?;
    let sigma_dist = sigma_distance(&u0, &phi)?;

    // modulation-distance curve via the exact transform
    let mut w = CsvWriter::create(&out_dir.join(format!("translate_{label}.csv")))?;
    w.comment(&format!("k={k} x0={x0} {}", params_desc(p)))?;
    w.header(&["t", "mod_distance", "closed_form_bound"])?;
    let mut points = Vec::with_capacity(CURVE_SAMPLES + 1);
    let mut crossing_bracket = None;
    let mut prev = (0.0, 0.0);
    for i in 0..=CURVE_SAMPLES {
        let t = t_max * i as f64 / CURVE_SAMPLES as f64;
        let d = mod_distance(&transformed(t)?, &phi)?;
        let s = x0 * (p.omega * t).cosh();
        let bound = shifted_distance_closed(phi.mass(), k, s);
        w.row(&[t, d, bound])?;
        points.push((t, d));
        if crossing_bracket.is_none() && i > 0 && prev.1 < target && d >= target {
            crossing_bracket = Some((prev.0, t));
        }
        prev = (t, d);
    }
    curves.push(plotting::Series { label: format!("k_{label}"), points });

    let t_star = match crossing_bracket {
        Some((mut lo, mut hi)) => {
            for _ in 0..50 {
                let mid = 0.5 * (lo + hi);
                if mod_distance(&transformed(mid)?, &phi)? < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        }
        None => f64::NAN,
    };
    let rel_diff = if x0 == 0.0 {
        // distance is identically zero; nothing to cross
        0.0
    } else {
        ((t_star - t_oracle) / t_oracle).abs()
    };

    // short-horizon PDE cross-check against the exact transform
    let dt = cfg.f64_or("dt", suggested_dt(p, grid.length()))?;
    let solver = SolverConfig {
        dt,
        t_end: cfg.f64_or("t_end", 2.0)?,
        reg: cfg.f64_or("reg", crate::core_model::DEFAULT_REG)?,
        boundary_mass_limit: cfg.f64_or("boundary_mass_limit", 1e-6)?,
        record_every: cfg.usize_or("record_every", 200)?,
    };
    let ev = evolve(&u0, p, &solver)?;
    let mut max_defect: f64 = 0.0;
    let mut wp = CsvWriter::create(&out_dir.join(format!("pde_crosscheck_{label}.csv")))?;
    wp.comment(&format!("k={k} x0={x0} dt={dt} {}", params_desc(p)))?;
    wp.header(&["t", "l2_defect"])?;
    for (t, u) in &ev.snapshots {
        let exact = transformed(*t)?;
        let defect = u.l2_distance(&exact)?;
        max_defect = max_defect.max(defect);
        wp.row(&[*t, defect])?;
    }

    Ok(BranchResult {
        label,
        t_star,
        t_star_oracle: t_oracle,
        rel_diff,
        sigma_dist,
        max_pde_defect: max_defect,
    })
}
