//! dispersion: integrate the τ-ODE, fit the exponential growth of τ against
//! ω, and reconstruct the sup-norm decay |b| ∝ τ^{−d/2} of the Gaussian
//! solution. In a Gausson regime with bounded data the same fit reports no
//! decay, as the regime contrast.

use std::path::Path;

use super::{params_desc, plot_enabled, warn_plot_failure, ExperimentConfig, Report};
use crate::core_model::Regime;
use crate::csv_io::{CsvWriter, Summary};
use crate::error::Result;
use crate::gaussian_ode::{integrate_tau, TauState, DEFAULT_DT};
use crate::plotting;

const SLOPE_REL_TOL: f64 = 0.05;

fn least_squares_slope(xy: &[(f64, f64)]) -> f64 {
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xy {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

pub fn cmd_dispersion(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Report> {
    let p = cfg.phys_params()?;
    let tau0 = cfg.f64_or("tau0", 1.0)?;
    let taudot0 = cfg.f64_or("taudot0", 0.0)?;
    let t_end = cfg.f64_or("t_end", 10.0)?;
    let dt = cfg.f64_or("dt", DEFAULT_DT)?;
    let d = p.dim as f64;

    let init = TauState::new(tau0, taudot0)?;
    let traj = integrate_tau(init, &p, t_end, dt)?;

    let mut w = CsvWriter::create(&out_dir.join("dispersion.csv"))?;
    w.comment(&format!("tau0={tau0} taudot0={taudot0} {}", params_desc(&p)))?;
    w.header(&["t", "tau", "tau_dot", "log_tau", "supnorm"])?;
    let mut log_curve = Vec::new();
    let mut sup_curve = Vec::new();
    for (t, s) in traj.rows() {
        // |b| = |b0| sqrt(tau0/tau); sup|u| = |b|^d with b0 = 1
        let sup = (tau0 / s.tau).powf(d / 2.0);
        w.row(&[t, s.tau, s.tau_dot, s.tau.ln(), sup])?;
        log_curve.push((t, s.tau.ln()));
        sup_curve.push((t, sup.ln()));
    }

    // fit on the second half of the run, where the growth is settled
    let t_lo = t_end / 2.0;
    let window: Vec<(f64, f64)> = log_curve.iter().filter(|(t, _)| *t >= t_lo).cloned().collect();
    let slope = least_squares_slope(&window);
    let sup_window: Vec<(f64, f64)> =
        sup_curve.iter().filter(|(t, _)| *t >= t_lo).cloned().collect();
    let sup_exponent = least_squares_slope(&sup_window);

    let dispersive = p.regime() == Regime::NoStationary && p.lambda < 0.0;
    let mut summary = Summary::new("dispersion");
    summary.push_str("regime", &format!("{:?}", p.regime()));
    summary.push_f64("log_tau_slope", slope);
    summary.push_f64("sup_exponent", sup_exponent);
    summary.push_f64("first_integral_drift", traj.max_rel_drift);

    let pass = if dispersive {
        // tau ~ e^{omega t}: slope -> omega, sup-norm exponent -> -d omega/2
        let expected_sup = -d * p.omega / 2.0;
        summary.push_f64("expected_slope", p.omega);
        summary.push_f64("expected_sup_exponent", expected_sup);
        (slope - p.omega).abs() / p.omega <= SLOPE_REL_TOL
            && (sup_exponent - expected_sup).abs() / expected_sup.abs() <= SLOPE_REL_TOL
    } else {
        // regime contrast: bounded data, no decay
        summary.push_f64("expected_slope", 0.0);
        summary.push_f64("expected_sup_exponent", 0.0);
        slope.abs() <= SLOPE_REL_TOL && sup_exponent.abs() <= SLOPE_REL_TOL
    };

    if plot_enabled(cfg) {
        if let Err(e) = plotting::line_chart(
            &out_dir.join("dispersion.svg"),
            "Gaussian width growth",
            "t",
            "ln tau",
            &[plotting::Series { label: "ln tau".into(), points: log_curve }],
            false,
        ) {
            warn_plot_failure("dispersion.svg", e);
        }
    }

    Report::finish(summary, pass, out_dir)
}
