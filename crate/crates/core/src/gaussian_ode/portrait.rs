//! Phase portraits of the τ-ODE: integrated orbit curves through a window of
//! the (τ, τ̇) plane, with stationary points marked.

use super::integrate::TauStepper;
use super::{first_integral, stationary_taus, TauState};
use crate::core_model::PhysParams;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct OrbitRow {
    pub t: f64,
    pub tau: f64,
    pub tau_dot: f64,
    pub first_integral: f64,
}

#[derive(Debug, Clone)]
pub struct Orbit {
    pub init: TauState,
    pub rows: Vec<OrbitRow>,
}

#[derive(Debug, Clone)]
pub struct Portrait {
    /// Stationary τ values (τ̇ = 0), ascending.
    pub stationary: Vec<f64>,
    pub orbits: Vec<Orbit>,
}

const ORBIT_T_MAX: f64 = 20.0;
const MAX_ROWS_PER_ORBIT: usize = 4000;

/// Integrate a bundle of orbits through the window
/// `tau_range` × `taudot_range` (positive τ only).
///
/// Half the initial conditions sit on the τ̇ = 0 axis, half enter from the
/// right edge; each orbit is followed until it leaves a margin around the
/// window or `t = 20` elapses.
pub fn phase_portrait(
    params: &PhysParams,
    tau_range: (f64, f64),
    taudot_range: (f64, f64),
    n_orbits: usize,
) -> Result<Portrait> {
    if !(tau_range.0 > 0.0 && tau_range.1 > tau_range.0) {
        return Err(Error::Domain(format!(
            "tau range ({}, {}) must be positive and increasing",
            tau_range.0, tau_range.1
        )));
    }
    if !(taudot_range.1 > taudot_range.0) {
        return Err(Error::Domain("empty taudot range".into()));
    }
    if n_orbits == 0 {
        return Err(Error::Domain("n_orbits must be positive".into()));
    }

    let mut inits = Vec::with_capacity(n_orbits);
    let n_axis = n_orbits.div_ceil(2);
    for i in 0..n_axis {
        let f = (i as f64 + 0.5) / n_axis as f64;
        inits.push(TauState { tau: tau_range.0 + f * (tau_range.1 - tau_range.0), tau_dot: 0.0 });
    }
    let n_edge = n_orbits - n_axis;
    for i in 0..n_edge {
        let f = (i as f64 + 0.5) / n_edge as f64;
        inits.push(TauState {
            tau: tau_range.1,
            tau_dot: taudot_range.0 + f * (taudot_range.1 - taudot_range.0),
        });
    }

    let orbits = inits
        .into_iter()
        .map(|init| trace_orbit(init, params, tau_range, taudot_range))
        .collect::<Result<Vec<_>>>()?;

    Ok(Portrait { stationary: stationary_taus(params), orbits })
}

fn trace_orbit(
    init: TauState,
    params: &PhysParams,
    tau_range: (f64, f64),
    taudot_range: (f64, f64),
) -> Result<Orbit> {
    let dt = super::DEFAULT_DT;
    let mut stepper = TauStepper::new(init, params, dt)?;
    let stride = ((ORBIT_T_MAX / dt) as usize / MAX_ROWS_PER_ORBIT).max(1);

    // margins so curves visibly exit the plot window
    let tau_hi = tau_range.1 * 1.5;
    let tau_lo = tau_range.0 * 0.5;
    let td_margin = 1.5 * taudot_range.1.abs().max(taudot_range.0.abs());

    let mut rows = vec![OrbitRow {
        t: 0.0,
        tau: init.tau,
        tau_dot: init.tau_dot,
        first_integral: first_integral(&init, params)?,
    }];
    let mut step = 0usize;
    while stepper.t < ORBIT_T_MAX {
        stepper.advance()?;
        step += 1;
        let s = stepper.state;
        if step % stride == 0 {
            rows.push(OrbitRow {
                t: stepper.t,
                tau: s.tau,
                tau_dot: s.tau_dot,
                first_integral: first_integral(&s, params)?,
            });
        }
        if s.tau > tau_hi || s.tau < tau_lo || s.tau_dot.abs() > td_margin {
            break;
        }
    }
    Ok(Orbit { init, rows })
}
