//! Fixed-step RK4 integration of the τ-ODE with a first-integral drift
//! monitor as the a-posteriori error gauge.

use super::{first_integral, first_integral_scale, tau_rhs, TauState};
use crate::core_model::PhysParams;
use crate::error::{Error, Result};

/// Default integration step.
pub const DEFAULT_DT: f64 = 1e-3;

/// Per-step relative drift of the first integral that triggers rejection.
pub const STEP_DRIFT_LIMIT: f64 = 1e-6;

/// A fixed-step trajectory of the τ-ODE.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<TauState>,
    /// max over steps of |C(t) − C(0)| / scale.
    pub max_rel_drift: f64,
}

impl Trajectory {
    pub fn rows(&self) -> impl Iterator<Item = (f64, TauState)> + '_ {
        self.times.iter().copied().zip(self.states.iter().copied())
    }

    pub fn last(&self) -> (f64, TauState) {
        (*self.times.last().unwrap(), *self.states.last().unwrap())
    }

    /// Cubic Hermite interpolation of (τ, τ̇) at an arbitrary time inside the
    /// integration window.
    pub fn sample(&self, t: f64, params: &PhysParams) -> Result<TauState> {
        let dt = self.times[1] - self.times[0];
        let i = (((t - self.times[0]) / dt).floor() as usize).min(self.states.len() - 2);
        let t0 = self.times[i];
        hermite(self.states[i], self.states[i + 1], dt, t - t0, params)
    }
}

/// One classical RK4 step on (τ, τ̇). Errors if any stage leaves τ > 0.
pub(crate) fn rk4_step(s: &TauState, params: &PhysParams, dt: f64, t: f64) -> Result<TauState> {
    let f = |st: &TauState| -> Result<(f64, f64)> {
        if !(st.tau > 0.0) {
            return Err(Error::NonPositiveTau { t });
        }
        Ok((st.tau_dot, tau_rhs(st, params)?))
    };
    let k1 = f(s)?;
    let s2 = TauState { tau: s.tau + 0.5 * dt * k1.0, tau_dot: s.tau_dot + 0.5 * dt * k1.1 };
    let k2 = f(&s2)?;
    let s3 = TauState { tau: s.tau + 0.5 * dt * k2.0, tau_dot: s.tau_dot + 0.5 * dt * k2.1 };
    let k3 = f(&s3)?;
    let s4 = TauState { tau: s.tau + dt * k3.0, tau_dot: s.tau_dot + dt * k3.1 };
    let k4 = f(&s4)?;
    let next = TauState {
        tau: s.tau + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        tau_dot: s.tau_dot + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    };
    if !(next.tau > 0.0) {
        return Err(Error::NonPositiveTau { t: t + dt });
    }
    Ok(next)
}

/// Stepper that carries the drift monitor; shared by `integrate_tau`,
/// classification, and portrait sampling.
pub(crate) struct TauStepper<'a> {
    pub state: TauState,
    pub t: f64,
    dt: f64,
    params: &'a PhysParams,
    c_prev: f64,
    c0: f64,
    pub max_rel_drift: f64,
}

impl<'a> TauStepper<'a> {
    pub fn new(init: TauState, params: &'a PhysParams, dt: f64) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::Domain(format!("dt = {dt} must be > 0")));
        }
        let c0 = first_integral(&init, params)?;
        Ok(Self { state: init, t: 0.0, dt, params, c_prev: c0, c0, max_rel_drift: 0.0 })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn advance(&mut self) -> Result<()> {
        let next = rk4_step(&self.state, self.params, self.dt, self.t)?;
        let c = first_integral(&next, self.params)?;
        let scale = first_integral_scale(&next, self.params);
        let step_drift = (c - self.c_prev).abs() / scale;
        if step_drift > STEP_DRIFT_LIMIT {
            return Err(Error::StepRejected { t: self.t + self.dt, drift: step_drift });
        }
        self.max_rel_drift = self.max_rel_drift.max((c - self.c0).abs() / scale);
        self.c_prev = c;
        self.state = next;
        self.t += self.dt;
        Ok(())
    }
}

/// Integrate the τ-ODE from `init` to `t_end` with fixed step `dt`.
///
/// The first integral is monitored every step; a per-step relative drift
/// above [`STEP_DRIFT_LIMIT`] yields `StepRejected` (the caller must reduce
/// `dt`). τ ≤ 0 at any stage is a solver-bug signal, never an expected
/// outcome.
pub fn integrate_tau(
    init: TauState,
    params: &PhysParams,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    if !(t_end >= 0.0) {
        return Err(Error::Domain(format!("t_end = {t_end} must be >= 0")));
    }
    let mut stepper = TauStepper::new(init, params, dt)?;
    let n_steps = (t_end / dt).round() as usize;
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut states = Vec::with_capacity(n_steps + 1);
    times.push(0.0);
    states.push(init);
    for _ in 0..n_steps {
        stepper.advance()?;
        times.push(stepper.t);
        states.push(stepper.state);
    }
    Ok(Trajectory { times, states, max_rel_drift: stepper.max_rel_drift })
}

/// Cubic Hermite interpolation between two states a step `dt` apart,
/// evaluated at offset `s` ∈ [0, dt]. Derivatives of τ̇ come from the ODE.
fn hermite(a: TauState, b: TauState, dt: f64, s: f64, params: &PhysParams) -> Result<TauState> {
    let x = s / dt;
    let h00 = (1.0 + 2.0 * x) * (1.0 - x) * (1.0 - x);
    let h10 = x * (1.0 - x) * (1.0 - x);
    let h01 = x * x * (3.0 - 2.0 * x);
    let h11 = x * x * (x - 1.0);
    let fa = tau_rhs(&a, params)?;
    let fb = tau_rhs(&b, params)?;
    Ok(TauState {
        tau: h00 * a.tau + h10 * dt * a.tau_dot + h01 * b.tau + h11 * dt * b.tau_dot,
        tau_dot: h00 * a.tau_dot + h10 * dt * fa + h01 * b.tau_dot + h11 * dt * fb,
    })
}

/// A τ̇ = 0 event located by sign change and Hermite refinement.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TurningPoint {
    pub t: f64,
    pub tau: f64,
    /// true if a minimum of τ (τ̈ > 0).
    pub is_minimum: bool,
}

/// Locate τ̇ = 0 inside a step bracketed by a sign change, by bisection on the
/// Hermite interpolant.
pub(crate) fn refine_turning(
    a: TauState,
    b: TauState,
    t_a: f64,
    dt: f64,
    params: &PhysParams,
) -> Result<TurningPoint> {
    let mut lo = 0.0;
    let mut hi = dt;
    let sign_lo = a.tau_dot >= 0.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let st = hermite(a, b, dt, mid, params)?;
        if (st.tau_dot >= 0.0) == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = 0.5 * (lo + hi);
    let st = hermite(a, b, dt, s, params)?;
    Ok(TurningPoint { t: t_a + s, tau: st.tau, is_minimum: tau_rhs(&st, params)? > 0.0 })
}
