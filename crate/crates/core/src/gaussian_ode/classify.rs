//! Trajectory classification: the trichotomy stationary / periodic /
//! unbounded, decided by integration with an adaptive horizon, plus an
//! independent algebraic route through the first integral.

use super::integrate::{refine_turning, TauStepper, TurningPoint, DEFAULT_DT};
use super::{first_integral, linearized_rate, stationary_taus, tau_rhs, TauState};
use crate::core_model::{gausson_k, PhysParams};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrajectoryClass {
    Stationary,
    Periodic { period: f64 },
    Unbounded { growth_rate: f64 },
}

const STATIONARY_TOL: f64 = 1e-10;
const RETURN_TOL: f64 = 1e-6;
const ESCAPE_FACTOR: f64 = 100.0;

/// Horizon for the integration-based classifier: 10 linear periods of the
/// slowest stationary point, or 50/ω when there is none (or Ω_eff = 0).
fn classification_horizon(params: &PhysParams) -> f64 {
    let rates: Vec<f64> = stationary_taus(params)
        .iter()
        .map(|tau| linearized_rate(1.0 / (tau * tau), params).abs())
        .filter(|w| *w > 1e-12)
        .collect();
    match rates.iter().cloned().fold(f64::INFINITY, f64::min) {
        w if w.is_finite() => 10.0 * 2.0 * std::f64::consts::PI / w.sqrt(),
        _ => {
            if params.omega > 0.0 {
                50.0 / params.omega
            } else {
                50.0
            }
        }
    }
}

/// Classify a trajectory of the τ-ODE by integrating it.
///
/// Verdicts: `Stationary` if the initial state is within 1e−10 of a
/// stationary point; `Periodic` once the orbit returns to within 1e−6 of the
/// initial phase-space point after at least one τ̇ sign change; `Unbounded`
/// once τ exceeds 100·max(τ(0), stationary values) while convex and
/// increasing, with the growth rate fitted from the log-slope beyond that
/// point. Exhausting the horizon yields `Inconclusive` — reported, never
/// silently guessed.
pub fn classify_trajectory(init: TauState, params: &PhysParams) -> Result<TrajectoryClass> {
    if !(init.tau > 0.0) {
        return Err(Error::Domain(format!("tau = {} must be > 0", init.tau)));
    }
    let taus = stationary_taus(params);
    for &tau_s in &taus {
        if (init.tau - tau_s).hypot(init.tau_dot) <= STATIONARY_TOL {
            return Ok(TrajectoryClass::Stationary);
        }
    }

    let horizon = classification_horizon(params);
    let escape =
        ESCAPE_FACTOR * taus.iter().cloned().fold(init.tau, f64::max);

    // retry with smaller steps if the drift monitor rejects a fast orbit
    let mut last_err = None;
    for dt in [DEFAULT_DT, DEFAULT_DT / 10.0, DEFAULT_DT / 100.0] {
        match classify_with_dt(init, params, dt, horizon, escape) {
            Err(Error::StepRejected { .. }) => {
                last_err = Some(Error::StepRejected { t: 0.0, drift: 0.0 });
                continue;
            }
            other => return other,
        }
    }
    Err(last_err.unwrap_or(Error::Inconclusive { horizon }))
}

fn classify_with_dt(
    init: TauState,
    params: &PhysParams,
    dt: f64,
    horizon: f64,
    escape: f64,
) -> Result<TrajectoryClass> {
    let mut stepper = TauStepper::new(init, params, dt)?;
    let mut turns: Vec<TurningPoint> = Vec::new();
    let mut states = vec![init];

    while stepper.t < horizon {
        let prev = stepper.state;
        let t_prev = stepper.t;
        stepper.advance()?;
        let cur = stepper.state;
        states.push(cur);

        // unbounded: past the escape radius, convex and increasing
        if cur.tau > escape && cur.tau_dot > 0.0 && tau_rhs(&cur, params)? > 0.0 {
            let rate = fit_growth_rate(&mut stepper, params)?;
            return Ok(TrajectoryClass::Unbounded { growth_rate: rate });
        }

        // turning point: tau_dot sign change across the step
        if prev.tau_dot != 0.0 && (prev.tau_dot >= 0.0) != (cur.tau_dot >= 0.0) {
            turns.push(refine_turning(prev, cur, t_prev, dt, params)?);
            // time reversibility puts consecutive turning points exactly half
            // a period apart
            if let Some(period) = candidate_period(&turns) {
                let idx = (period / dt).floor() as usize;
                if idx + 1 < states.len() {
                    let s = sample_states(&states, dt, period, params)?;
                    let dist = (s.tau - init.tau).hypot(s.tau_dot - init.tau_dot);
                    if dist <= RETURN_TOL {
                        return Ok(TrajectoryClass::Periodic { period });
                    }
                }
            }
        }
    }
    Err(Error::Inconclusive { horizon })
}

fn candidate_period(turns: &[TurningPoint]) -> Option<f64> {
    let n = turns.len();
    if n < 2 {
        return None;
    }
    Some(2.0 * (turns[n - 1].t - turns[n - 2].t))
}

fn sample_states(states: &[TauState], dt: f64, t: f64, params: &PhysParams) -> Result<TauState> {
    let traj = super::Trajectory {
        times: (0..states.len()).map(|i| i as f64 * dt).collect(),
        states: states.to_vec(),
        max_rel_drift: 0.0,
    };
    traj.sample(t, params)
}

/// Log-slope of τ over a further 3/ω window after escape.
fn fit_growth_rate(stepper: &mut TauStepper, params: &PhysParams) -> Result<f64> {
    let window = if params.omega > 0.0 { 3.0 / params.omega } else { 5.0 };
    let mut ts = Vec::new();
    let mut logs = Vec::new();
    let t_stop = stepper.t + window;
    while stepper.t < t_stop {
        stepper.advance()?;
        ts.push(stepper.t);
        logs.push(stepper.state.tau.ln());
    }
    Ok(least_squares_slope(&ts, &logs))
}

pub(crate) fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        num += (xi - mx) * (yi - my);
        den += (xi - mx) * (xi - mx);
    }
    num / den
}

/// Independent algebraic classification through the first integral.
///
/// The motion obeys τ̇² = F(τ) with F(τ) = C₀ + 4λ ln τ − 1/τ² + ω²τ²; the
/// orbit fills the connected component of {F ≥ 0} containing τ(0), so it is
/// periodic exactly when that component is bounded. Since F′ = 2·rhs, F is
/// strictly monotone between stationary points, which makes the zero search
/// exact: walk the monotonicity segments and bisect where the sign flips.
/// Used as a cross-check for [`classify_trajectory`]; it never integrates
/// the ODE.
pub fn classify_by_first_integral(init: TauState, params: &PhysParams) -> Result<TrajectoryClass> {
    let c0 = first_integral(&init, params)?;
    let f = |tau: f64| -> f64 {
        c0 + 4.0 * params.lambda * tau.ln() - 1.0 / (tau * tau)
            + params.omega * params.omega * tau * tau
    };

    let criticals = stationary_taus(params);
    for &tau_s in &criticals {
        if (init.tau - tau_s).hypot(init.tau_dot) <= STATIONARY_TOL {
            return Ok(TrajectoryClass::Stationary);
        }
    }

    // right endpoint of the component containing tau0
    let mut pos = init.tau;
    let mut tau_b = None;
    for &b in criticals.iter().filter(|&&c| c > init.tau) {
        if f(b) < 0.0 {
            tau_b = Some(bisect(&f, pos, b, 200));
            break;
        }
        pos = b;
    }
    if tau_b.is_none() {
        if params.omega > 0.0 {
            // F is increasing past the last critical point and F(pos) >= 0,
            // so the component is unbounded to the right
            return Ok(TrajectoryClass::Unbounded { growth_rate: params.omega });
        }
        // omega = 0 with lambda < 0: 4 lambda ln tau eventually wins
        let mut hi = pos.max(1.0);
        while f(hi) >= 0.0 {
            hi *= 2.0;
            if hi > 1e280 {
                return Err(Error::Inconclusive { horizon: f64::INFINITY });
            }
        }
        tau_b = Some(bisect(&f, pos, hi, 200));
    }
    let tau_b = tau_b.unwrap();

    // left endpoint always exists: F -> -inf as tau -> 0
    let mut pos = init.tau;
    let mut tau_a = None;
    for &b in criticals.iter().rev().filter(|&&c| c < init.tau) {
        if f(b) < 0.0 {
            tau_a = Some(bisect(&f, b, pos, 200));
            break;
        }
        pos = b;
    }
    let tau_a = match tau_a {
        Some(v) => v,
        None => {
            let mut lo = pos;
            while f(lo) >= 0.0 {
                lo *= 0.5;
                if lo < 1e-300 {
                    return Err(Error::Inconclusive { horizon: f64::INFINITY });
                }
            }
            bisect(&f, lo, pos, 200)
        }
    };

    if (tau_b - tau_a).abs() < 1e-9 {
        return Ok(TrajectoryClass::Stationary);
    }
    // period by quadrature: T = 2 int_a^b dtau / sqrt(F), with sqrt-type
    // endpoints handled by the substitution tau = a + (b-a) sin^2(s)
    let period = period_quadrature(f, tau_a, tau_b);
    Ok(TrajectoryClass::Periodic { period })
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    let sign_lo = f(lo) >= 0.0;
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if (f(mid) >= 0.0) == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn period_quadrature(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    // midpoint rule in the s-variable; integrand is smooth there
    let n = 20_000;
    let mut acc = 0.0;
    let ds = std::f64::consts::FRAC_PI_2 / n as f64;
    for i in 0..n {
        let s = (i as f64 + 0.5) * ds;
        let tau = a + (b - a) * s.sin() * s.sin();
        let jac = (b - a) * 2.0 * s.sin() * s.cos();
        let val = f(tau).max(1e-300);
        acc += jac / val.sqrt();
    }
    2.0 * acc * ds
}
