//! Reconstruction of the time-dependent Gaussian solution
//! u(t, x) = b(t) e^{−a(t)x²/2} from the τ-ODE state.
//!
//! The complex width is a = 1/τ² − i τ̇/τ. Splitting the amplitude equation
//! i ḃ = ½ab + λb ln|b|² into modulus and phase gives the exact modulus law
//! |b(t)| = |b₀|√(τ(0)/τ(t)) and the scalar phase ODE
//! θ̇ = −1/(2τ²) − λ ln|b(t)|², which is integrated alongside (τ, τ̇).

use num_complex::Complex64;

use super::integrate::rk4_step;
use super::{tau_rhs, TauState};
use crate::core_model::{Grid, PhysParams, WaveField};
use crate::error::{Error, Result};

/// Reduced Gaussian state: the ODE pair (τ, τ̇), the accumulated phase of
/// b(t), and the amplitude reference (|b₀|, τ₀) fixing the modulus law.
#[derive(Debug, Clone, Copy)]
pub struct GaussianAnsatz {
    pub state: TauState,
    pub theta: f64,
    pub b0_mod: f64,
    pub tau0: f64,
}

impl GaussianAnsatz {
    /// Initial ansatz with b(0) = b0_mod (phase zero).
    pub fn new(state: TauState, b0_mod: f64) -> Result<Self> {
        if !(state.tau > 0.0) {
            return Err(Error::Domain(format!("tau = {} must be > 0", state.tau)));
        }
        if !(b0_mod > 0.0) {
            return Err(Error::Domain(format!("b0_mod = {b0_mod} must be > 0")));
        }
        Ok(Self { state, theta: 0.0, b0_mod, tau0: state.tau })
    }

    /// |b| at the current state: b0_mod √(τ₀/τ).
    pub fn amplitude_modulus(&self) -> f64 {
        self.b0_mod * (self.tau0 / self.state.tau).sqrt()
    }

    /// Complex amplitude b = |b| e^{iθ}.
    pub fn amplitude(&self) -> Complex64 {
        Complex64::from_polar(self.amplitude_modulus(), self.theta)
    }

    /// Complex width a = 1/τ² − i τ̇/τ.
    pub fn width(&self) -> Complex64 {
        let t = self.state.tau;
        Complex64::new(1.0 / (t * t), -self.state.tau_dot / t)
    }

    fn theta_rate(&self, params: &PhysParams) -> f64 {
        let tau = self.state.tau;
        let b_sq = self.amplitude_modulus().powi(2);
        -0.5 / (tau * tau) - params.lambda * b_sq.ln()
    }
}

/// Integrate (τ, τ̇, θ) from `init` to `t_end` with fixed step `dt`,
/// recording every step.
pub fn integrate_ansatz(
    init: GaussianAnsatz,
    params: &PhysParams,
    t_end: f64,
    dt: f64,
) -> Result<Vec<(f64, GaussianAnsatz)>> {
    if !(dt > 0.0) || !(t_end >= 0.0) {
        return Err(Error::Domain("need dt > 0 and t_end >= 0".into()));
    }
    let n_steps = (t_end / dt).round() as usize;
    let mut out = Vec::with_capacity(n_steps + 1);
    let mut g = init;
    let mut t = 0.0;
    out.push((t, g));
    for _ in 0..n_steps {
        g = ansatz_rk4(&g, params, dt, t)?;
        t += dt;
        out.push((t, g));
    }
    Ok(out)
}

/// RK4 on the coupled (τ, τ̇, θ) system; the modulus needs no equation of its
/// own (it is slaved to τ through the modulus law, which tests verify).
fn ansatz_rk4(g: &GaussianAnsatz, params: &PhysParams, dt: f64, t: f64) -> Result<GaussianAnsatz> {
    let deriv = |s: &TauState, theta_dummy: f64| -> Result<(f64, f64, f64)> {
        let _ = theta_dummy;
        if !(s.tau > 0.0) {
            return Err(Error::NonPositiveTau { t });
        }
        let probe = GaussianAnsatz { state: *s, theta: 0.0, b0_mod: g.b0_mod, tau0: g.tau0 };
        Ok((s.tau_dot, tau_rhs(s, params)?, probe.theta_rate(params)))
    };
    let s0 = g.state;
    let k1 = deriv(&s0, g.theta)?;
    let s2 = TauState { tau: s0.tau + 0.5 * dt * k1.0, tau_dot: s0.tau_dot + 0.5 * dt * k1.1 };
    let k2 = deriv(&s2, 0.0)?;
    let s3 = TauState { tau: s0.tau + 0.5 * dt * k2.0, tau_dot: s0.tau_dot + 0.5 * dt * k2.1 };
    let k3 = deriv(&s3, 0.0)?;
    let s4 = TauState { tau: s0.tau + dt * k3.0, tau_dot: s0.tau_dot + dt * k3.1 };
    let k4 = deriv(&s4, 0.0)?;
    let state = TauState {
        tau: s0.tau + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        tau_dot: s0.tau_dot + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    };
    if !(state.tau > 0.0) {
        return Err(Error::NonPositiveTau { t: t + dt });
    }
    let theta = g.theta + dt / 6.0 * (k1.2 + 2.0 * k2.2 + 2.0 * k3.2 + k4.2);
    // sanity: rk4_step on (tau, tau_dot) alone must agree exactly
    debug_assert!({
        let ref_state = rk4_step(&s0, params, dt, t)?;
        (ref_state.tau - state.tau).abs() < 1e-14 && (ref_state.tau_dot - state.tau_dot).abs() < 1e-12
    });
    Ok(GaussianAnsatz { state, theta, b0_mod: g.b0_mod, tau0: g.tau0 })
}

/// Sample the Gaussian field b e^{−a x²/2} on a 1D grid.
pub fn ansatz_to_field(g: &GaussianAnsatz, grid: Grid) -> Result<WaveField> {
    if grid.dim() != 1 {
        return Err(Error::GridMismatch(
            "ansatz_to_field is one-dimensional; use tensor products for 2D".into(),
        ));
    }
    let b = g.amplitude();
    let a = g.width();
    WaveField::from_fn_1d(grid, move |x| b * (-a * x * x / 2.0).exp())
}
