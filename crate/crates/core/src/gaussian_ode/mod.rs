//! Exact Gaussian-ansatz reduction of the PDE: the τ-ODE
//! τ̈ = 2λ/τ + 1/τ³ + ω²τ, its first integral, stationary points,
//! linearization, trajectory classification, phase portraits, and
//! reconstruction of the time-dependent Gaussian field.

mod ansatz;
mod classify;
mod integrate;
mod portrait;

pub use ansatz::{ansatz_to_field, integrate_ansatz, GaussianAnsatz};
pub use classify::{classify_trajectory, classify_by_first_integral, TrajectoryClass};
pub use integrate::{integrate_tau, Trajectory, DEFAULT_DT, STEP_DRIFT_LIMIT};
pub use portrait::{phase_portrait, Orbit, OrbitRow, Portrait};

use crate::core_model::{gausson_k, PhysParams, Regime};
use crate::error::{Error, Result};

/// Inverse-width parameter τ > 0 and its time derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauState {
    pub tau: f64,
    pub tau_dot: f64,
}

impl TauState {
    pub fn new(tau: f64, tau_dot: f64) -> Result<Self> {
        if !(tau > 0.0) {
            return Err(Error::Domain(format!("tau = {tau} must be > 0")));
        }
        Ok(Self { tau, tau_dot })
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0) {
        return Err(Error::Domain(format!("tau = {tau} must be > 0")));
    }
    Ok(())
}

/// Right-hand side of the τ-ODE: 2λ/τ + 1/τ³ + ω²τ.
pub fn tau_rhs(s: &TauState, params: &PhysParams) -> Result<f64> {
    check_tau(s.tau)?;
    let t = s.tau;
    Ok(2.0 * params.lambda / t + 1.0 / (t * t * t) + params.omega * params.omega * t)
}

/// Same right-hand side in factored form P(1/τ²)·τ with
/// P(X) = X² + 2λX + ω².
pub fn tau_rhs_factored(s: &TauState, params: &PhysParams) -> Result<f64> {
    check_tau(s.tau)?;
    let x = 1.0 / (s.tau * s.tau);
    Ok((x * x + 2.0 * params.lambda * x + params.omega * params.omega) * s.tau)
}

/// Conserved quantity of the τ-ODE:
/// C = τ̇² − 4λ ln τ + 1/τ² − ω²τ².
pub fn first_integral(s: &TauState, params: &PhysParams) -> Result<f64> {
    check_tau(s.tau)?;
    let t = s.tau;
    Ok(s.tau_dot * s.tau_dot - 4.0 * params.lambda * t.ln() + 1.0 / (t * t)
        - params.omega * params.omega * t * t)
}

/// Magnitude of the largest term entering the first integral; drift is
/// measured relative to this scale (the constant itself is a difference of
/// terms that grow like ω²τ² on unbounded orbits).
pub fn first_integral_scale(s: &TauState, params: &PhysParams) -> f64 {
    let t = s.tau;
    (s.tau_dot * s.tau_dot)
        .max((4.0 * params.lambda * t.ln()).abs())
        .max(1.0 / (t * t))
        .max(params.omega * params.omega * t * t)
        .max(1.0)
}

/// Stationary points of the τ-ODE, ascending: [1/√k_plus, 1/√k_minus] in the
/// two-Gausson regime, [1/√ω] in the degenerate one, empty otherwise.
pub fn stationary_taus(params: &PhysParams) -> Vec<f64> {
    match params.regime() {
        Regime::TwoGaussons => {
            let (km, kp) = gausson_k(params).expect("regime guarantees real roots");
            vec![1.0 / kp.sqrt(), 1.0 / km.sqrt()]
        }
        Regime::Degenerate => vec![1.0 / params.omega.sqrt()],
        Regime::FlatGausson => vec![1.0 / (-2.0 * params.lambda).sqrt()],
        Regime::NoStationary => vec![],
    }
}

/// Linearization coefficient Ω_eff = −4k(k + λ) of the τ-ODE at the
/// stationary point τ = 1/√k.
///
/// Positive for k_minus (saddle at the larger τ), negative for k_plus
/// (center at the smaller τ), zero in the degenerate case.
pub fn linearized_rate(k: f64, params: &PhysParams) -> f64 {
    -4.0 * k * (k + params.lambda)
}
