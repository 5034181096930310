//! Numerical study of the logarithmic Schrödinger equation with a repulsive
//! harmonic potential: Gausson stationary states, the exact Gaussian-ansatz
//! reduction and its phase portraits, split-step spectral evolution,
//! invariance transforms, and the action/Nehari functionals.

pub mod core_model;
pub mod error;
pub mod functionals_nehari;
pub mod gaussian_ode;
pub mod invariances;
pub mod pde_solver;
mod spectral;

pub use error::{Error, Result};
