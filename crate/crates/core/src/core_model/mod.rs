//! Equation parameters, regime classification, Gausson closed forms, and the
//! conserved functionals (mass, energy, Σ-norm) on gridded fields.

mod field;
mod functionals;
mod gausson;
mod grid;
mod params;

pub use field::WaveField;
pub use functionals::{energy, energy_scale, entropy, sigma_distance, sigma_norm, DEFAULT_REG};
pub use gausson::{gausson_field, stationary_residual};
pub use grid::Grid;
pub use params::{
    gausson_k, gausson_mass, gausson_specs, GaussonBranch, GaussonSpec, PhysParams, PotentialSign,
    Regime,
};
