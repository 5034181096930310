//! Conserved functionals evaluated on gridded fields.
//!
//! The rectangle rule on the periodic grid is spectrally accurate for smooth
//! decaying fields, so no higher-order quadrature is used anywhere.

use super::field::WaveField;
use super::params::PhysParams;

/// Default relative floor under the logarithm; see [`entropy`].
pub const DEFAULT_REG: f64 = 1e-14;

/// ∫ |u|² ln(|u|² + reg·max|u|²).
///
/// The relative floor removes the vacuum singularity of the logarithm while
/// perturbing the integral below test tolerances for Gaussian-type data.
/// With `reg = 0`, samples with |u| = 0 contribute 0 (the limit of s·ln s).
pub fn entropy(u: &WaveField, reg: f64) -> f64 {
    let floor = reg * u.values().iter().map(|v| v.norm_sqr()).fold(0.0, f64::max);
    let cell = u.grid().cell_volume();
    cell * u
        .values()
        .iter()
        .map(|v| {
            let s = v.norm_sqr();
            if s == 0.0 && floor == 0.0 {
                0.0
            } else {
                s * (s + floor).ln()
            }
        })
        .sum::<f64>()
}

/// E(u) = ½‖∇u‖² ± ω²/2 ‖xu‖² + λ∫|u|²(ln|u|² − 1), with the potential sign
/// taken from `params.potential_sign` (− for the repulsive case).
pub fn energy(u: &WaveField, params: &PhysParams, reg: f64) -> f64 {
    0.5 * u.grad_sq() + 0.5 * params.potential_coeff() * u.second_moment()
        + params.lambda * (entropy(u, reg) - u.mass())
}

/// Magnitudes of the three contributions to the energy, for scale-relative
/// drift measurements.
pub fn energy_scale(u: &WaveField, params: &PhysParams, reg: f64) -> f64 {
    let kin = 0.5 * u.grad_sq();
    let pot = 0.5 * params.potential_coeff() * u.second_moment();
    let ent = params.lambda * (entropy(u, reg) - u.mass());
    kin.abs().max(pot.abs()).max(ent.abs()).max(1.0)
}

/// Squared Σ-norm: ‖u‖² + ‖∇u‖² + ∫|x|²|u|².
pub fn sigma_norm(u: &WaveField) -> f64 {
    u.mass() + u.grad_sq() + u.second_moment()
}

/// Σ-distance ‖u − v‖_Σ (not squared).
pub fn sigma_distance(u: &WaveField, v: &WaveField) -> crate::error::Result<f64> {
    Ok(sigma_norm(&u.sub(v)?).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_model::grid::Grid;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn unit_gaussian() -> WaveField {
        let g = Grid::new_1d(40.0, 1024).unwrap();
        WaveField::from_fn_1d(g, |x| Complex64::new((-x * x / 2.0).exp(), 0.0)).unwrap()
    }

    #[test]
    fn sigma_norm_of_unit_gaussian() {
        // mass sqrt(pi) + gradient sqrt(pi)/2 + moment sqrt(pi)/2 = 2 sqrt(pi)
        let u = unit_gaussian();
        assert_relative_eq!(sigma_norm(&u), 2.0 * std::f64::consts::PI.sqrt(), max_relative = 1e-10);
        assert_relative_eq!(sigma_norm(&u), 3.544_907_701_811_032, max_relative = 1e-10);
    }

    #[test]
    fn sigma_norm_scales_quadratically() {
        let u = unit_gaussian();
        let c = 2.5;
        assert_relative_eq!(
            sigma_norm(&u.scaled(Complex64::new(c, 0.0))),
            c * c * sigma_norm(&u),
            max_relative = 1e-12
        );
    }

    #[test]
    fn sigma_norm_of_zero() {
        let u = WaveField::zeros(Grid::new_1d(10.0, 64).unwrap());
        assert_eq!(sigma_norm(&u), 0.0);
    }

    #[test]
    fn energy_is_gauge_invariant() {
        let u = unit_gaussian();
        let p = PhysParams::repulsive(-2.0, 1.0, 1).unwrap();
        let rotated = u.scaled(Complex64::from_polar(1.0, 0.73));
        let e0 = energy(&u, &p, DEFAULT_REG);
        let e1 = energy(&rotated, &p, DEFAULT_REG);
        assert_relative_eq!(e0, e1, max_relative = 1e-13);
    }

    #[test]
    fn energy_of_zero_field() {
        let p = PhysParams::repulsive(-2.0, 1.0, 1).unwrap();
        let u = WaveField::zeros(Grid::new_1d(10.0, 64).unwrap());
        assert_eq!(energy(&u, &p, DEFAULT_REG), 0.0);
        assert_eq!(energy(&u, &p, 0.0), 0.0);
    }

    #[test]
    fn entropy_matches_closed_form_for_gaussian() {
        // int e^{-x^2} ln(e^{-x^2}) = -sqrt(pi)/2
        let u = unit_gaussian();
        assert_relative_eq!(
            entropy(&u, DEFAULT_REG),
            -std::f64::consts::PI.sqrt() / 2.0,
            max_relative = 1e-9
        );
    }

    #[test]
    fn entropy_reg_floor_is_negligible_but_safe() {
        let u = unit_gaussian();
        let e0 = entropy(&u, 0.0);
        let e1 = entropy(&u, DEFAULT_REG);
        assert!((e0 - e1).abs() < 1e-10 * e0.abs());
    }
}
