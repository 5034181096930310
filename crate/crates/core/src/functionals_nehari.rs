//! Action and Nehari functionals, the Pohozaev identity, and the witness
//! family γ_{ε,x₀} demonstrating that the Nehari-manifold mass infimum is
//! zero, hence that the ground-state set is empty.

use num_complex::Complex64;

use crate::core_model::{energy, entropy, Grid, PhysParams, WaveField};
use crate::error::{Error, Result};

/// Action S_ν(u) = E(u) + ν‖u‖².
pub fn action(u: &WaveField, nu: f64, params: &PhysParams, reg: f64) -> f64 {
    energy(u, params, reg) + nu * u.mass()
}

/// Nehari functional
/// I_ν(u) = ‖∇u‖² ± ω²‖xu‖² + 2λ∫|u|² ln|u|² + 2ν‖u‖²
/// (potential sign as in the energy; − in the repulsive case).
///
/// Satisfies the identity I_ν = 2S_ν + 2λ‖u‖² exactly, term by term.
pub fn nehari(u: &WaveField, nu: f64, params: &PhysParams, reg: f64) -> f64 {
    u.grad_sq()
        + params.potential_coeff() * u.second_moment()
        + 2.0 * params.lambda * entropy(u, reg)
        + 2.0 * nu * u.mass()
}

/// Magnitude of the largest term in I_ν, the scale for residual checks.
pub fn nehari_scale(u: &WaveField, nu: f64, params: &PhysParams, reg: f64) -> f64 {
    u.grad_sq()
        .abs()
        .max((params.potential_coeff() * u.second_moment()).abs())
        .max((2.0 * params.lambda * entropy(u, reg)).abs())
        .max((2.0 * nu * u.mass()).abs())
}

/// A member of the witness family γ_{ε,x₀}(x) = ε e^{−|x−x₀|²/2}, the
/// center x₀ placed on the first coordinate axis (the functional depends on
/// |x₀|² only).
#[derive(Debug, Clone, Copy)]
pub struct NehariWitness {
    pub eps: f64,
    pub x0: f64,
    pub nu: f64,
    pub dim: usize,
}

/// The Gaussian integrals entering the witness functional, in closed form.
#[derive(Debug, Clone, Copy)]
pub struct WitnessIntegrals {
    /// ‖γ‖² = ε²π^{d/2}
    pub mass: f64,
    /// ‖∇γ‖² = ε²(d/2)π^{d/2}
    pub grad_sq: f64,
    /// ‖xγ‖² = ε²(d/2)π^{d/2} + ε²|x₀|²π^{d/2}
    pub second_moment: f64,
    /// ∫γ² ln γ² = ln(ε²)‖γ‖² − ‖∇γ‖²
    pub entropy: f64,
}

impl NehariWitness {
    pub fn new(eps: f64, x0: f64, nu: f64, dim: usize) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(Error::Domain(format!("eps = {eps} must be > 0")));
        }
        if dim < 1 {
            return Err(Error::Domain("dim must be >= 1".into()));
        }
        Ok(Self { eps, x0, nu, dim })
    }

    pub fn integrals(&self) -> WitnessIntegrals {
        let d = self.dim as f64;
        let pi_d = std::f64::consts::PI.powf(d / 2.0);
        let e2 = self.eps * self.eps;
        let mass = e2 * pi_d;
        let grad_sq = e2 * (d / 2.0) * pi_d;
        let second_moment = grad_sq + e2 * self.x0 * self.x0 * pi_d;
        let entropy = e2.ln() * mass - grad_sq;
        WitnessIntegrals { mass, grad_sq, second_moment, entropy }
    }

    /// Sample the witness on a 1D grid.
    pub fn field(&self, grid: Grid) -> Result<WaveField> {
        if self.dim != 1 || grid.dim() != 1 {
            return Err(Error::GridMismatch("witness fields are sampled in 1D".into()));
        }
        let eps = self.eps;
        let x0 = self.x0;
        WaveField::from_fn_1d(grid, move |x| {
            Complex64::new(eps * (-(x - x0) * (x - x0) / 2.0).exp(), 0.0)
        })
    }

    /// A grid adequate for this witness: box L ≥ 2|x₀| + 12 so the shifted
    /// Gaussian stays resolved.
    pub fn adequate_grid(&self) -> Result<Grid> {
        Grid::adequate(1.0, 2.0 * self.x0.abs() + 12.0, 1)
    }
}

/// Closed-form value of the Nehari functional on a witness:
/// I(γ_{ε,x₀}) = ε²π^{d/2}((1−2λ)d/2 − ω²d/2 − ω²|x₀|² + 2λ ln ε² + 2ν).
pub fn witness_nehari_closed(w: &NehariWitness, params: &PhysParams) -> f64 {
    let d = w.dim as f64;
    let pi_d = std::f64::consts::PI.powf(d / 2.0);
    let e2 = w.eps * w.eps;
    let l = params.lambda;
    let w2 = params.omega * params.omega;
    e2 * pi_d
        * ((1.0 - 2.0 * l) * d / 2.0 - w2 * d / 2.0 - w2 * w.x0 * w.x0 + 2.0 * l * e2.ln()
            + 2.0 * w.nu)
}

/// Center |x₀| putting the witness on the Nehari manifold:
/// |x₀|² = [2λ ln ε² + (1−2λ)d/2 − ω²d/2 + 2ν]/ω², when the bracket is
/// nonnegative; `None` otherwise (ε too large).
pub fn solve_witness_x0(eps: f64, nu: f64, params: &PhysParams) -> Option<f64> {
    if !(params.lambda < 0.0 && params.omega > 0.0) || !(eps > 0.0) {
        return None;
    }
    let d = params.dim as f64;
    let l = params.lambda;
    let w2 = params.omega * params.omega;
    let bracket = 2.0 * l * (eps * eps).ln() + (1.0 - 2.0 * l) * d / 2.0 - w2 * d / 2.0 + 2.0 * nu;
    if bracket < 0.0 {
        return None;
    }
    Some((bracket / w2).sqrt())
}

/// One row of the δ(ν) demonstration scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanRow {
    pub eps: f64,
    /// `None` when ε is too large to reach the manifold.
    pub x0: Option<f64>,
    /// Closed-form witness mass ε²π^{d/2} (present iff x0 is).
    pub mass: Option<f64>,
}

/// For each admissible ε, a Nehari-manifold member of mass ε²π^{d/2}; the
/// masses tend to 0 with ε, demonstrating δ(ν) = 0.
pub fn delta_nu_scan(nu: f64, params: &PhysParams, eps_list: &[f64]) -> Result<Vec<ScanRow>> {
    if !(params.lambda < 0.0 && params.omega > 0.0) {
        return Err(Error::Regime("the witness scan needs lambda < 0 < omega".into()));
    }
    let d = params.dim as f64;
    let pi_d = std::f64::consts::PI.powf(d / 2.0);
    Ok(eps_list
        .iter()
        .map(|&eps| {
            let x0 = solve_witness_x0(eps, nu, params);
            ScanRow { eps, x0, mass: x0.map(|_| eps * eps * pi_d) }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_model::{
        gausson_field, gausson_k, sigma_norm, GaussonBranch, GaussonSpec, DEFAULT_REG,
    };
    use approx::assert_relative_eq;

    fn params() -> PhysParams {
        PhysParams::repulsive(-2.0, 1.0, 1).unwrap()
    }

    fn grid() -> Grid {
        Grid::new_1d(40.0, 2048).unwrap()
    }

    #[test]
    fn action_at_nu_zero_is_the_energy() {
        let p = params();
        let (_, kp) = gausson_k(&p).unwrap();
        let phi =
            gausson_field(&GaussonSpec::new(kp, 0.0, GaussonBranch::Plus).unwrap(), &p, grid())
                .unwrap();
        assert_eq!(action(&phi, 0.0, &p, DEFAULT_REG), energy(&phi, &p, DEFAULT_REG));
    }

    #[test]
    fn action_shifts_linearly_in_nu() {
        let p = params();
        let u = WaveField::from_fn_1d(grid(), |x| {
            Complex64::new((-0.8 * x * x / 2.0).exp(), 0.3 * (-x * x).exp())
        })
        .unwrap();
        let nu = 1.7;
        let lhs = action(&u, nu, &p, DEFAULT_REG) - action(&u, 0.0, &p, DEFAULT_REG);
        assert_relative_eq!(lhs, nu * u.mass(), max_relative = 1e-12);
    }

    #[test]
    fn nehari_action_identity() {
        // I_nu = 2 S_nu + 2 lambda mass, exactly term by term
        let p = params();
        for (k, amp, nu) in [(0.7, 1.0, 0.0), (1.9, 0.4, 1.3), (3.1, 2.2, -0.8)] {
            let u = WaveField::from_fn_1d(grid(), |x| {
                Complex64::new(amp * (-k * x * x / 2.0).exp(), 0.0)
            })
            .unwrap();
            let lhs = nehari(&u, nu, &p, DEFAULT_REG);
            let rhs = 2.0 * action(&u, nu, &p, DEFAULT_REG) + 2.0 * p.lambda * u.mass();
            let scale = nehari_scale(&u, nu, &p, DEFAULT_REG);
            assert!((lhs - rhs).abs() <= 1e-10 * scale, "k={k}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn gaussons_sit_on_the_nehari_manifold() {
        let p = params();
        let (km, kp) = gausson_k(&p).unwrap();
        for k in [km, kp] {
            let phi =
                gausson_field(&GaussonSpec::new(k, 0.0, GaussonBranch::Plus).unwrap(), &p, grid())
                    .unwrap();
            let i0 = nehari(&phi, 0.0, &p, DEFAULT_REG);
            let scale = nehari_scale(&phi, 0.0, &p, DEFAULT_REG);
            assert!(i0.abs() <= 1e-6 * scale, "k = {k}: I_0 = {i0:.3e}");
            // and the nu-family: I_nu(phi_{k,nu}) = 0
            let nu = 0.9;
            let phinu =
                gausson_field(&GaussonSpec::new(k, nu, GaussonBranch::Plus).unwrap(), &p, grid())
                    .unwrap();
            let inu = nehari(&phinu, nu, &p, DEFAULT_REG);
            assert!(inu.abs() <= 1e-6 * nehari_scale(&phinu, nu, &p, DEFAULT_REG));
        }
    }

    #[test]
    fn nehari_of_zero_field() {
        let p = params();
        let u = WaveField::zeros(grid());
        assert_eq!(nehari(&u, 1.0, &p, DEFAULT_REG), 0.0);
    }

    #[test]
    fn witness_integrals_match_quadrature() {
        let w = NehariWitness::new(0.1, 4.5189247, 0.0, 1).unwrap();
        let g = w.adequate_grid().unwrap();
        let field = w.field(g).unwrap();
        let ints = w.integrals();
        assert_relative_eq!(field.mass(), ints.mass, max_relative = 1e-8);
        assert_relative_eq!(field.grad_sq(), ints.grad_sq, max_relative = 1e-8);
        assert_relative_eq!(field.second_moment(), ints.second_moment, max_relative = 1e-8);
        assert_relative_eq!(entropy(&field, 0.0), ints.entropy, max_relative = 1e-8);
    }

    #[test]
    fn witness_mass_value() {
        // eps = 0.1, d = 1: mass = eps^2 sqrt(pi)
        let w = NehariWitness::new(0.1, 0.0, 0.0, 1).unwrap();
        assert_relative_eq!(w.integrals().mass, 0.017_724_538_509_055_16, max_relative = 1e-12);
    }

    #[test]
    fn witness_closed_form_trivial_substitution() {
        // x0 = 0, eps = 1, lambda = 0, nu = 0, omega = 0, d = 1: only the
        // gradient term survives: sqrt(pi)/2
        let p = PhysParams::free(0.0, 1).unwrap();
        let w = NehariWitness::new(1.0, 0.0, 0.0, 1).unwrap();
        assert_relative_eq!(
            witness_nehari_closed(&w, &p),
            std::f64::consts::PI.sqrt() / 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn solved_x0_zeroes_the_functional() {
        let p = params();
        // frozen from the algebraic solve: bracket = 18.42068 + 2.5 - 0.5
        let x0 = solve_witness_x0(0.1, 0.0, &p).unwrap();
        assert_relative_eq!(x0, 4.518_924_733_158_582, max_relative = 1e-12);
        let w = NehariWitness::new(0.1, x0, 0.0, 1).unwrap();
        assert!(witness_nehari_closed(&w, &p).abs() < 1e-12);
        // quadrature cross-check on an adequate grid
        let g = w.adequate_grid().unwrap();
        let field = w.field(g).unwrap();
        let i_grid = nehari(&field, 0.0, &p, DEFAULT_REG);
        assert!(
            i_grid.abs() <= 1e-5 * w.integrals().mass,
            "grid residual {i_grid:.3e}"
        );
    }

    #[test]
    fn large_eps_has_no_center() {
        let p = params();
        assert!(solve_witness_x0(10.0, 0.0, &p).is_none());
    }

    #[test]
    fn x0_grows_like_sqrt_log() {
        // |x0| ~ sqrt(-4 lambda ln eps)/omega as eps -> 0
        let p = params();
        let eps = 1e-8;
        let x0 = solve_witness_x0(eps, 0.0, &p).unwrap();
        let asymptote = (-4.0 * p.lambda * (-eps.ln())).sqrt() / p.omega;
        assert!((x0 - asymptote).abs() / asymptote < 0.05, "{x0} vs {asymptote}");
    }

    #[test]
    fn scan_masses_decrease_to_zero() {
        let p = params();
        let rows = delta_nu_scan(0.0, &p, &[1e-1, 1e-2, 1e-3]).unwrap();
        let masses: Vec<f64> = rows.iter().map(|r| r.mass.unwrap()).collect();
        assert!(masses.windows(2).all(|w| w[1] < w[0]));
        assert_relative_eq!(masses[0], 1.772_453_850_905_516e-2, max_relative = 1e-12);
        assert_relative_eq!(masses[1], 1.772_453_850_905_516e-4, max_relative = 1e-12);
        assert_relative_eq!(masses[2], 1.772_453_850_905_516e-6, max_relative = 1e-12);
    }

    #[test]
    fn scan_rejects_wrong_regime() {
        let p = PhysParams::free(-1.0, 1).unwrap();
        assert!(delta_nu_scan(0.0, &p, &[0.1]).is_err());
    }

    #[test]
    fn pohozaev_consistency_for_stationary_profiles() {
        // a numerically stationary profile has |I_nu| controlled by its
        // stationary residual
        let p = params();
        let (_, kp) = gausson_k(&p).unwrap();
        let phi =
            gausson_field(&GaussonSpec::new(kp, 0.0, GaussonBranch::Plus).unwrap(), &p, grid())
                .unwrap();
        let res = crate::core_model::stationary_residual(&phi, &p, 0.0);
        let i0 = nehari(&phi, 0.0, &p, 0.0);
        // |I| = |2 Re <residual, phi>| <= 2 res * ||phi||
        assert!(i0.abs() <= 2.0 * res * phi.l2_norm() + 1e-10 * sigma_norm(&phi));
    }
}
