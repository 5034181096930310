//! Equation parameters and the stationary-state regime they imply.

use crate::error::{Error, Result};

/// Sign convention for the quadratic potential term.
///
/// `Repulsive` is the inverted trap −ω²|x|²/2; `Confining` is +ω²|x|²/2;
/// `None` drops the term (and forces ω = 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialSign {
    Repulsive,
    Confining,
    None,
}

/// What the coefficient pair (λ, ω) admits in the way of Gaussian
/// stationary states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// −λ > ω > 0: two distinct Gaussons.
    TwoGaussons,
    /// −λ = ω > 0: the two Gaussons merge into one (k = ω).
    Degenerate,
    /// ω > −λ ≥ 0, or λ > 0 with ω > 0: no stationary state at all.
    NoStationary,
    /// ω = 0, λ < 0: the classical flat-space Gausson with k = −2λ.
    FlatGausson,
}

/// Coefficients of the equation i∂ₜu + ½Δu = ∓ω²|x|²/2 u + λ u ln|u|².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    pub lambda: f64,
    pub omega: f64,
    pub dim: usize,
    pub potential_sign: PotentialSign,
}

impl PhysParams {
    pub fn new(lambda: f64, omega: f64, dim: usize, potential_sign: PotentialSign) -> Result<Self> {
        if !lambda.is_finite() || !omega.is_finite() {
            return Err(Error::InvalidParams("lambda and omega must be finite".into()));
        }
        if omega < 0.0 {
            return Err(Error::InvalidParams(format!("omega = {omega} must be >= 0")));
        }
        if potential_sign == PotentialSign::None && omega != 0.0 {
            return Err(Error::InvalidParams(
                "potential_sign None requires omega = 0".into(),
            ));
        }
        if dim < 1 {
            return Err(Error::InvalidParams("dim must be >= 1".into()));
        }
        Ok(Self { lambda, omega, dim, potential_sign })
    }

    /// The paper's case: V(x) = −ω²|x|²/2.
    pub fn repulsive(lambda: f64, omega: f64, dim: usize) -> Result<Self> {
        Self::new(lambda, omega, dim, PotentialSign::Repulsive)
    }

    /// Flat space, no potential.
    pub fn free(lambda: f64, dim: usize) -> Result<Self> {
        Self::new(lambda, 0.0, dim, PotentialSign::None)
    }

    /// Signed coefficient of |x|²/2 in the potential energy: −ω² (repulsive),
    /// +ω² (confining), 0 (none).
    pub fn potential_coeff(&self) -> f64 {
        match self.potential_sign {
            PotentialSign::Repulsive => -self.omega * self.omega,
            PotentialSign::Confining => self.omega * self.omega,
            PotentialSign::None => 0.0,
        }
    }

    /// Pure function of (λ, ω); see [`Regime`].
    pub fn regime(&self) -> Regime {
        let (l, w) = (self.lambda, self.omega);
        if w > 0.0 {
            if -l > w {
                Regime::TwoGaussons
            } else if -l == w {
                Regime::Degenerate
            } else {
                Regime::NoStationary
            }
        } else if l < 0.0 {
            Regime::FlatGausson
        } else {
            Regime::NoStationary
        }
    }
}

/// Which root of k² + 2λk + ω² = 0 a Gausson sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussonBranch {
    Minus,
    Plus,
    Degenerate,
}

/// A stationary Gausson: decay rate k and solitary-wave frequency ν.
///
/// The profile is φ_{k,ν}(x) = e^{−ν/(2λ)} e^{−dk/(4λ)} e^{−k|x|²/2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussonSpec {
    pub k: f64,
    pub nu: f64,
    pub branch: GaussonBranch,
}

impl GaussonSpec {
    pub fn new(k: f64, nu: f64, branch: GaussonBranch) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::Domain(format!("gausson decay rate k = {k} must be > 0")));
        }
        Ok(Self { k, nu, branch })
    }

    /// Closed-form profile value at a point (|x|² given).
    pub fn profile_at(&self, x_sq: f64, params: &PhysParams) -> f64 {
        let l = params.lambda;
        let d = params.dim as f64;
        (-self.nu / (2.0 * l) - d * self.k / (4.0 * l) - self.k * x_sq / 2.0).exp()
    }
}

/// Both roots of k² + 2λk + ω² = 0, ordered k_minus <= k_plus.
///
/// Returns `None` when the roots are complex (no Gausson regime). In the
/// degenerate regime both entries equal ω. For ω = 0 with λ < 0 the result
/// is (0, −2λ); k = 0 is not a normalizable Gausson and is rejected by
/// [`GaussonSpec::new`].
pub fn gausson_k(params: &PhysParams) -> Option<(f64, f64)> {
    let l = params.lambda;
    let w = params.omega;
    let disc = l * l - w * w;
    if disc < 0.0 || l > 0.0 || (l == 0.0 && w > 0.0) {
        return None;
    }
    if w == 0.0 {
        if l < 0.0 {
            return Some((0.0, -2.0 * l));
        }
        return None;
    }
    let root = disc.sqrt();
    Some((-l - root, -l + root))
}

/// The normalizable Gaussons admitted by `params`, at frequency ν = 0.
pub fn gausson_specs(params: &PhysParams) -> Vec<GaussonSpec> {
    match params.regime() {
        Regime::TwoGaussons => {
            let (km, kp) = gausson_k(params).expect("regime guarantees real roots");
            vec![
                GaussonSpec { k: km, nu: 0.0, branch: GaussonBranch::Minus },
                GaussonSpec { k: kp, nu: 0.0, branch: GaussonBranch::Plus },
            ]
        }
        Regime::Degenerate => {
            vec![GaussonSpec { k: params.omega, nu: 0.0, branch: GaussonBranch::Degenerate }]
        }
        Regime::FlatGausson => {
            vec![GaussonSpec { k: -2.0 * params.lambda, nu: 0.0, branch: GaussonBranch::Plus }]
        }
        Regime::NoStationary => vec![],
    }
}

/// Closed-form squared L²-norm of φ_k (ν = 0): e^{−dk/(2λ)} (π/k)^{d/2}.
pub fn gausson_mass(k: f64, lambda: f64, dim: usize) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::Domain(format!("k = {k} must be > 0")));
    }
    if lambda == 0.0 {
        return Err(Error::Domain("lambda must be nonzero".into()));
    }
    let d = dim as f64;
    Ok((-d * k / (2.0 * lambda)).exp() * (std::f64::consts::PI / k).powf(d / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn repulsive(lambda: f64, omega: f64) -> PhysParams {
        PhysParams::repulsive(lambda, omega, 1).unwrap()
    }

    #[test]
    fn roots_two_gausson_regime() {
        // lambda = -2, omega = 1: k = 2 -+ sqrt(3)
        let (km, kp) = gausson_k(&repulsive(-2.0, 1.0)).unwrap();
        assert_relative_eq!(km, 2.0 - SQRT3, max_relative = 1e-14);
        assert_relative_eq!(kp, 2.0 + SQRT3, max_relative = 1e-14);
        assert!(km <= kp);
    }

    #[test]
    fn roots_degenerate() {
        let (km, kp) = gausson_k(&repulsive(-1.0, 1.0)).unwrap();
        assert_eq!(km, 1.0);
        assert_eq!(kp, 1.0);
    }

    #[test]
    fn roots_none_when_omega_dominates() {
        assert!(gausson_k(&repulsive(-1.0, 2.0)).is_none());
    }

    #[test]
    fn roots_flat_case() {
        let p = PhysParams::free(-2.0, 1).unwrap();
        let (km, kp) = gausson_k(&p).unwrap();
        assert_eq!(km, 0.0);
        assert_eq!(kp, 4.0);
        // k = 0 is not a valid Gausson
        assert!(GaussonSpec::new(km, 0.0, GaussonBranch::Minus).is_err());
        assert_eq!(gausson_specs(&p).len(), 1);
    }

    #[test]
    fn regime_classification() {
        assert_eq!(repulsive(-2.0, 1.0).regime(), Regime::TwoGaussons);
        assert_eq!(repulsive(-2.0, 2.0).regime(), Regime::Degenerate);
        assert_eq!(repulsive(-1.0, 2.0).regime(), Regime::NoStationary);
        assert_eq!(repulsive(1.0, 2.0).regime(), Regime::NoStationary);
        assert_eq!(PhysParams::free(-1.0, 1).unwrap().regime(), Regime::FlatGausson);
        assert_eq!(PhysParams::free(1.0, 1).unwrap().regime(), Regime::NoStationary);
    }

    #[test]
    fn params_validation() {
        assert!(PhysParams::repulsive(-2.0, -1.0, 1).is_err());
        assert!(PhysParams::new(-2.0, 1.0, 1, PotentialSign::None).is_err());
        assert!(PhysParams::new(-2.0, 0.0, 0, PotentialSign::None).is_err());
    }

    #[test]
    fn mass_closed_form() {
        // frozen from arbitrary-precision evaluation of e^{k/4} sqrt(pi/k)
        let kp = 2.0 + SQRT3;
        let m = gausson_mass(kp, -2.0, 1).unwrap();
        assert_relative_eq!(m, 2.332_402_136_452_899, max_relative = 1e-13);
        let km = 2.0 - SQRT3;
        let mm = gausson_mass(km, -2.0, 1).unwrap();
        assert_relative_eq!(mm, 3.661_347_281_931_723, max_relative = 1e-13);
        assert!(mm > m);
    }

    #[test]
    fn mass_domain_errors() {
        assert!(gausson_mass(0.0, -2.0, 1).is_err());
        assert!(gausson_mass(-1.0, -2.0, 1).is_err());
        assert!(gausson_mass(1.0, 0.0, 1).is_err());
    }

    #[test]
    fn mass_flat_space_limit() {
        // omega -> 0 with lambda fixed: mass(k_plus) -> e^d (pi/(-2 lambda))^{d/2}
        let lambda = -2.0;
        let limit = std::f64::consts::E * (std::f64::consts::PI / 4.0).sqrt();
        let mut prev_err = f64::INFINITY;
        for omega in [0.5, 0.1, 0.01] {
            let (_, kp) = gausson_k(&repulsive(lambda, omega)).unwrap();
            let err = (gausson_mass(kp, lambda, 1).unwrap() - limit).abs();
            assert!(err < prev_err, "approach to the flat limit must be monotone");
            prev_err = err;
        }
        assert!(prev_err < 0.01 * limit);
    }
}
