//! The four exact invariance transforms: size/gauge scaling, Galilean boost,
//! space translation (both hyperbolic in time because of the repulsive
//! potential), and tensorization. Each maps a solution snapshot at time `t`
//! to another solution snapshot at the same time, so they serve both as
//! solution generators and as commutation tests against the solver.

use num_complex::Complex64;

use crate::core_model::{Grid, WaveField};
use crate::error::{Error, Result};

/// u ↦ c·u·e^{−itλ ln|c|²}. On a stationary profile this generates the
/// solitary wave at frequency ν = −λ ln|c|².
pub fn apply_size(u: &WaveField, c: Complex64, t: f64, lambda: f64) -> Result<WaveField> {
    if c.norm_sqr() == 0.0 {
        return Err(Error::Domain("size transform requires c != 0".into()));
    }
    let phase = -t * lambda * c.norm_sqr().ln();
    Ok(u.scaled(c * Complex64::from_polar(1.0, phase)))
}

/// Galilean boost at velocity `v`:
/// u(t, x − v sinh(ωt)/ω) · exp(i cosh(ωt) v·x − i|v|² sinh(2ωt)/(4ω)).
///
/// At t = 0 this is plain multiplication by e^{iv·x}. Requires ω > 0 (the
/// formula divides by ω; the flat-space boost is out of scope). The spatial
/// shift is spectral, so off-grid shifts carry no interpolation error.
pub fn apply_galilean(u: &WaveField, v: &[f64], t: f64, omega: f64) -> Result<WaveField> {
    apply_galilean_impl(u, v, t, omega, 1.0)
}

/// Negative-control fixture: the same transform with the sign of the
/// cosh(ωt)v·x phase deliberately flipped. Commutation tests against this
/// variant must fail by an O(1) margin.
#[doc(hidden)]
pub fn apply_galilean_negative_control(
    u: &WaveField,
    v: &[f64],
    t: f64,
    omega: f64,
) -> Result<WaveField> {
    apply_galilean_impl(u, v, t, omega, -1.0)
}

fn apply_galilean_impl(
    u: &WaveField,
    v: &[f64],
    t: f64,
    omega: f64,
    phase_sign: f64,
) -> Result<WaveField> {
    if !(omega > 0.0) {
        return Err(Error::Domain("galilean transform requires omega > 0".into()));
    }
    check_vector(u, v)?;
    let shift: Vec<f64> = v.iter().map(|vi| vi * (omega * t).sinh() / omega).collect();
    let mut out = u.translate(&shift)?;
    let cosh_wt = (omega * t).cosh();
    let v_sq: f64 = v.iter().map(|x| x * x).sum();
    let const_phase = -v_sq * (2.0 * omega * t).sinh() / (4.0 * omega);
    apply_linear_phase(&mut out, |x| {
        let vx: f64 = v.iter().zip(x).map(|(a, b)| a * b).sum();
        phase_sign * cosh_wt * vx + const_phase
    });
    Ok(out)
}

/// Space translation by `x0`:
/// u(t, x − x0 cosh(ωt)) · exp(iω sinh(ωt) x0·x − iω|x0|² sinh(2ωt)/4).
///
/// At t = 0 this is a pure spatial shift. This is the exact solution used to
/// drive translated Gaussons to arbitrary horizons.
pub fn apply_translation(u: &WaveField, x0: &[f64], t: f64, omega: f64) -> Result<WaveField> {
    check_vector(u, x0)?;
    let cosh_wt = (omega * t).cosh();
    let shift: Vec<f64> = x0.iter().map(|c| c * cosh_wt).collect();
    let mut out = u.translate(&shift)?;
    let x0_sq: f64 = x0.iter().map(|x| x * x).sum();
    let sinh_wt = omega * (omega * t).sinh();
    let const_phase = -omega * x0_sq * (2.0 * omega * t).sinh() / 4.0;
    apply_linear_phase(&mut out, |x| {
        let dot: f64 = x0.iter().zip(x).map(|(a, b)| a * b).sum();
        sinh_wt * dot + const_phase
    });
    Ok(out)
}

/// Tensor product of two 1D fields on the same grid: u(x, y) = u1(x)·u2(y).
pub fn tensor_product(u1: &WaveField, u2: &WaveField) -> Result<WaveField> {
    if u1.grid().dim() != 1 || u2.grid().dim() != 1 {
        return Err(Error::GridMismatch("tensor factors must be 1D".into()));
    }
    if u1.grid() != u2.grid() {
        return Err(Error::GridMismatch("tensor factors must share a grid".into()));
    }
    let n = u1.grid().n();
    let grid2 = Grid::new_2d(u1.grid().length(), n)?;
    let mut values = Vec::with_capacity(n * n);
    for iy in 0..n {
        let fy = u2.values()[iy];
        for ix in 0..n {
            values.push(u1.values()[ix] * fy);
        }
    }
    WaveField::from_values(grid2, values)
}

fn check_vector(u: &WaveField, v: &[f64]) -> Result<()> {
    if v.len() != u.grid().dim() {
        return Err(Error::GridMismatch(format!(
            "vector has {} components for a {}D field",
            v.len(),
            u.grid().dim()
        )));
    }
    Ok(())
}

fn apply_linear_phase(u: &mut WaveField, phase: impl Fn(&[f64; 2]) -> f64) {
    let n = u.grid().n();
    let h = u.grid().spacing();
    let half = u.grid().length() / 2.0;
    let dim = u.grid().dim();
    for (i, v) in u.values_mut().iter_mut().enumerate() {
        let x = -half + (i % n) as f64 * h;
        let y = if dim == 2 { -half + (i / n) as f64 * h } else { 0.0 };
        *v *= Complex64::from_polar(1.0, phase(&[x, y]));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_model::{gausson_field, gausson_k, GaussonBranch, GaussonSpec, PhysParams};
    use approx::assert_relative_eq;

    fn params() -> PhysParams {
        PhysParams::repulsive(-2.0, 1.0, 1).unwrap()
    }

    fn grid() -> Grid {
        Grid::new_1d(40.0, 512).unwrap()
    }

    fn gaussian() -> WaveField {
        WaveField::from_fn_1d(grid(), |x| Complex64::new((-x * x / 2.0).exp(), 0.0)).unwrap()
    }

    #[test]
    fn size_identity_at_c_one() {
        let u = gaussian();
        let out = apply_size(&u, Complex64::new(1.0, 0.0), 3.7, -2.0).unwrap();
        assert!(out.l2_distance(&u).unwrap() < 1e-15);
    }

    #[test]
    fn size_rejects_zero() {
        let u = gaussian();
        assert!(apply_size(&u, Complex64::default(), 0.0, -2.0).is_err());
    }

    #[test]
    fn size_generates_the_nu_gausson() {
        // c real > 0 applied to phi_k at t = 0 gives phi_{k,nu}, nu = -lambda ln c^2
        let p = params();
        let (_, kp) = gausson_k(&p).unwrap();
        let phi =
            gausson_field(&GaussonSpec::new(kp, 0.0, GaussonBranch::Plus).unwrap(), &p, grid())
                .unwrap();
        let c = 1.7f64;
        let nu = -p.lambda * (c * c).ln();
        let scaled = apply_size(&phi, Complex64::new(c, 0.0), 0.0, p.lambda).unwrap();
        let expected =
            gausson_field(&GaussonSpec::new(kp, nu, GaussonBranch::Plus).unwrap(), &p, grid())
                .unwrap();
        assert!(scaled.l2_distance(&expected).unwrap() < 1e-12 * expected.l2_norm());
    }

    #[test]
    fn size_preserves_mass_iff_unimodular() {
        let u = gaussian();
        let gauge = apply_size(&u, Complex64::from_polar(1.0, 1.1), 2.0, -2.0).unwrap();
        assert_relative_eq!(gauge.mass(), u.mass(), max_relative = 1e-14);
        let grown = apply_size(&u, Complex64::new(0.0, 2.0), 2.0, -2.0).unwrap();
        assert_relative_eq!(grown.mass(), 4.0 * u.mass(), max_relative = 1e-14);
    }

    #[test]
    fn galilean_at_time_zero_is_plane_wave_multiplication() {
        let u = gaussian();
        let v = 0.4;
        let out = apply_galilean(&u, &[v], 0.0, 1.0).unwrap();
        let direct = WaveField::from_fn_1d(grid(), |x| {
            Complex64::new((-x * x / 2.0).exp(), 0.0) * Complex64::from_polar(1.0, v * x)
        })
        .unwrap();
        assert!(out.l2_distance(&direct).unwrap() < 1e-11);
    }

    #[test]
    fn galilean_identity_at_v_zero() {
        let u = gaussian();
        let out = apply_galilean(&u, &[0.0], 1.3, 1.0).unwrap();
        assert!(out.l2_distance(&u).unwrap() < 1e-12);
    }

    #[test]
    fn galilean_requires_positive_omega() {
        let u = gaussian();
        assert!(apply_galilean(&u, &[0.1], 0.5, 0.0).is_err());
    }

    #[test]
    fn galilean_preserves_mass() {
        let u = gaussian();
        let out = apply_galilean(&u, &[0.3], 0.8, 1.0).unwrap();
        assert_relative_eq!(out.mass(), u.mass(), max_relative = 1e-12);
    }

    #[test]
    fn translation_at_time_zero_is_a_shift() {
        let u = gaussian();
        let out = apply_translation(&u, &[0.7], 0.0, 1.0).unwrap();
        let direct = u.translate(&[0.7]).unwrap();
        assert!(out.l2_distance(&direct).unwrap() < 1e-13);
    }

    #[test]
    fn translation_identity_at_x0_zero() {
        let u = gaussian();
        let out = apply_translation(&u, &[0.0], 2.0, 1.0).unwrap();
        assert!(out.l2_distance(&u).unwrap() < 1e-12);
    }

    #[test]
    fn translation_shift_grows_as_cosh() {
        let u = gaussian();
        let x0 = 0.05;
        let t = 2.0;
        let out = apply_translation(&u, &[x0], t, 1.0).unwrap();
        assert_relative_eq!(out.xmean()[0], x0 * t.cosh(), max_relative = 1e-8);
        assert_relative_eq!(out.mass(), u.mass(), max_relative = 1e-12);
    }

    #[test]
    fn oversized_translation_is_rejected() {
        let u = gaussian();
        // cosh amplifies the shift beyond the box
        assert!(matches!(
            apply_translation(&u, &[1.0], 4.0, 1.0),
            Err(Error::ShiftOutOfBox { .. })
        ));
    }

    #[test]
    fn tensor_of_gaussons_is_the_2d_gausson() {
        let mut p = params();
        let (_, kp) = gausson_k(&p).unwrap();
        let g1 = Grid::new_1d(30.0, 256).unwrap();
        let phi1 =
            gausson_field(&GaussonSpec::new(kp, 0.0, GaussonBranch::Plus).unwrap(), &p, g1)
                .unwrap();
        let prod = tensor_product(&phi1, &phi1).unwrap();
        p.dim = 2;
        let g2 = Grid::new_2d(30.0, 256).unwrap();
        let phi2 =
            gausson_field(&GaussonSpec::new(kp, 0.0, GaussonBranch::Plus).unwrap(), &p, g2)
                .unwrap();
        // d = 2 normalization is the product of the d = 1 factors
        assert!(prod.l2_distance(&phi2).unwrap() < 1e-12 * phi2.l2_norm());
    }

    #[test]
    fn tensor_with_zero_factor_is_zero() {
        let u = gaussian();
        let z = WaveField::zeros(grid());
        let prod = tensor_product(&u, &z).unwrap();
        assert_eq!(prod.mass(), 0.0);
    }

    #[test]
    fn tensor_rejects_mismatched_grids() {
        let u = gaussian();
        let other = WaveField::zeros(Grid::new_1d(20.0, 512).unwrap());
        assert!(tensor_product(&u, &other).is_err());
    }

    #[test]
    fn negative_control_differs_from_the_real_transform() {
        let u = gaussian();
        let good = apply_galilean(&u, &[0.3], 1.0, 1.0).unwrap();
        let bad = apply_galilean_negative_control(&u, &[0.3], 1.0, 1.0).unwrap();
        assert!(good.l2_distance(&bad).unwrap() > 0.1);
    }
}
