//! Gausson profiles on grids and the discrete stationary residual.

use num_complex::Complex64;

use super::field::WaveField;
use super::grid::Grid;
use super::params::{GaussonSpec, PhysParams};
use crate::error::{Error, Result};
use crate::spectral;

/// Sample φ_{k,ν} on the grid. Real-valued (zero imaginary part).
///
/// Fails if the grid cannot resolve or contain the Gaussian, or if the grid
/// dimension differs from `params.dim`.
pub fn gausson_field(spec: &GaussonSpec, params: &PhysParams, grid: Grid) -> Result<WaveField> {
    if grid.dim() != params.dim {
        return Err(Error::GridMismatch(format!(
            "grid dim {} != params dim {}",
            grid.dim(),
            params.dim
        )));
    }
    if !(spec.k > 0.0) {
        return Err(Error::Domain(format!("k = {} must be > 0", spec.k)));
    }
    if !grid.adequate_for(spec.k) {
        return Err(Error::GridResolution(format!(
            "grid (L = {}, N = {}) cannot resolve a Gaussian with k = {}",
            grid.length(),
            grid.n(),
            spec.k
        )));
    }
    let p = *params;
    let s = *spec;
    match grid.dim() {
        1 => WaveField::from_fn_1d(grid, move |x| Complex64::new(s.profile_at(x * x, &p), 0.0)),
        _ => WaveField::from_fn_2d(grid, move |x, y| {
            Complex64::new(s.profile_at(x * x + y * y, &p), 0.0)
        }),
    }
}

/// L² norm of the discrete stationary residual
/// −½Δφ ± ω²|x|²/2 φ + λ φ ln|φ|² + ν φ, with a spectral Laplacian.
///
/// For a solitary-wave profile at frequency ν pass `nu`; for the stationary
/// equation pass ν = 0.
pub fn stationary_residual(phi: &WaveField, params: &PhysParams, nu: f64) -> f64 {
    let n = phi.grid().n();
    let dim = phi.grid().dim();
    let mut lap = phi.values().to_vec();
    spectral::fft_nd(&mut lap, n, dim, true);
    let xi = phi.grid().wavenumbers();
    match dim {
        1 => {
            for (j, v) in lap.iter_mut().enumerate() {
                *v *= -xi[j] * xi[j];
            }
        }
        _ => {
            for (idx, v) in lap.iter_mut().enumerate() {
                let kx = xi[idx % n];
                let ky = xi[idx / n];
                *v *= -(kx * kx + ky * ky);
            }
        }
    }
    spectral::fft_nd(&mut lap, n, dim, false);

    let half_pot = 0.5 * params.potential_coeff();
    let cell = phi.grid().cell_volume();
    let mut acc = 0.0;
    for (i, v) in phi.values().iter().enumerate() {
        let s = v.norm_sqr();
        // s ln s -> 0 at vacuum points; guard the 0 * (-inf) case
        let log_term = if s == 0.0 { Complex64::default() } else { v * s.ln() };
        let r = -0.5 * lap[i]
            + half_pot * phi.radius_sq_at(i) * v
            + params.lambda * log_term
            + nu * v;
        acc += r.norm_sqr();
    }
    (acc * cell).sqrt()
}
