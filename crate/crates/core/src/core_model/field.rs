//! Complex field sampled on a uniform periodic grid; the PDE state.

use num_complex::Complex64;

use super::grid::Grid;
use crate::error::{Error, Result};
use crate::spectral;

#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    grid: Grid,
    values: Vec<Complex64>,
}

impl WaveField {
    pub fn zeros(grid: Grid) -> Self {
        Self { grid, values: vec![Complex64::default(); grid.total_points()] }
    }

    pub fn from_values(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.total_points() {
            return Err(Error::GridMismatch(format!(
                "expected {} samples, got {}",
                grid.total_points(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    /// Sample a 1D function on the grid.
    pub fn from_fn_1d(grid: Grid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        if grid.dim() != 1 {
            return Err(Error::GridMismatch("from_fn_1d requires a 1D grid".into()));
        }
        let values = grid.axis_coords().iter().map(|&x| f(x)).collect();
        Ok(Self { grid, values })
    }

    /// Sample a 2D function on the grid (row-major: index = iy·N + ix).
    pub fn from_fn_2d(grid: Grid, f: impl Fn(f64, f64) -> Complex64) -> Result<Self> {
        if grid.dim() != 2 {
            return Err(Error::GridMismatch("from_fn_2d requires a 2D grid".into()));
        }
        let xs = grid.axis_coords();
        let mut values = Vec::with_capacity(grid.total_points());
        for &y in &xs {
            for &x in &xs {
                values.push(f(x, y));
            }
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    /// |x|² at sample index, matching the row-major layout.
    pub(crate) fn radius_sq_at(&self, idx: usize) -> f64 {
        let n = self.grid.n();
        let h = self.grid.spacing();
        let half = self.grid.length() / 2.0;
        match self.grid.dim() {
            1 => {
                let x = -half + (idx % n) as f64 * h;
                x * x
            }
            _ => {
                let x = -half + (idx % n) as f64 * h;
                let y = -half + (idx / n) as f64 * h;
                x * x + y * y
            }
        }
    }

    fn check_same_grid(&self, other: &WaveField) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("fields live on different grids".into()));
        }
        Ok(())
    }

    /// M(u) = ‖u‖²_{L²}, by the rectangle rule.
    pub fn mass(&self) -> f64 {
        self.grid.cell_volume() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }

    pub fn l2_norm(&self) -> f64 {
        self.mass().sqrt()
    }

    /// ⟨u, v⟩ = ∫ ū v.
    pub fn inner(&self, other: &WaveField) -> Result<Complex64> {
        self.check_same_grid(other)?;
        let s: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(s * self.grid.cell_volume())
    }

    pub fn l2_distance(&self, other: &WaveField) -> Result<f64> {
        self.check_same_grid(other)?;
        let s: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok((s * self.grid.cell_volume()).sqrt())
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// ∫ |x|² |u|².
    pub fn second_moment(&self) -> f64 {
        let cell = self.grid.cell_volume();
        cell * self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| self.radius_sq_at(i) * v.norm_sqr())
            .sum::<f64>()
    }

    /// Center of mass ⟨x⟩ per axis; zero vector for a zero field.
    pub fn xmean(&self) -> Vec<f64> {
        let m = self.mass();
        if m == 0.0 {
            return vec![0.0; self.grid.dim()];
        }
        let n = self.grid.n();
        let h = self.grid.spacing();
        let half = self.grid.length() / 2.0;
        let cell = self.grid.cell_volume();
        let mut acc = vec![0.0; self.grid.dim()];
        for (i, v) in self.values.iter().enumerate() {
            let w = v.norm_sqr();
            acc[0] += (-half + (i % n) as f64 * h) * w;
            if self.grid.dim() == 2 {
                acc[1] += (-half + (i / n) as f64 * h) * w;
            }
        }
        acc.iter().map(|a| a * cell / m).collect()
    }

    /// ∫ |x − ⟨x⟩|² |u|² / M(u); zero for a zero field.
    pub fn variance(&self) -> f64 {
        let m = self.mass();
        if m == 0.0 {
            return 0.0;
        }
        let mean = self.xmean();
        let mean_sq: f64 = mean.iter().map(|c| c * c).sum();
        self.second_moment() / m - mean_sq
    }

    /// ‖∇u‖²_{L²} by Parseval: (cell/N^dim) Σ_k |ξ_k|² |û_k|².
    pub fn grad_sq(&self) -> f64 {
        let mut hat = self.values.clone();
        spectral::fft_nd(&mut hat, self.grid.n(), self.grid.dim(), true);
        let xi = self.grid.wavenumbers();
        let n = self.grid.n();
        let mut acc = 0.0;
        match self.grid.dim() {
            1 => {
                for (j, v) in hat.iter().enumerate() {
                    acc += xi[j] * xi[j] * v.norm_sqr();
                }
            }
            _ => {
                for (idx, v) in hat.iter().enumerate() {
                    let kx = xi[idx % n];
                    let ky = xi[idx / n];
                    acc += (kx * kx + ky * ky) * v.norm_sqr();
                }
            }
        }
        acc * self.grid.cell_volume() / self.grid.total_points() as f64
    }

    /// Pointwise scaling by a complex constant.
    pub fn scaled(&self, c: Complex64) -> WaveField {
        let values = self.values.iter().map(|v| v * c).collect();
        Self { grid: self.grid, values }
    }

    pub fn sub(&self, other: &WaveField) -> Result<WaveField> {
        self.check_same_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(Self { grid: self.grid, values })
    }

    /// Translate by `shift` (one entry per axis) via Fourier phase shifts.
    ///
    /// Exact for band-limited data; errors if any component exceeds half the
    /// box (the periodic image would wrap around).
    pub fn translate(&self, shift: &[f64]) -> Result<WaveField> {
        if shift.len() != self.grid.dim() {
            return Err(Error::GridMismatch(format!(
                "shift has {} components for a {}D field",
                shift.len(),
                self.grid.dim()
            )));
        }
        let half_box = self.grid.length() / 2.0;
        for &s in shift {
            if s.abs() > half_box {
                return Err(Error::ShiftOutOfBox { shift: s, half_box });
            }
        }
        let mut hat = self.values.clone();
        let n = self.grid.n();
        spectral::fft_nd(&mut hat, n, self.grid.dim(), true);
        let xi = self.grid.wavenumbers();
        match self.grid.dim() {
            1 => {
                for (j, v) in hat.iter_mut().enumerate() {
                    *v *= Complex64::from_polar(1.0, -xi[j] * shift[0]);
                }
            }
            _ => {
                for (idx, v) in hat.iter_mut().enumerate() {
                    let phase = -xi[idx % n] * shift[0] - xi[idx / n] * shift[1];
                    *v *= Complex64::from_polar(1.0, phase);
                }
            }
        }
        spectral::fft_nd(&mut hat, n, self.grid.dim(), false);
        Ok(Self { grid: self.grid, values: hat })
    }

    /// Mass fraction within `edge_fraction` of the box boundary (per axis).
    pub fn boundary_mass_fraction(&self, edge_fraction: f64) -> f64 {
        let m = self.mass();
        if m == 0.0 {
            return 0.0;
        }
        let n = self.grid.n();
        let h = self.grid.spacing();
        let half = self.grid.length() / 2.0;
        let cut = half * (1.0 - 2.0 * edge_fraction);
        let outer: f64 = self
            .values
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let x = -half + (i % n) as f64 * h;
                let near = x.abs() >= cut;
                if self.grid.dim() == 2 {
                    let y = -half + (i / n) as f64 * h;
                    near || y.abs() >= cut
                } else {
                    near
                }
            })
            .map(|(_, v)| v.norm_sqr())
            .sum();
        outer * self.grid.cell_volume() / m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn gaussian_1d(grid: Grid, k: f64) -> WaveField {
        WaveField::from_fn_1d(grid, |x| Complex64::new((-k * x * x / 2.0).exp(), 0.0)).unwrap()
    }

    #[test]
    fn mass_of_unit_gaussian() {
        let g = Grid::new_1d(40.0, 1024).unwrap();
        let u = gaussian_1d(g, 1.0);
        // integral of e^{-x^2} = sqrt(pi)
        assert_relative_eq!(u.mass(), std::f64::consts::PI.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn mass_scales_quadratically() {
        let g = Grid::new_1d(40.0, 512).unwrap();
        let u = gaussian_1d(g, 1.0);
        let c = Complex64::new(0.3, -1.2);
        assert_relative_eq!(u.scaled(c).mass(), c.norm_sqr() * u.mass(), max_relative = 1e-13);
    }

    #[test]
    fn zero_field_observables() {
        let g = Grid::new_1d(10.0, 64).unwrap();
        let u = WaveField::zeros(g);
        assert_eq!(u.mass(), 0.0);
        assert_eq!(u.variance(), 0.0);
        assert_eq!(u.xmean(), vec![0.0]);
        assert_eq!(u.boundary_mass_fraction(0.05), 0.0);
    }

    #[test]
    fn grad_sq_of_gaussian() {
        // || d/dx e^{-x^2/2} ||^2 = sqrt(pi)/2
        let g = Grid::new_1d(40.0, 1024).unwrap();
        let u = gaussian_1d(g, 1.0);
        assert_relative_eq!(u.grad_sq(), std::f64::consts::PI.sqrt() / 2.0, max_relative = 1e-10);
    }

    #[test]
    fn second_moment_of_gaussian() {
        // int x^2 e^{-x^2} = sqrt(pi)/2
        let g = Grid::new_1d(40.0, 1024).unwrap();
        let u = gaussian_1d(g, 1.0);
        assert_relative_eq!(u.second_moment(), std::f64::consts::PI.sqrt() / 2.0, max_relative = 1e-10);
    }

    #[test]
    fn spectral_translation_matches_resampling() {
        let g = Grid::new_1d(40.0, 1024).unwrap();
        let k = 2.0;
        let u = gaussian_1d(g, k);
        let s = 0.4217; // deliberately off-grid
        let shifted = u.translate(&[s]).unwrap();
        let direct =
            WaveField::from_fn_1d(g, |x| Complex64::new((-k * (x - s) * (x - s) / 2.0).exp(), 0.0))
                .unwrap();
        assert!(shifted.l2_distance(&direct).unwrap() < 1e-12);
    }

    #[test]
    fn translation_rejects_large_shift() {
        let g = Grid::new_1d(10.0, 64).unwrap();
        let u = gaussian_1d(g, 2.0);
        assert!(matches!(u.translate(&[6.0]), Err(Error::ShiftOutOfBox { .. })));
    }

    #[test]
    fn xmean_tracks_offset_gaussian() {
        let g = Grid::new_1d(40.0, 1024).unwrap();
        let u = WaveField::from_fn_1d(g, |x| {
            Complex64::new((-(x - 1.5) * (x - 1.5) / 2.0).exp(), 0.0)
        })
        .unwrap();
        assert_relative_eq!(u.xmean()[0], 1.5, max_relative = 1e-10);
        assert_relative_eq!(u.variance(), 0.5, max_relative = 1e-9);
    }

    #[test]
    fn tensor_layout_2d() {
        let g = Grid::new_2d(20.0, 64).unwrap();
        let u = WaveField::from_fn_2d(g, |x, y| Complex64::new(x + 10.0 * y, 0.0)).unwrap();
        let xs = g.axis_coords();
        // row-major: index = iy*N + ix
        assert_eq!(u.values()[5], Complex64::new(xs[5] + 10.0 * xs[0], 0.0));
        assert_eq!(u.values()[64 * 3], Complex64::new(xs[0] + 10.0 * xs[3], 0.0));
    }
}
