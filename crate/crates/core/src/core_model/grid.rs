//! Uniform periodic grid on the box [−L/2, L/2)^dim.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    n: usize,
    dim: usize,
    // stored as bits to keep Eq; the box length per axis
    length_bits: u64,
}

impl Grid {
    pub fn new_1d(length: f64, n: usize) -> Result<Self> {
        Self::new(length, n, 1)
    }

    pub fn new_2d(length: f64, n: usize) -> Result<Self> {
        Self::new(length, n, 2)
    }

    pub fn new(length: f64, n: usize, dim: usize) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidParams(format!("box length {length} must be positive")));
        }
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidParams(format!("grid points N = {n} must be a power of two >= 2")));
        }
        if dim == 0 || dim > 2 {
            return Err(Error::InvalidParams(format!("grid dim = {dim} must be 1 or 2")));
        }
        Ok(Self { n, dim, length_bits: length.to_bits() })
    }

    /// Points per axis.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Box length per axis.
    pub fn length(&self) -> f64 {
        f64::from_bits(self.length_bits)
    }

    /// Total number of samples, N^dim.
    pub fn total_points(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    /// Mesh spacing per axis.
    pub fn spacing(&self) -> f64 {
        self.length() / self.n as f64
    }

    /// Volume of one cell, h^dim.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Sample coordinates along one axis: x_i = −L/2 + i·h.
    pub fn axis_coords(&self) -> Vec<f64> {
        let h = self.spacing();
        let half = self.length() / 2.0;
        (0..self.n).map(|i| -half + i as f64 * h).collect()
    }

    /// Angular wavenumbers in FFT bin order: ξ_j = 2πj/L, j ∈ {0..N/2−1, −N/2..−1}.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let base = 2.0 * std::f64::consts::PI / self.length();
        (0..self.n)
            .map(|j| {
                let signed = if j < self.n / 2 { j as isize } else { j as isize - self.n as isize };
                base * signed as f64
            })
            .collect()
    }

    /// Adequacy rule for resolving a Gaussian of decay rate k: the tail at the
    /// box edge must satisfy e^{−k(L/2)²/2} < 1e−12 and the sampling density
    /// N/L ≥ 4√k.
    pub fn adequate_for(&self, k: f64) -> bool {
        if !(k > 0.0) {
            return false;
        }
        let half = self.length() / 2.0;
        let tail = (-k * half * half / 2.0).exp();
        tail < 1e-12 && (self.n as f64 / self.length()) >= 4.0 * k.sqrt()
    }

    /// Smallest power-of-two grid satisfying [`Grid::adequate_for`] with a box
    /// of at least `min_length`.
    pub fn adequate(k: f64, min_length: f64, dim: usize) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::Domain(format!("k = {k} must be > 0")));
        }
        // tail condition: (L/2)^2 > 2*ln(1e12)/k, with a 10% margin
        let l_tail = 2.2 * (2.0 * 12.0 * std::f64::consts::LN_10 / k).sqrt();
        let length = min_length.max(l_tail).max(1.0);
        let mut n = 16usize;
        while (n as f64 / length) < 4.0 * k.sqrt() {
            n *= 2;
            if n > 1 << 22 {
                return Err(Error::GridResolution(format!(
                    "cannot resolve k = {k} on a box of length {length}"
                )));
            }
        }
        Grid::new(length, n, dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavenumber_ordering() {
        let g = Grid::new_1d(8.0, 8).unwrap();
        let xi = g.wavenumbers();
        let base = 2.0 * std::f64::consts::PI / 8.0;
        assert_eq!(xi[0], 0.0);
        assert!((xi[1] - base).abs() < 1e-15);
        assert!((xi[4] + 4.0 * base).abs() < 1e-15);
        assert!((xi[7] + base).abs() < 1e-15);
    }

    #[test]
    fn adequacy() {
        let g = Grid::new_1d(40.0, 2048).unwrap();
        assert!(g.adequate_for(3.7320508));
        assert!(g.adequate_for(0.2679492));
        // tiny box truncates the wide Gaussian
        let small = Grid::new_1d(4.0, 256).unwrap();
        assert!(!small.adequate_for(0.2679492));
        // coarse grid under-resolves
        let coarse = Grid::new_1d(40.0, 64).unwrap();
        assert!(!coarse.adequate_for(3.7320508));
    }

    #[test]
    fn auto_grid_is_adequate() {
        for k in [0.01, 0.27, 1.0, 3.73, 40.0] {
            let g = Grid::adequate(k, 0.0, 1).unwrap();
            assert!(g.adequate_for(k), "k = {k}: {g:?}");
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid::new_1d(0.0, 64).is_err());
        assert!(Grid::new_1d(10.0, 100).is_err());
        assert!(Grid::new(10.0, 64, 3).is_err());
    }
}
