//! Cached FFT plans and transforms over flat row-major buffers.
//!
//! All transforms are in place. The inverse is normalized so that
//! `inverse(forward(u)) == u` up to round-off.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rustfft::{Fft, FftPlanner};

type Plan = Arc<dyn Fft<f64>>;

static PLANS: Lazy<Mutex<HashMap<(usize, bool), Plan>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn plan(n: usize, forward: bool) -> Plan {
    let mut cache = PLANS.lock().unwrap();
    cache
        .entry((n, forward))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if forward {
                planner.plan_fft_forward(n)
            } else {
                planner.plan_fft_inverse(n)
            }
        })
        .clone()
}

fn run(values: &mut [Complex64], n: usize, forward: bool) {
    debug_assert_eq!(values.len() % n, 0);
    let p = plan(n, forward);
    let mut scratch = vec![Complex64::default(); p.get_inplace_scratch_len()];
    for chunk in values.chunks_exact_mut(n) {
        p.process_with_scratch(chunk, &mut scratch);
    }
    if !forward {
        let scale = 1.0 / n as f64;
        for v in values.iter_mut() {
            *v *= scale;
        }
    }
}

/// 1D transform of every contiguous row of length `n`.
pub(crate) fn fft_rows(values: &mut [Complex64], n: usize, forward: bool) {
    run(values, n, forward);
}

/// Full transform of a `dim`-dimensional row-major array with `n` points per axis.
pub(crate) fn fft_nd(values: &mut [Complex64], n: usize, dim: usize, forward: bool) {
    match dim {
        1 => run(values, n, forward),
        2 => {
            run(values, n, forward);
            transpose_square(values, n);
            run(values, n, forward);
            transpose_square(values, n);
        }
        d => panic!("unsupported dimension {d}"),
    }
}

fn transpose_square(values: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            values.swap(i * n + j, j * n + i);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_1d() {
        let n = 64;
        let orig: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new((i as f64).sin(), (i as f64 * 0.3).cos()))
            .collect();
        let mut v = orig.clone();
        fft_nd(&mut v, n, 1, true);
        fft_nd(&mut v, n, 1, false);
        for (a, b) in v.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn roundtrip_2d() {
        let n = 16;
        let orig: Vec<Complex64> = (0..n * n)
            .map(|i| Complex64::new((i as f64).sin(), (i as f64 * 0.7).cos()))
            .collect();
        let mut v = orig.clone();
        fft_nd(&mut v, n, 2, true);
        fft_nd(&mut v, n, 2, false);
        for (a, b) in v.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn forward_matches_dft_definition() {
        let n = 8;
        let orig: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(i as f64, -(i as f64) * 0.5))
            .collect();
        let mut v = orig.clone();
        fft_nd(&mut v, n, 1, true);
        for (k, vk) in v.iter().enumerate() {
            let mut acc = Complex64::default();
            for (j, &uj) in orig.iter().enumerate() {
                let ang = -2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64;
                acc += uj * Complex64::new(ang.cos(), ang.sin());
            }
            assert!((vk - acc).norm() < 1e-10);
        }
    }
}
