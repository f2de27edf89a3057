#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use spinsq_core::matrix::{ComplexMatrix, DensityMatrix};
use spinsq_core::states::{density_from_pure, permute_index, PureState};

/// Gaussian amplitudes, normalized: uniform on the unit sphere.
pub fn random_pure<R: Rng>(rng: &mut R, n: usize) -> PureState {
    let amps = (0..1usize << n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    PureState::normalized(amps).unwrap()
}

pub fn random_density<R: Rng>(rng: &mut R, n: usize) -> DensityMatrix {
    density_from_pure(&random_pure(rng, n)).unwrap()
}

/// Relabels qubits of a matrix acting on `n` qubits.
pub fn permute_matrix(m: &ComplexMatrix, perm: &[usize], n: usize) -> ComplexMatrix {
    let dim = m.rows();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(permute_index(i, perm, n), permute_index(j, perm, n))] = m[(i, j)];
        }
    }
    out
}

/// Brute-force minimum of the in-plane variance over an even χ grid on
/// `[0, π)`.
pub fn grid_min(m: f64, n: f64, o: f64, points: usize) -> f64 {
    (0..points)
        .map(|k| {
            let chi = std::f64::consts::PI * k as f64 / points as f64;
            0.5 * (m * (2.0 * chi).cos() + n * (2.0 * chi).sin() + o)
        })
        .fold(f64::INFINITY, f64::min)
}
