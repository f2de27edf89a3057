//! Initial states: GHZ, W, and coherent spin states.
//!
//! Basis convention: `|0⟩` is the `σ_z = +1` eigenvector ("spin up") and
//! qubit 0 is the most significant bit of a basis index, so `|100⟩` is
//! index 4.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, DensityMatrix};
use crate::tolerances::Tolerances;

/// Which initial state a computation starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateKind {
    Ghz,
    W,
    /// Coherent spin state; Bloch angles are supplied separately.
    Css,
}

impl StateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StateKind::Ghz => "ghz",
            StateKind::W => "w",
            StateKind::Css => "css",
        }
    }
}

impl std::fmt::Display for StateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for StateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ghz" => Ok(StateKind::Ghz),
            "w" => Ok(StateKind::W),
            "css" => Ok(StateKind::Css),
            _ => Err(Error::Unknown {
                what: "state",
                name: s.to_string(),
            }),
        }
    }
}

/// Normalized state vector on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    n_qubits: usize,
}

impl PureState {
    /// Wraps amplitudes that must already be normalized.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > Tolerances::default().norm {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            n_qubits: dim.trailing_zeros() as usize,
            amplitudes,
        })
    }

    /// Rescales to unit norm. Fails on the zero vector.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Self::new(amplitudes)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Relabels qubits: qubit `k` of the result is qubit `perm[k]` of `self`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Self {
        let n = self.n_qubits;
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            out[permute_index(idx, perm, n)] = *amp;
        }
        Self {
            amplitudes: out,
            n_qubits: n,
        }
    }
}

/// Maps a basis index through a qubit relabeling. Qubit `k` of the output
/// reads qubit `perm[k]` of the input; qubit 0 is the most significant bit.
pub fn permute_index(idx: usize, perm: &[usize], n: usize) -> usize {
    assert_eq!(perm.len(), n, "permutation length must equal qubit count");
    let mut out = 0;
    for (k, &src) in perm.iter().enumerate() {
        let bit = (idx >> (n - 1 - src)) & 1;
        out |= bit << (n - 1 - k);
    }
    out
}

fn check_at_least_two(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::QubitCount {
            n,
            min: 2,
            max: crate::MAX_QUBITS,
        });
    }
    Ok(())
}

fn check_upper(n: usize, min: usize) -> Result<()> {
    if n > crate::MAX_QUBITS {
        return Err(Error::QubitCount {
            n,
            min,
            max: crate::MAX_QUBITS,
        });
    }
    Ok(())
}

/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn ghz_state(n: usize) -> Result<PureState> {
    check_at_least_two(n)?;
    check_upper(n, 2)?;
    let dim = 1usize << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[dim - 1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    PureState::new(amps)
}

/// Equal superposition of all single-excitation basis states.
pub fn w_state(n: usize) -> Result<PureState> {
    check_at_least_two(n)?;
    check_upper(n, 2)?;
    let dim = 1usize << n;
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    for k in 0..n {
        amps[1 << k] = amp;
    }
    PureState::new(amps)
}

/// `n`-fold product of `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
pub fn css_state(theta: f64, phi: f64, n: usize) -> Result<PureState> {
    if n < 1 {
        return Err(Error::QubitCount {
            n,
            min: 1,
            max: crate::MAX_QUBITS,
        });
    }
    check_upper(n, 1)?;
    let up = Complex64::new((theta / 2.0).cos(), 0.0);
    let down = Complex64::from_polar((theta / 2.0).sin(), phi);
    let dim = 1usize << n;
    let amps = (0..dim)
        .map(|idx| {
            let ones = idx.count_ones() as i32;
            up.powi(n as i32 - ones) * down.powi(ones)
        })
        .collect();
    PureState::normalized(amps)
}

/// `|ψ⟩⟨ψ|`, fully validated.
pub fn density_from_pure(psi: &PureState) -> Result<DensityMatrix> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > Tolerances::default().norm {
        return Err(Error::NotNormalized { norm });
    }
    let dim = psi.dim();
    let amps = psi.amplitudes();
    let mut data = Vec::with_capacity(dim * dim);
    for a in amps {
        for b in amps {
            data.push(a * b.conj());
        }
    }
    DensityMatrix::new(ComplexMatrix::new(dim, dim, data)?)
}
