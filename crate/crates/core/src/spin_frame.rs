//! Collective spin operators, mean-spin geometry, and the rotated frame
//! `(n₁, n₂, n₃)`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{expectation, ComplexMatrix, DensityMatrix};
use crate::tolerances::Tolerances;

/// `J_a = ½ Σ_k σ_a^(k)` for `n` spin-½ particles.
#[derive(Debug, Clone)]
pub struct CollectiveOperators {
    pub n_qubits: usize,
    pub jx: ComplexMatrix,
    pub jy: ComplexMatrix,
    pub jz: ComplexMatrix,
    /// Spin quantum number `J = n/2`.
    pub j_total: f64,
}

impl CollectiveOperators {
    pub fn dim(&self) -> usize {
        self.jx.rows()
    }

    /// `J_x² + J_y² + J_z²`.
    pub fn casimir(&self) -> ComplexMatrix {
        let xx = &self.jx * &self.jx;
        let yy = &self.jy * &self.jy;
        let zz = &self.jz * &self.jz;
        &(&xx + &yy) + &zz
    }
}

/// Builds the collective operators directly in the computational basis.
pub fn build_collective_operators(n: usize) -> Result<CollectiveOperators> {
    if !(1..=crate::MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount {
            n,
            min: 1,
            max: crate::MAX_QUBITS,
        });
    }
    let dim = 1usize << n;
    let mut jx = ComplexMatrix::zeros(dim, dim);
    let mut jy = ComplexMatrix::zeros(dim, dim);
    let mut jz = ComplexMatrix::zeros(dim, dim);
    for idx in 0..dim {
        let ones = idx.count_ones() as f64;
        jz[(idx, idx)] = Complex64::new(0.5 * (n as f64 - 2.0 * ones), 0.0);
        for k in 0..n {
            let mask = 1usize << (n - 1 - k);
            let flipped = idx ^ mask;
            jx[(flipped, idx)] += Complex64::new(0.5, 0.0);
            // σ_y|0⟩ = i|1⟩, σ_y|1⟩ = -i|0⟩
            let sign = if idx & mask == 0 { 0.5 } else { -0.5 };
            jy[(flipped, idx)] += Complex64::new(0.0, sign);
        }
    }
    Ok(CollectiveOperators {
        n_qubits: n,
        jx,
        jy,
        jz,
        j_total: n as f64 / 2.0,
    })
}

/// Mean spin vector `(⟨J_x⟩, ⟨J_y⟩, ⟨J_z⟩)` with its length `r` and
/// xy-projection length `big_r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSpin {
    pub jx_mean: f64,
    pub jy_mean: f64,
    pub jz_mean: f64,
    pub r: f64,
    pub big_r: f64,
}

impl MeanSpin {
    pub fn from_components(jx_mean: f64, jy_mean: f64, jz_mean: f64) -> Self {
        let big_r = jx_mean.hypot(jy_mean);
        Self {
            jx_mean,
            jy_mean,
            jz_mean,
            r: big_r.hypot(jz_mean),
            big_r,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.jx_mean, self.jy_mean, self.jz_mean]
    }
}

pub fn mean_spin(rho: &DensityMatrix, ops: &CollectiveOperators) -> Result<MeanSpin> {
    if rho.dim() != ops.dim() {
        return Err(Error::DimensionMismatch {
            expected: ops.dim(),
            found: rho.dim(),
        });
    }
    Ok(MeanSpin::from_components(
        expectation(rho, &ops.jx)?,
        expectation(rho, &ops.jy)?,
        expectation(rho, &ops.jz)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameMode {
    /// `n₃` follows the mean spin; supplied angles are ignored.
    Aligned,
    /// Caller-supplied `(θ, φ)`.
    Explicit,
}

impl FrameMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FrameMode::Aligned => "aligned",
            FrameMode::Explicit => "explicit",
        }
    }
}

impl std::str::FromStr for FrameMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "aligned" => Ok(FrameMode::Aligned),
            "explicit" => Ok(FrameMode::Explicit),
            _ => Err(Error::Unknown {
                what: "frame mode",
                name: s.to_string(),
            }),
        }
    }
}

/// Polar angle `θ ∈ [0, π]` and azimuth `φ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameSpec {
    pub theta: f64,
    pub phi: f64,
    pub mode: FrameMode,
}

impl FrameSpec {
    /// Explicit frame; `φ` is wrapped into `[0, 2π)`.
    pub fn explicit(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::AngleOutOfRange {
                name: "theta",
                value: theta,
                range: "[0, pi]",
            });
        }
        if !phi.is_finite() {
            return Err(Error::AngleOutOfRange {
                name: "phi",
                value: phi,
                range: "[0, 2pi)",
            });
        }
        Ok(Self {
            theta,
            phi: wrap_azimuth(phi),
            mode: FrameMode::Explicit,
        })
    }

    /// Aligned frame; the angles are filled in once the state is known.
    pub fn aligned() -> Self {
        Self {
            theta: 0.0,
            phi: 0.0,
            mode: FrameMode::Aligned,
        }
    }

    /// Unit vectors `(n₁, n₂, n₃)` as rows.
    pub fn basis(&self) -> [[f64; 3]; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [
            [-sp, cp, 0.0],
            [-ct * cp, -ct * sp, st],
            [st * cp, st * sp, ct],
        ]
    }
}

fn wrap_azimuth(phi: f64) -> f64 {
    let w = phi.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Frame whose `n₃` points along the mean spin. A vanishing mean spin gives
/// `(0, 0)`; a mean spin on the z axis gives `φ = 0`.
pub fn frame_from_mean_spin(ms: &MeanSpin) -> FrameSpec {
    frame_from_mean_spin_with(ms, &Tolerances::default())
}

pub fn frame_from_mean_spin_with(ms: &MeanSpin, tol: &Tolerances) -> FrameSpec {
    let mut frame = FrameSpec::aligned();
    if ms.r < tol.degenerate_spin {
        return frame;
    }
    frame.theta = (ms.jz_mean / ms.r).clamp(-1.0, 1.0).acos();
    if ms.big_r >= tol.degenerate_spin {
        frame.phi = wrap_azimuth(ms.jy_mean.atan2(ms.jx_mean));
    }
    frame
}

/// `(J_{n1}, J_{n2}, J_{n3})` in the frame.
#[derive(Debug, Clone)]
pub struct RotatedOperators {
    pub jn1: ComplexMatrix,
    pub jn2: ComplexMatrix,
    pub jn3: ComplexMatrix,
}

impl RotatedOperators {
    pub fn dim(&self) -> usize {
        self.jn1.rows()
    }

    /// `J_χ = J_{n1} cos χ + J_{n2} sin χ`.
    pub fn in_plane(&self, chi: f64) -> ComplexMatrix {
        let (s, c) = chi.sin_cos();
        &self.jn1.scale_real(c) + &self.jn2.scale_real(s)
    }
}

fn combine(ops: &CollectiveOperators, w: [f64; 3]) -> ComplexMatrix {
    let x = ops.jx.scale_real(w[0]);
    let y = ops.jy.scale_real(w[1]);
    let z = ops.jz.scale_real(w[2]);
    &(&x + &y) + &z
}

pub fn rotated_components(ops: &CollectiveOperators, frame: &FrameSpec) -> RotatedOperators {
    let [n1, n2, n3] = frame.basis();
    RotatedOperators {
        jn1: combine(ops, n1),
        jn2: combine(ops, n2),
        jn3: combine(ops, n3),
    }
}
