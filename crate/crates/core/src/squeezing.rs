//! Kitagawa–Ueda squeezing: second moments in the `n₁–n₂` plane, the
//! analytic minimization over the in-plane angle `χ`, and sudden-death
//! scanning over parameter sweeps.
//!
//! The in-plane variance is taken as
//! `½[M cos 2χ + N sin 2χ + O]` with
//! `M = ⟨J_{n1}² − J_{n2}²⟩`, `N = ⟨J_{n1}J_{n2} + J_{n2}J_{n1}⟩` and
//! `O = ⟨J_{n1}² + J_{n2}²⟩`. In the aligned frame `⟨J_χ⟩ = 0`, so this is
//! the true variance; in an explicit frame it is the second moment.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::matrix::{expectation_with, ComplexMatrix, DensityMatrix};
use crate::spin_frame::{
    frame_from_mean_spin_with, mean_spin, rotated_components, CollectiveOperators, FrameMode,
    FrameSpec, MeanSpin, RotatedOperators,
};
use crate::tolerances::Tolerances;

/// `(M, N, O)`; `N` is called `ncross` to keep it apart from the qubit
/// count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentCoefficients {
    pub m_coef: f64,
    pub ncross_coef: f64,
    pub o_coef: f64,
}

impl MomentCoefficients {
    pub fn new(m_coef: f64, ncross_coef: f64, o_coef: f64) -> Self {
        Self {
            m_coef,
            ncross_coef,
            o_coef,
        }
    }

    /// `√(M² + N²)`.
    pub fn anisotropy(&self) -> f64 {
        self.m_coef.hypot(self.ncross_coef)
    }

    /// In-plane second moment at angle `χ`.
    pub fn variance_at(&self, chi: f64) -> f64 {
        let (s, c) = (2.0 * chi).sin_cos();
        0.5 * (self.m_coef * c + self.ncross_coef * s + self.o_coef)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingResult {
    pub epsilon: f64,
    pub coeffs: MomentCoefficients,
    pub var_min: f64,
    pub var_max: f64,
    /// Optimal in-plane angle in `[0, π)`.
    pub chi_star: f64,
    /// Frame actually used (resolved angles in aligned mode).
    pub frame: FrameSpec,
    pub mean: MeanSpin,
}

fn checked_dims(rho: &DensityMatrix, dim: usize) -> Result<()> {
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rho.dim(),
        });
    }
    Ok(())
}

pub fn moment_coefficients(rho: &DensityMatrix, rot: &RotatedOperators) -> Result<MomentCoefficients> {
    moment_coefficients_with(rho, rot, &Tolerances::default())
}

pub fn moment_coefficients_with(
    rho: &DensityMatrix,
    rot: &RotatedOperators,
    tol: &Tolerances,
) -> Result<MomentCoefficients> {
    checked_dims(rho, rot.dim())?;
    let a2 = &rot.jn1 * &rot.jn1;
    let b2 = &rot.jn2 * &rot.jn2;
    let ab = &rot.jn1 * &rot.jn2;
    let anti: ComplexMatrix = &ab + &ab.dagger();
    let a2_mean = expectation_with(rho, &a2, tol)?;
    let b2_mean = expectation_with(rho, &b2, tol)?;
    Ok(MomentCoefficients {
        m_coef: a2_mean - b2_mean,
        ncross_coef: expectation_with(rho, &anti, tol)?,
        o_coef: a2_mean + b2_mean,
    })
}

/// Closed-form extrema of the in-plane variance and the minimizing angle.
///
/// The stationary angles solve `tan 2χ = N/M`; of the two in `[0, π)` the
/// one with the smaller variance is returned, ties going to the smaller
/// angle. `M = N = 0` gives `χ* = 0`.
pub fn min_variance(c: &MomentCoefficients) -> (f64, f64, f64) {
    let rad = c.anisotropy();
    let var_min = 0.5 * (c.o_coef - rad);
    let var_max = 0.5 * (c.o_coef + rad);
    if rad == 0.0 {
        return (var_min, var_max, 0.0);
    }
    let first = (0.5 * c.ncross_coef.atan2(c.m_coef)).rem_euclid(PI);
    let second = (first + FRAC_PI_2).rem_euclid(PI);
    let (lo, hi) = if first <= second {
        (first, second)
    } else {
        (second, first)
    };
    let chi_star = if c.variance_at(hi) < c.variance_at(lo) {
        hi
    } else {
        lo
    };
    (var_min, var_max, chi_star)
}

/// Full squeezing evaluation. In aligned mode the frame angles are
/// recomputed from the mean spin of `rho`.
pub fn squeezing_parameter(
    rho: &DensityMatrix,
    ops: &CollectiveOperators,
    frame: &FrameSpec,
) -> Result<SqueezingResult> {
    squeezing_parameter_with(rho, ops, frame, &Tolerances::default())
}

pub fn squeezing_parameter_with(
    rho: &DensityMatrix,
    ops: &CollectiveOperators,
    frame: &FrameSpec,
    tol: &Tolerances,
) -> Result<SqueezingResult> {
    checked_dims(rho, ops.dim())?;
    let mean = mean_spin(rho, ops)?;
    let frame = match frame.mode {
        FrameMode::Aligned => frame_from_mean_spin_with(&mean, tol),
        FrameMode::Explicit => *frame,
    };
    let rot = rotated_components(ops, &frame);
    let coeffs = moment_coefficients_with(rho, &rot, tol)?;
    let (var_min, var_max, chi_star) = min_variance(&coeffs);
    let n = ops.n_qubits as f64;
    Ok(SqueezingResult {
        epsilon: (2.0 / n) * (coeffs.o_coef - coeffs.anisotropy()),
        coeffs,
        var_min,
        var_max,
        chi_star,
        frame,
        mean,
    })
}

/// `⟨J_χ⟩` for the given rotated operators.
pub fn in_plane_mean(rho: &DensityMatrix, rot: &RotatedOperators, chi: f64) -> Result<f64> {
    checked_dims(rho, rot.dim())?;
    expectation_with(rho, &rot.in_plane(chi), &Tolerances::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SssdDirection {
    /// Squeezed sample followed by an unsqueezed one.
    Death,
    /// Unsqueezed sample followed by a squeezed one.
    Birth,
}

impl SssdDirection {
    pub fn as_str(self) -> &'static str {
        match self {
            SssdDirection::Death => "death",
            SssdDirection::Birth => "birth",
        }
    }
}

/// A squeezing transition between two adjacent samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SssdEvent {
    /// Index of the sample before the transition.
    pub index: usize,
    pub param_lo: f64,
    pub param_hi: f64,
    pub direction: SssdDirection,
}

/// Scans a sorted `(param, ε)` series for squeezing transitions using
/// `ε < 1 − δ` as the squeezed criterion.
pub fn sssd_scan(series: &[(f64, f64)], delta: f64) -> Result<Vec<SssdEvent>> {
    if series.is_empty() {
        return Err(Error::InvalidSeries("empty series".into()));
    }
    if series.iter().any(|(p, e)| !p.is_finite() || e.is_nan()) {
        return Err(Error::InvalidSeries("non-finite entry".into()));
    }
    if series.windows(2).any(|w| w[1].0 < w[0].0) {
        return Err(Error::InvalidSeries("parameters not sorted".into()));
    }
    let squeezed = |eps: f64| eps < 1.0 - delta;
    Ok(series
        .windows(2)
        .enumerate()
        .filter_map(|(i, w)| {
            let (a, b) = (squeezed(w[0].1), squeezed(w[1].1));
            let direction = match (a, b) {
                (true, false) => SssdDirection::Death,
                (false, true) => SssdDirection::Birth,
                _ => return None,
            };
            Some(SssdEvent {
                index: i,
                param_lo: w[0].0,
                param_hi: w[1].0,
                direction,
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{apply_product_channel, kraus_set, ChannelKind};
    use crate::spin_frame::build_collective_operators;
    use crate::states::{css_state, density_from_pure, ghz_state, w_state};

    #[test]
    fn isotropic_coefficients() {
        let (lo, hi, chi) = min_variance(&MomentCoefficients::new(0.0, 0.0, 1.5));
        assert_eq!((lo, hi, chi), (0.75, 0.75, 0.0));
    }

    #[test]
    fn simple_minimum_at_right_angle() {
        let c = MomentCoefficients::new(1.0, 0.0, 2.0);
        let (lo, hi, chi) = min_variance(&c);
        assert_eq!(lo, 0.5);
        assert_eq!(hi, 1.5);
        assert!((chi - FRAC_PI_2).abs() < 1e-15);
        assert!((c.variance_at(chi) - lo).abs() < 1e-12);
    }

    #[test]
    fn chi_star_attains_min() {
        for &(m, n, o) in &[
            (0.3, -0.4, 1.0),
            (-0.3, 0.4, 1.0),
            (-1.0, 0.0, 2.0),
            (0.0, 1.0, 1.5),
            (0.0, -1.0, 1.5),
            (-0.2, -0.9, 3.0),
        ] {
            let c = MomentCoefficients::new(m, n, o);
            let (lo, _, chi) = min_variance(&c);
            assert!((0.0..PI).contains(&chi));
            assert!((c.variance_at(chi) - lo).abs() < 1e-12, "{m} {n} {o}");
        }
    }

    #[test]
    fn css_aligned_coefficients() {
        let ops = build_collective_operators(3).unwrap();
        let rho = density_from_pure(&css_state(0.0, 0.0, 3).unwrap()).unwrap();
        let res = squeezing_parameter(&rho, &ops, &FrameSpec::aligned()).unwrap();
        let c = res.coeffs;
        assert!(c.m_coef.abs() < 1e-14 && c.ncross_coef.abs() < 1e-14);
        assert!((c.o_coef - 1.5).abs() < 1e-14);
        assert!((res.epsilon - 1.0).abs() < 1e-14);
    }

    #[test]
    fn mixed_state_any_frame() {
        let ops = build_collective_operators(3).unwrap();
        let rho = DensityMatrix::maximally_mixed(3);
        for (t, p) in [(0.0, 0.0), (0.7, 2.1), (PI, 4.0)] {
            let frame = FrameSpec::explicit(t, p).unwrap();
            let c = moment_coefficients(&rho, &rotated_components(&ops, &frame)).unwrap();
            assert!(c.m_coef.abs() < 1e-14 && c.ncross_coef.abs() < 1e-14);
            assert!((c.o_coef - 1.5).abs() < 1e-14);
        }
    }

    #[test]
    fn ghz_unsqueezed() {
        let ops = build_collective_operators(3).unwrap();
        let rho = density_from_pure(&ghz_state(3).unwrap()).unwrap();
        let res = squeezing_parameter(&rho, &ops, &FrameSpec::aligned()).unwrap();
        assert_eq!((res.frame.theta, res.frame.phi), (0.0, 0.0));
        assert!((res.epsilon - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ghz_phase_flip_stays_at_one() {
        let ops = build_collective_operators(3).unwrap();
        let ghz = density_from_pure(&ghz_state(3).unwrap()).unwrap();
        for i in 0..=10 {
            let ch = kraus_set(ChannelKind::PhaseFlip, i as f64 / 10.0).unwrap();
            let rho = apply_product_channel(&ghz, &ch, 3).unwrap();
            let res = squeezing_parameter(&rho, &ops, &FrameSpec::aligned()).unwrap();
            assert!((res.epsilon - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn w_phase_flip_half_explicit_frames() {
        // Full dephasing of the transverse components leaves ⟨J_z²⟩ = 1/4
        // and ⟨J_x²⟩ = ⟨J_y²⟩ = 3/4, so the n₂ second moment is
        // 3/4 − sin²θ/2 and ε = 1 − (2/3) sin²θ. Only the pole gives 1.
        let ops = build_collective_operators(3).unwrap();
        let w = density_from_pure(&w_state(3).unwrap()).unwrap();
        let ch = kraus_set(ChannelKind::PhaseFlip, 0.5).unwrap();
        let rho = apply_product_channel(&w, &ch, 3).unwrap();
        for k in 0..=12 {
            let theta = PI * k as f64 / 12.0;
            for phi in [0.0, 1.0, 2.5, 4.0] {
                let frame = FrameSpec::explicit(theta, phi).unwrap();
                let res = squeezing_parameter(&rho, &ops, &frame).unwrap();
                let expected = 1.0 - 2.0 / 3.0 * theta.sin().powi(2);
                assert!((res.epsilon - expected).abs() < 1e-12, "{theta} {phi}");
            }
        }
        let pole = squeezing_parameter(&rho, &ops, &FrameSpec::explicit(0.0, 2.0).unwrap()).unwrap();
        assert!((pole.epsilon - 1.0).abs() < 1e-12);
    }

    #[test]
    fn three_qubit_var_min_relation() {
        let ops = build_collective_operators(3).unwrap();
        let w = density_from_pure(&w_state(3).unwrap()).unwrap();
        let res = squeezing_parameter(&w, &ops, &FrameSpec::explicit(1.0, 0.4).unwrap()).unwrap();
        assert!((res.var_min - 0.75 * res.epsilon).abs() < 1e-12);
    }

    #[test]
    fn sssd_basic() {
        let flat: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 1.0)).collect();
        assert!(sssd_scan(&flat, 1e-9).unwrap().is_empty());

        let series = [(0.0, 0.8), (1.0, 0.9), (2.0, 1.0), (3.0, 1.0)];
        let events = sssd_scan(&series, 1e-9).unwrap();
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].direction, SssdDirection::Death);
        assert_eq!((events[0].param_lo, events[0].param_hi), (1.0, 2.0));

        let series = [(0.0, 1.0), (1.0, 0.5)];
        assert_eq!(sssd_scan(&series, 1e-9).unwrap()[0].direction, SssdDirection::Birth);
    }

    #[test]
    fn sssd_rejects_bad_series() {
        assert!(sssd_scan(&[], 1e-9).is_err());
        assert!(sssd_scan(&[(1.0, 1.0), (0.0, 1.0)], 1e-9).is_err());
    }
}
