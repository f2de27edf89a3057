//! Single-qubit Kraus channels and their independent product on `n` qubits.
//!
//! Parameters follow the operator matrices literally. For the three flip
//! channels `E₁ = √p·I`, so `p = 1` is the identity channel and `p = 0`
//! applies the Pauli with certainty. The damping and depolarizing channels
//! take `γt ≥ 0`, with `γt = 0` the identity.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{kron, ComplexMatrix, DensityMatrix};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelKind {
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
    AmplitudeDamping,
    PhaseDamping,
    Depolarizing,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 6] = [
        ChannelKind::BitFlip,
        ChannelKind::PhaseFlip,
        ChannelKind::BitPhaseFlip,
        ChannelKind::AmplitudeDamping,
        ChannelKind::PhaseDamping,
        ChannelKind::Depolarizing,
    ];

    /// Short name used on the command line and in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            ChannelKind::BitFlip => "bitflip",
            ChannelKind::PhaseFlip => "phaseflip",
            ChannelKind::BitPhaseFlip => "bitphaseflip",
            ChannelKind::AmplitudeDamping => "ampdamp",
            ChannelKind::PhaseDamping => "phasedamp",
            ChannelKind::Depolarizing => "depolarize",
        }
    }

    /// Flip channels take a probability; the rest take `γt`.
    pub fn is_flip(self) -> bool {
        matches!(
            self,
            ChannelKind::BitFlip | ChannelKind::PhaseFlip | ChannelKind::BitPhaseFlip
        )
    }

    pub fn op_count(self) -> usize {
        match self {
            ChannelKind::PhaseDamping => 3,
            ChannelKind::Depolarizing => 4,
            _ => 2,
        }
    }

    /// Parameter value at which the channel is the identity map.
    pub fn identity_param(self) -> f64 {
        if self.is_flip() {
            1.0
        } else {
            0.0
        }
    }

    pub fn check_param(self, param: f64) -> Result<()> {
        let ok = if self.is_flip() {
            (0.0..=1.0).contains(&param)
        } else {
            param.is_finite() && param >= 0.0
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ParamOutOfRange {
                channel: self.as_str(),
                value: param,
            })
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "bitflip" | "bit_flip" => ChannelKind::BitFlip,
            "phaseflip" | "phase_flip" => ChannelKind::PhaseFlip,
            "bitphaseflip" | "bit_phase_flip" => ChannelKind::BitPhaseFlip,
            "ampdamp" | "amplitude_damping" => ChannelKind::AmplitudeDamping,
            "phasedamp" | "phase_damping" => ChannelKind::PhaseDamping,
            "depolarize" | "depolarizing" => ChannelKind::Depolarizing,
            _ => {
                return Err(Error::Unknown {
                    what: "channel",
                    name: s.to_string(),
                })
            }
        })
    }
}

/// A named single-qubit channel and its Kraus operators.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    pub kind: ChannelKind,
    pub param: f64,
    pub ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Assembles a channel without any checks. Use [`validate_kraus`] before
    /// trusting it.
    pub fn from_parts(kind: ChannelKind, param: f64, ops: Vec<ComplexMatrix>) -> Self {
        Self { kind, param, ops }
    }
}

fn m2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![a, b, c, d]).expect("2x2 literal")
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn im(x: f64) -> Complex64 {
    Complex64::new(0.0, x)
}

pub fn kraus_set(kind: ChannelKind, param: f64) -> Result<KrausChannel> {
    kind.check_param(param)?;
    let z = re(0.0);
    let ops = match kind {
        ChannelKind::BitFlip => {
            let (a, b) = (param.sqrt(), (1.0 - param).sqrt());
            vec![m2(re(a), z, z, re(a)), m2(z, re(b), re(b), z)]
        }
        ChannelKind::PhaseFlip => {
            // second operator carries Z; an identity here would make the
            // channel trivial for every p
            let (a, b) = (param.sqrt(), (1.0 - param).sqrt());
            vec![m2(re(a), z, z, re(a)), m2(re(b), z, z, re(-b))]
        }
        ChannelKind::BitPhaseFlip => {
            let (a, b) = (param.sqrt(), (1.0 - param).sqrt());
            vec![m2(re(a), z, z, re(a)), m2(z, im(-b), im(b), z)]
        }
        ChannelKind::AmplitudeDamping => {
            let decay = (-param).exp();
            vec![
                m2(re(1.0), z, z, re(decay.sqrt())),
                m2(z, re((1.0 - decay).sqrt()), z, z),
            ]
        }
        ChannelKind::PhaseDamping => {
            let decay = (-param).exp();
            let keep = decay.sqrt();
            let lost = (1.0 - decay).sqrt();
            vec![
                m2(re(keep), z, z, re(keep)),
                m2(re(lost), z, z, z),
                m2(z, z, z, re(lost)),
            ]
        }
        ChannelKind::Depolarizing => {
            let decay = (-param).exp();
            let keep = decay.sqrt();
            let w = ((1.0 - decay) / 3.0).sqrt();
            vec![
                m2(re(keep), z, z, re(keep)),
                m2(z, re(w), re(w), z),
                m2(z, im(-w), im(w), z),
                m2(re(w), z, z, re(-w)),
            ]
        }
    };
    Ok(KrausChannel { kind, param, ops })
}

/// `‖Σ E†E − I‖_max`.
pub fn validate_kraus(ch: &KrausChannel) -> Result<f64> {
    let first = ch.ops.first().ok_or(Error::EmptyKraus)?;
    let dim = first.rows();
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for e in &ch.ops {
        acc = &acc + &e.dagger().matmul(e)?;
    }
    acc.max_abs_diff(&ComplexMatrix::identity(dim))
}

fn check_dims(rho: &DensityMatrix, ch: &KrausChannel, n: usize) -> Result<()> {
    if rho.dim() != 1usize << n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            found: rho.dim(),
        });
    }
    if ch.ops.is_empty() {
        return Err(Error::EmptyKraus);
    }
    for e in &ch.ops {
        if e.rows() != 2 || e.cols() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: e.rows(),
            });
        }
    }
    Ok(())
}

/// Applies the channel independently to every qubit and validates the
/// result as a density matrix.
///
/// Kraus maps on distinct qubits commute, so the `m^n`-term product sum is
/// evaluated as `n` successive single-qubit maps.
pub fn apply_product_channel(
    rho: &DensityMatrix,
    ch: &KrausChannel,
    n: usize,
) -> Result<DensityMatrix> {
    apply_product_channel_with(rho, ch, n, &Tolerances::default())
}

pub fn apply_product_channel_with(
    rho: &DensityMatrix,
    ch: &KrausChannel,
    n: usize,
    tol: &Tolerances,
) -> Result<DensityMatrix> {
    check_dims(rho, ch, n)?;
    let mut current = rho.matrix().clone();
    for qubit in 0..n {
        current = apply_on_qubit(&current, &ch.ops, qubit, n);
    }
    DensityMatrix::new_with(current, tol)
}

/// Like [`apply_product_channel_with`] but skips the eigenvalue check on the
/// output. Hermiticity and trace are still verified.
pub fn apply_product_channel_fast(
    rho: &DensityMatrix,
    ch: &KrausChannel,
    n: usize,
    tol: &Tolerances,
) -> Result<DensityMatrix> {
    check_dims(rho, ch, n)?;
    let mut current = rho.matrix().clone();
    for qubit in 0..n {
        current = apply_on_qubit(&current, &ch.ops, qubit, n);
    }
    DensityMatrix::new_unchecked_positivity(current, tol)
}

fn apply_on_qubit(rho: &ComplexMatrix, ops: &[ComplexMatrix], qubit: usize, n: usize) -> ComplexMatrix {
    let dim = rho.rows();
    let mask = 1usize << (n - 1 - qubit);
    let mut out = ComplexMatrix::zeros(dim, dim);
    let mut left = ComplexMatrix::zeros(dim, dim);
    for e in ops {
        // left = (I ⊗ E ⊗ I) ρ
        for r in 0..dim {
            let rb = usize::from(r & mask != 0);
            let r0 = r & !mask;
            let (e0, e1) = (e[(rb, 0)], e[(rb, 1)]);
            for c in 0..dim {
                left[(r, c)] = e0 * rho[(r0, c)] + e1 * rho[(r0 | mask, c)];
            }
        }
        // out += left (I ⊗ E† ⊗ I)
        for c in 0..dim {
            let cb = usize::from(c & mask != 0);
            let c0 = c & !mask;
            let (f0, f1) = (e[(cb, 0)].conj(), e[(cb, 1)].conj());
            for r in 0..dim {
                out[(r, c)] += left[(r, c0)] * f0 + left[(r, c0 | mask)] * f1;
            }
        }
    }
    out
}

/// Literal evaluation of `Σ (E_i ⊗ E_j ⊗ …) ρ (E_i ⊗ E_j ⊗ …)†` over all
/// `m^n` index tuples. Exponential in `n`; kept as a cross-check for
/// [`apply_product_channel`].
pub fn apply_product_channel_by_tuples(
    rho: &DensityMatrix,
    ch: &KrausChannel,
    n: usize,
) -> Result<ComplexMatrix> {
    check_dims(rho, ch, n)?;
    let m = ch.ops.len();
    let dim = rho.dim();
    let mut out = ComplexMatrix::zeros(dim, dim);
    let mut tuple = vec![0usize; n];
    loop {
        let mut big = ComplexMatrix::identity(1);
        for &i in &tuple {
            big = kron(&big, &ch.ops[i]);
        }
        let term = big.matmul(rho.matrix())?.matmul(&big.dagger())?;
        out = &out + &term;

        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            tuple[k] += 1;
            if tuple[k] < m {
                break;
            }
            tuple[k] = 0;
        }
    }
}

/// `‖D(g₂)∘D(g₁)ρ − D(g₁+g₂)ρ‖_max` for the depolarizing channel. The
/// parameterization is not a semigroup in `γt`, so this is generally
/// nonzero; it is reported, never asserted.
pub fn depolarizing_semigroup_residual(
    rho: &DensityMatrix,
    n: usize,
    g1: f64,
    g2: f64,
) -> Result<f64> {
    let once = apply_product_channel(rho, &kraus_set(ChannelKind::Depolarizing, g1)?, n)?;
    let twice = apply_product_channel(&once, &kraus_set(ChannelKind::Depolarizing, g2)?, n)?;
    let direct = apply_product_channel(rho, &kraus_set(ChannelKind::Depolarizing, g1 + g2)?, n)?;
    twice.matrix().max_abs_diff(direct.matrix())
}
