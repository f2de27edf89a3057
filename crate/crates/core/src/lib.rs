//! Kitagawa–Ueda spin squeezing for few-qubit states under independent
//! single-qubit Kraus decoherence.
//!
//! The pipeline is: build an initial state ([`states`]), push it through a
//! product channel ([`channels`]), then evaluate ε in an aligned or explicit
//! spherical frame ([`spin_frame`], [`squeezing`]). [`reference`] holds the
//! printed three-qubit closed forms and an audit comparing them to that
//! pipeline; [`sweep`] drives parameter sweeps and reports.

pub mod channels;
pub mod error;
pub mod matrix;
pub mod reference;
pub mod report;
pub mod spin_frame;
pub mod squeezing;
pub mod states;
pub mod sweep;
pub mod tolerances;

/// Largest qubit count accepted by the dense constructors.
pub const MAX_QUBITS: usize = 12;

pub use channels::{apply_product_channel, kraus_set, validate_kraus, ChannelKind, KrausChannel};
pub use error::{Error, Result};
pub use matrix::{expectation, hermitian_eigenvalues, kron, ComplexMatrix, DensityMatrix};
pub use reference::{audit, eval_reference, AuditRow, ReferenceCase, Verdict};
pub use spin_frame::{
    build_collective_operators, frame_from_mean_spin, mean_spin, rotated_components,
    CollectiveOperators, FrameMode, FrameSpec, MeanSpin, RotatedOperators,
};
pub use squeezing::{
    min_variance, moment_coefficients, squeezing_parameter, sssd_scan, MomentCoefficients,
    SqueezingResult, SssdDirection, SssdEvent,
};
pub use states::{css_state, density_from_pure, ghz_state, w_state, PureState, StateKind};
pub use tolerances::Tolerances;
