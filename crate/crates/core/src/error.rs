use thiserror::Error;

/// Errors produced by the squeezing toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry count {found} does not match {rows}x{cols}")]
    ShapeMismatch { rows: usize, cols: usize, found: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("trace {trace_re} + {trace_im}i is not one")]
    BadTrace { trace_re: f64, trace_im: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("state vector norm {norm} differs from one")]
    NotNormalized { norm: f64 },

    #[error("expectation has imaginary part {imag:e}")]
    ComplexExpectation { imag: f64 },

    #[error("qubit count {n} outside supported range {min}..={max}")]
    QubitCount { n: usize, min: usize, max: usize },

    #[error("parameter {value} outside domain of {channel} channel")]
    ParamOutOfRange { channel: &'static str, value: f64 },

    #[error("unknown {what}: {name}")]
    Unknown { what: &'static str, name: String },

    #[error("Kraus channel has no operators")]
    EmptyKraus,

    #[error("angle {name}={value} outside {range}")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("no printed formula for {state} under {channel}")]
    NoReference { state: String, channel: String },

    #[error("io error on {path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
