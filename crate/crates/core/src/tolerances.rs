//! Numerical tolerances used across validation and comparison.

/// All thresholds in one place. `Default` gives the stock values; the CLI
/// can override individual fields from a config file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max-entry residual of `A - A†` accepted as Hermitian.
    pub hermitian: f64,
    /// `|tr ρ - 1|` bound for density matrices.
    pub trace: f64,
    /// Smallest eigenvalue accepted as PSD.
    pub psd: f64,
    /// Bound on the imaginary part of `tr(ρ·O)` for Hermitian `O`.
    pub expectation_imag: f64,
    /// Norm bound for pure states.
    pub norm: f64,
    /// Kraus completeness residual.
    pub completeness: f64,
    /// Mean spin length below which the frame is degenerate.
    pub degenerate_spin: f64,
    /// Squeezed iff `ε < 1 - squeeze_delta`.
    pub squeeze_delta: f64,
    /// Audit match tolerance between printed and numeric ε.
    pub audit_match: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-12,
            trace: 1e-12,
            psd: -1e-10,
            expectation_imag: 1e-10,
            norm: 1e-12,
            completeness: 1e-12,
            degenerate_spin: 1e-12,
            squeeze_delta: 1e-9,
            audit_match: 1e-8,
        }
    }
}

impl Tolerances {
    /// Sets a field by its config key. Returns `false` for an unknown key.
    pub fn set(&mut self, key: &str, value: f64) -> bool {
        let slot = match key {
            "hermitian" => &mut self.hermitian,
            "trace" => &mut self.trace,
            "psd" => &mut self.psd,
            "expectation_imag" => &mut self.expectation_imag,
            "norm" => &mut self.norm,
            "completeness" => &mut self.completeness,
            "degenerate_spin" => &mut self.degenerate_spin,
            "squeeze_delta" => &mut self.squeeze_delta,
            "audit_match" => &mut self.audit_match,
            _ => return false,
        };
        *slot = value;
        true
    }
}
