//! Number formatting shared by the CSV and JSON writers.

/// Seventeen significant digits in scientific notation, enough to
/// round-trip any `f64`. Non-finite values print as `NaN`, `inf`, `-inf`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}
