//! Comparison tolerances for the dense checks.

/// Default entrywise tolerance for approximate comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Tolerance of exact-by-construction floating identities (orthonormality, unitarity).
pub const TIGHT_TOLERANCE: f64 = 1e-12;

/// Environment variable overriding the verify-suite tolerance.
pub const TOLERANCE_ENV: &str = "QPS_TOLERANCE";

/// Reads [`TOLERANCE_ENV`]. `Ok(None)` when unset, `Err` with the raw value
/// when it is not a finite non-negative number.
pub fn tolerance_override() -> Result<Option<f64>, String> {
    match std::env::var(TOLERANCE_ENV) {
        Err(_) => Ok(None),
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t >= 0.0 => Ok(Some(t)),
            _ => Err(raw),
        },
    }
}
