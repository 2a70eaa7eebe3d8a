//! Tolerance policy shared by the geometric predicates.

/// Absolute tolerance used by geometric predicates unless an operation says
/// otherwise.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Environment variable overriding [`DEFAULT_TOL`].
pub const TOL_ENV_VAR: &str = "HYPFLUTE_TOL";

/// Band around `|trace| = 2` inside which an isometry counts as parabolic.
pub const PARABOLIC_BAND: f64 = 1e-10;

/// Reads [`TOL_ENV_VAR`], falling back to [`DEFAULT_TOL`] when unset.
///
/// Unparsable or non-positive values are reported as an error message so the
/// caller can decide whether that is fatal.
pub fn tolerance_from_env() -> Result<f64, String> {
    match std::env::var(TOL_ENV_VAR) {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(raw) => parse_tolerance(&raw),
    }
}

pub fn parse_tolerance(raw: &str) -> Result<f64, String> {
    match raw.trim().parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("{TOL_ENV_VAR} must be a positive number, got {raw:?}")),
    }
}
