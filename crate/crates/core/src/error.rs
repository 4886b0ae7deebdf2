use thiserror::Error;

/// Stability window of the Trojan branch, as rendered in messages.
pub const WINDOW_TEXT: &str = "stability window 8/9 < q <= 1";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Rydberg number must be >= 1, got {0}")]
    InvalidRydberg(u32),

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("q = {q} is below stability border (9q^2 - 8q < 0); {WINDOW_TEXT}")]
    BelowStabilityBorder { q: f64 },

    #[error("q = {q} exceeds 1; {WINDOW_TEXT}")]
    AboveUnity { q: f64 },

    #[error("q = {q} outside [0, 1] where f(q) is real")]
    OutsideUnitInterval { q: f64 },

    #[error("border singularity at q = {q}: {what} diverges")]
    BorderSingularity { q: f64, what: &'static str },

    #[error("scaled field {value} outside stability window [0, {max}); {WINDOW_TEXT}")]
    ScaledFieldOutOfRange { value: f64, max: f64 },

    #[error("field amplitude {field} V/m outside stability window (border at {border} V/m); {WINDOW_TEXT}")]
    FieldOutsideWindow { field: f64, border: f64 },

    #[error("invalid particle: {0}")]
    InvalidParticle(String),

    #[error("unknown particle '{0}'")]
    UnknownParticle(String),

    #[error("root finder failed: {0}")]
    RootFinding(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonFinite { name, value });
    }
    if value <= 0.0 {
        return Err(Error::NonPositive { name, value });
    }
    Ok(value)
}
