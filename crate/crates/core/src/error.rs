use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode index {index} out of range for {modes} modes")]
    ModeOutOfRange { index: usize, modes: usize },
    #[error("duplicate mode index {0}")]
    DuplicateMode(usize),
    #[error("expected {expected} channel, got {found}")]
    Kind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("pump depleted: N = {squeezed} is not below N̄ = {n_bar}")]
    PumpDepleted { n_bar: f64, squeezed: f64 },
    #[error("finite-difference QFI unstable: {coarse} vs {fine}")]
    NumericalInstability { coarse: f64, fine: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown regime `{0}`")]
    Regime(String),
    #[error("channel magnitude {magnitude} exceeds small-parameter limit {limit}")]
    SmallParamViolation { magnitude: f64, limit: f64 },
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
