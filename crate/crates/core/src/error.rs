use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("elliptic parameter m = {m} outside the supported domain m < 1")]
    ParameterDomain { m: f64 },

    #[error("{kind} index {index} out of range")]
    IndexOutOfRange { kind: &'static str, index: usize },

    #[error("non-finite field sample at {point:?}")]
    NonFiniteSample { point: [f64; 4] },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dispersion relation violated: p^2 = {p_squared}, expected mu^2 g = {expected}")]
    DispersionViolation { p_squared: f64, expected: f64 },

    #[error("no real amplitude solution: {}", describe_negative(.squares))]
    NoRealSolution { squares: [f64; 3] },

    #[error("integration blew up at step {step} (t = {t}): |state| exceeded {limit:e}")]
    BlowUp { step: usize, t: f64, limit: f64 },

    #[error("need at least 3 sign changes to measure a period, found {found}")]
    InsufficientCrossings { found: usize },

    #[error("degenerate convergence fit: {0}")]
    DegenerateFit(String),
}

fn describe_negative(squares: &[f64; 3]) -> String {
    let parts: Vec<String> = ["X", "Y", "Z"]
        .iter()
        .zip(squares)
        .filter(|(_, sq)| **sq < 0.0)
        .map(|(name, sq)| format!("{name}^2 = {sq} < 0"))
        .collect();
    parts.join(", ")
}
