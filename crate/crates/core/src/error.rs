use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
///
/// The variants fall in three families which the CLI maps onto distinct exit
/// codes: bad input (`InvalidInput`, `Domain`, `Structural`, `Unbounded`,
/// `Redundant`, `FlipNotAdmissible`, `Json`, `Io`), internal consistency
/// failures (`Consistency`, `Contract`), and numerical counterexamples to a
/// theorem (`Falsified`, `Inconsistency`).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("halfspace intersection is unbounded (recession direction {0:?})")]
    Unbounded([f64; 3]),

    #[error("redundant halfspaces, no 2-face for indices {0:?}")]
    Redundant(Vec<usize>),

    #[error("flip not admissible: {0}")]
    FlipNotAdmissible(String),

    #[error("inconsistency: {0}")]
    Inconsistency(String),

    #[error("invariant falsified: {0}")]
    Falsified(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True when the error is a numerical counterexample rather than bad input.
    /// An `Inconsistency` (an equality case without witness, a normalized
    /// pairing on the wrong side of 1) contradicts a theorem as well.
    pub fn is_falsification(&self) -> bool {
        matches!(self, Error::Falsified(_) | Error::Inconsistency(_))
    }
}

pub(crate) fn ensure_finite(values: &[f64], what: &str) -> Result<()> {
    if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "{what}: non-finite value at index {pos}"
        )));
    }
    Ok(())
}
