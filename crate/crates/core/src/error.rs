use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// `e^z` would overflow; the caller has to switch to the magnitude track.
    #[error("overflow: direct evaluation out of range at re={re}")]
    Overflow { re: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular input: w equals the omitted value a")]
    SingularInput,
    #[error("no convergence after {steps} steps (residual {residual:e})")]
    NoConvergence { steps: usize, residual: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
