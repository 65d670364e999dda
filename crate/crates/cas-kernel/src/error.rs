use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CasError {
    #[error("variable `{0}` has no image under the substitution")]
    UnknownVariable(String),
    #[error("objects live over different contexts or bases")]
    ContextMismatch,
    #[error("pole: {0}")]
    Pole(String),
    #[error("pole of order greater than one along {0}")]
    PoleOrder(String),
    #[error("residue branches disagree: {0}")]
    ResidueMismatch(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
}
