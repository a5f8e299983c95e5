use thiserror::Error;

/// Errors surfaced by the library. Verification failures are reported as
/// `false` or `None`, never as errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("decode error: {0}")]
    Decode(&'static str),
    #[error("cannot encode: {0}")]
    Encode(&'static str),
    #[error("prover refuses: {0}")]
    Refused(&'static str),
    #[error("extraction impossible: {0}")]
    Extraction(&'static str),
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("invalid parameter: {0}")]
    Parameter(&'static str),
}
