use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid interval {0}")]
    InvalidInterval(String),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(String, String),

    #[error("cannot combine a line map with a circle map")]
    KindMismatch,

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("generator `{0}` is not bound")]
    UnboundGenerator(String),

    #[error("support of `{name}` is not a single interval: {support}")]
    NonIntervalSupport { name: String, support: String },

    #[error("support of `{name}` is not a single arc: {support}")]
    NonArcSupport { name: String, support: String },

    #[error("union of supports covers the whole circle; no cut point exists")]
    CannotUnroll,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid conjugation witness for class `{class}`: {detail}")]
    InvalidConjugationWitness { class: String, detail: String },
}
