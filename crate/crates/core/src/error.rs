use thiserror::Error;

/// Errors raised by the verification engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("expected a form of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),

    #[error("invalid form: {0}")]
    InvalidForm(String),

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("linear system has no unique solution (rank {rank}, {unknowns} unknowns)")]
    NotUnique { rank: usize, unknowns: usize },

    #[error("not a contact pair: {0}")]
    NotContactPair(String),

    #[error("not a symplectic pair: {0}")]
    NotSymplecticPair(String),

    #[error("not a contact-symplectic pair: {0}")]
    NotContactSymplectic(String),

    #[error("not an almost contact structure: {0}")]
    NotAlmostContact(String),

    #[error("2-form is not closed")]
    NotClosed,

    #[error("structure tensor rejected: {0}")]
    InvalidStructureTensor(String),

    #[error("endomorphism does not preserve the characteristic foliations")]
    NotDecomposable,

    #[error("2-form is degenerate on the given subspace")]
    Degenerate,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
