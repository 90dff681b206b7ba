use thiserror::Error;

/// Errors reported by lattice, form, involution and scheme operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gram matrix is not square or not symmetric")]
    NotSymmetric,
    #[error("lattice is degenerate (determinant is zero)")]
    Degenerate,
    #[error("lattice is odd (some x·x is odd); discriminant form needs an even lattice")]
    OddLattice,
    #[error("unknown standard lattice `{0}`")]
    UnknownLattice(String),
    #[error("matrix is not an isometric involution of the lattice")]
    InvalidInvolution,
    #[error("no twisted characteristic vector: the mod-2 system has no solution (lattice not unimodular?)")]
    NoCharacteristicVector,
    #[error("twisted characteristic vector is not unique mod 2L (lattice not unimodular?)")]
    AmbiguousCharacteristicVector,
    #[error("no characteristic element: b(v,·) never equals q(·) mod 1 on the whole group")]
    NoCharacteristicElement,
    #[error("finite quadratic form is degenerate (the bilinear pairing has a radical)")]
    DegenerateForm,
    #[error("invalid finite quadratic form: {0}")]
    InvalidForm(String),
    #[error("invalid anti-isometry: {0}")]
    InvalidAntiIsometry(String),
    #[error("marking violation: {0}")]
    Marking(#[from] crate::involution::MarkingViolation),
    #[error("discriminant group of the invariant sublattice is not of period 2")]
    NotPeriodTwo,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("{0}")]
    InvalidInput(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
