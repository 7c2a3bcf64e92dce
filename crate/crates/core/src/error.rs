use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Each variant has a stable machine-readable [`Error::code`] used by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid presentation: {0}")]
    Invalid(String),

    #[error("relation {0} does not fit in the quiver")]
    OutOfRange(String),

    #[error("relation {0} has length < 2 (ideal must lie in rad^2)")]
    ShortRelation(String),

    #[error("cycle quiver without relations is infinite dimensional")]
    InfiniteDimension,

    #[error("inadmissible Kupisch series: {0}")]
    InadmissibleKupisch(String),

    #[error("operation requires a {expected} presentation")]
    WrongKind { expected: &'static str },

    #[error("presentation is not in class D: {0}")]
    NotClassD(String),

    #[error("contraction at vertex {vertex} is not allowed: {reason}")]
    IllegalContraction { vertex: usize, reason: String },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("triple is not skewed-gentle: {0}")]
    NotSkewedGentle(String),

    #[error("algebra is derived wild")]
    Wild,

    #[error("algebra is derived tame; no wildness to explain")]
    Tame,

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("complexes live over different presentations")]
    IncompatiblePresentations,

    #[error("hypothesis mismatch: {0}")]
    Hypothesis(String),

    #[error("invalid field: {0}")]
    Field(String),

    #[error("quotient did not vanish below path length {0}")]
    DimensionBound(usize),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "E_SYNTAX",
            Error::Invalid(_) => "E_INVALID",
            Error::OutOfRange(_) => "E_OUT_OF_RANGE",
            Error::ShortRelation(_) => "E_SHORT_RELATION",
            Error::InfiniteDimension => "E_INFINITE_DIMENSION",
            Error::InadmissibleKupisch(_) => "E_KUPISCH",
            Error::WrongKind { .. } => "E_WRONG_KIND",
            Error::NotClassD(_) => "E_NOT_CLASS_D",
            Error::IllegalContraction { .. } => "E_CONTRACTION",
            Error::NotSymmetric => "E_NOT_SYMMETRIC",
            Error::NotApplicable(_) => "E_NOT_APPLICABLE",
            Error::NotSkewedGentle(_) => "E_NOT_SKEWED_GENTLE",
            Error::Wild => "E_WILD",
            Error::Tame => "E_TAME",
            Error::InvalidComplex(_) => "E_COMPLEX",
            Error::IncompatiblePresentations => "E_INCOMPATIBLE",
            Error::Hypothesis(_) => "E_HYPOTHESIS",
            Error::Field(_) => "E_FIELD",
            Error::DimensionBound(_) => "E_DIMENSION_BOUND",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
