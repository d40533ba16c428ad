//! Exact rank bounds for Hermitian forms on polynomial spaces and constructive
//! monomial maps between hyperquadrics.
//!
//! * [`combinat`]: Macaulay representations and the Green-type bound functions.
//! * [`forms`]: Hermitian coefficient matrices, rank, inertia, decomposition.
//! * [`restrict`]: Veronese restriction matrices and sampled restriction ranks.
//! * [`quadrics`]: admissible polynomials, the signature-lattice search and map verification.
//! * [`cli`]: the `hermrank` command line front end.

pub mod cli;
pub mod combinat;
pub mod forms;
pub mod io;
pub mod linalg;
pub mod monomial;
pub mod parallel;
pub mod poly;
pub mod quadrics;
pub mod restrict;
pub mod scalar;

pub use monomial::MultiIndex;
pub use scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("entries at ({alpha}; {beta}) and ({beta}; {alpha}) are not complex conjugates")]
    ConjugateMismatch { alpha: String, beta: String },
    #[error("diagonal entry at ({0}) has a nonzero imaginary part")]
    NonRealDiagonal(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial is not divisible by s: {0}")]
    NotAdmissible(String),
    #[error("no pivot monomial of the required sign: {0}")]
    NoPivotMonomial(String),
    #[error("target not reached: {0}")]
    NotReached(String),
    #[error("form does not vanish on the hyperquadric: {0}")]
    NotVanishing(String),
    #[error("map has no negative component: {0}")]
    NoNegativeComponent(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Variant name, as printed by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ConjugateMismatch { .. } => "ConjugateMismatch",
            Error::NonRealDiagonal(_) => "NonRealDiagonal",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotAdmissible(_) => "NotAdmissible",
            Error::NoPivotMonomial(_) => "NoPivotMonomial",
            Error::NotReached(_) => "NotReached",
            Error::NotVanishing(_) => "NotVanishing",
            Error::NoNegativeComponent(_) => "NoNegativeComponent",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::Unsupported(_) => "Unsupported",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::OutOfDomain(_) => "OutOfDomain",
            Error::Parse { .. } => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
