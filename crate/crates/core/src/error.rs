use thiserror::Error;

/// Errors raised by the exact and numeric engines.
///
/// Every variant has a stable short name (see [`Error::name`]) that the
/// command-line front end reports alongside the message.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,

    #[error("cannot parse scalar {input:?} at position {position}: {reason}")]
    Parse {
        input: String,
        position: usize,
        reason: String,
    },

    #[error("{context}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        context: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("{context}: dimension mismatch ({left} vs {right})")]
    DimensionMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },

    #[error("not a subquotient: boundaries are not contained in the span of the cycles")]
    NotSubquotient,

    #[error("map does not descend: {0}")]
    MapDoesNotDescend(&'static str),

    #[error("not a chain complex: d_{degree} d_{} != 0", degree + 1)]
    NotAComplex { degree: usize },

    #[error("sequence not exact: homology in degree {degree} has dimension {dim}")]
    NotExact { degree: usize, dim: usize },

    #[error("singular change of basis in degree {degree}")]
    SingularBasis { degree: usize },

    #[error("invalid torsion selection in degree {degree}")]
    InvalidSelection { degree: usize },

    #[error("operators do not commute: [{0}, {1}] != 0")]
    NonCommuting(usize, usize),

    #[error("quadruple relation AB = CD fails")]
    QuadrupleRelation,

    #[error("pair not acyclic: {0} is singular")]
    PairNotAcyclic(&'static str),

    #[error("{0} is singular")]
    Singular(&'static str),

    #[error("not Fredholm: root {0} lies on the unit circle")]
    NotFredholm(String),

    #[error("leading coefficient must be nonzero")]
    ZeroLeading,

    #[error("Koszul complex not acyclic — out of scope: common inside root {0}")]
    NotAcyclic(String),

    #[error("truncation unstable, increase N or shrink symbol (pivot {pivot:e})")]
    TruncationUnstable { pivot: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(&'static str),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable identifier used in machine-readable error reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroDivisor => "zero_divisor",
            Error::Parse { .. } => "parse_error",
            Error::NotSquare { .. } => "not_square",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotSubquotient => "not_a_subquotient",
            Error::MapDoesNotDescend(_) => "map_does_not_descend",
            Error::NotAComplex { .. } => "not_a_complex",
            Error::NotExact { .. } => "sequence_not_exact",
            Error::SingularBasis { .. } => "singular_change_of_basis",
            Error::InvalidSelection { .. } => "invalid_selection",
            Error::NonCommuting(..) => "non_commuting",
            Error::QuadrupleRelation => "quadruple_relation",
            Error::PairNotAcyclic(_) => "pair_not_acyclic",
            Error::Singular(_) => "singular",
            Error::NotFredholm(_) => "not_fredholm",
            Error::ZeroLeading => "zero_leading",
            Error::NotAcyclic(_) => "not_acyclic",
            Error::TruncationUnstable { .. } => "truncation_unstable",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Hypothesis(_) => "hypothesis_violated",
            Error::Internal(_) => "internal_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
