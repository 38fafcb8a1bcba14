use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the library. Variants carry enough context to be
/// rendered as machine-readable diagnostics by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("modulus {0:?} is not basic irreducible")]
    NotBasicIrreducible(Vec<u32>),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("base degree {base_m} does not divide extension degree {m}")]
    BadSubfieldDegree { base_m: usize, m: usize },
    #[error("n = {n} is not coprime to p = {p}")]
    NotCoprime { n: u64, p: u64 },
    #[error("the zero polynomial has no reciprocal")]
    ZeroPolynomial,
    #[error("component index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("operation not defined for this component kind: {0}")]
    KindMismatch(&'static str),
    #[error("Bezout identity failed for factor {0}: factorization is not coprime")]
    InternalBezoutFailure(usize),
    #[error("closed-form count {closed_form} disagrees with enumerated total {enumerated}")]
    MismatchWithEnumeration {
        closed_form: String,
        enumerated: String,
    },
    #[error("matrix belongs to component {got}, expected component {expected}")]
    ComponentMismatch { expected: usize, got: usize },
    #[error("selection has no descriptor for component {0}")]
    IncompleteSelection(usize),
    #[error("{what} too large: {size} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        size: String,
        cap: String,
    },
    #[error("Lee weight is only defined over Z_{{p^2}} (m = 1), got m = {0}")]
    LeeUndefined(usize),
    #[error("schema error at {pointer}: {detail}")]
    Schema { pointer: String, detail: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable machine-readable tag for diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPrime(_) => "non_prime",
            Error::NotBasicIrreducible(_) => "not_basic_irreducible",
            Error::NotAUnit => "not_a_unit",
            Error::BadSubfieldDegree { .. } => "bad_subfield_degree",
            Error::NotCoprime { .. } => "not_coprime",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::IndexOutOfRange(_) => "index_out_of_range",
            Error::KindMismatch(_) => "kind_mismatch",
            Error::InternalBezoutFailure(_) => "internal_bezout_failure",
            Error::MismatchWithEnumeration { .. } => "mismatch_with_enumeration",
            Error::ComponentMismatch { .. } => "component_mismatch",
            Error::IncompleteSelection(_) => "incomplete_selection",
            Error::TooLarge { .. } => "too_large",
            Error::LeeUndefined(_) => "lee_undefined",
            Error::Schema { .. } => "schema_error",
            Error::InvalidParameter(_) => "invalid_parameter",
        }
    }
}
