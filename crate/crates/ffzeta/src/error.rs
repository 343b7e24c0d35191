use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the arithmetic kernels.
///
/// Contract violations that a caller can hit with ordinary data (division by
/// zero, non-monic input, mixed series parameters, exhausted precision) are
/// reported through this enum; mixing elements of *different fields* in one
/// operation is a programming error and panics instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a valid field size: need q = p^n with p prime <= 97 and q <= 2^16")]
    BadFieldSize(u64),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("multiplicity of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("inversion of a series that is zero through its precision window")]
    ZeroInverse,
    #[error("series parameters differ: {left} vs {right}")]
    ParamMismatch { left: String, right: String },
    #[error("substitution series must have order 1 and leading coefficient 1")]
    BadSubstitution,
    #[error("operand is not a 1-unit")]
    NotOneUnit,
    #[error("p-adic value is not a nonnegative integer (tail digit {tail})")]
    NotNonnegInteger { tail: u32 },
    #[error("p-adic value has infinite digit support")]
    InfiniteSupport,
    #[error("not a permutation: {0}")]
    BadPermutation(String),
    #[error("{0} is not irreducible")]
    NotIrreducible(String),
    #[error("precision exhausted: needed {needed} terms, have {have}")]
    PrecisionExhausted { needed: i64, have: i64 },
    #[error("truncation window too small: need at least {required}")]
    WindowOverflow { required: u64 },
    #[error("a q-adic digit of {0} is >= p; the ord correspondence requires all digits < p")]
    DigitTooLarge(u64),
    #[error("root is not simple; multiple-root refinement is not supported")]
    NonSimpleRoot,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}
