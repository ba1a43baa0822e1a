use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("binomial coefficient with negative top {0}")]
    NegativeBinomialTop(i64),

    #[error("shifted Bell evaluation needs x_1 = 0, got {0}")]
    NonZeroFirstArgument(String),

    #[error("shifted Bell evaluation needs n >= k (n = {n}, k = {k})")]
    ShiftOutOfRange { n: usize, k: usize },

    #[error("vanishing denominator {what} at (l, m) = ({l}, {m})")]
    DegenerateDenominator { what: &'static str, l: i64, m: i64 },

    #[error("{context}: expected an integer, got {value}")]
    IntegralityViolation { context: String, value: String },

    #[error("invalid shape (a = {a}, b = {b}): need a >= 1, b >= 1, a + b >= 3")]
    InvalidShape { a: u32, b: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("polygon with {sides} sides exceeds the enumeration cap of {cap}")]
    CapExceeded { sides: usize, cap: usize },

    #[error("a {sides}-gon cannot hold a ({base})-gon over its base with room left")]
    InvalidBase { sides: usize, base: usize },

    #[error("color spec error at byte {pos}: {msg}")]
    ColorSpec { pos: usize, msg: String },
}
