use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A denominator vanished; the payload names the offending factor.
    #[error("vanishing denominator: {0}")]
    Pole(String),

    #[error("skew matrix dimension {0} is odd")]
    OddDimension(usize),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("repeated interpolation abscissa {0}")]
    RepeatedAbscissa(String),

    #[error("value {value} has odd multiplicity {multiplicity}")]
    OddMultiplicity { value: usize, multiplicity: i64 },

    #[error("odd number of parts ({0}); an even count is required")]
    OddPartCount(usize),

    #[error("parts are not weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),

    #[error(
        "admissibility violated: |(u_{var} - s_{column}) / (1 - s_{column} u_{var})| = {ratio} > 1 - epsilon = {bound}"
    )]
    Inadmissible {
        var: usize,
        column: String,
        ratio: String,
        bound: String,
    },

    #[error("spectral variables u_{0} and u_{1} coincide")]
    CoincidentVariables(usize, usize),

    /// An interpolant came out of higher degree than the polynomial it
    /// should restrict.
    #[error("restriction to a line has degree {found} above the bound {bound}")]
    DegreeExceeded { found: usize, bound: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parameter sampling gave up after {0} attempts")]
    SamplingExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
