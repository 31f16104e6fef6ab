use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("inconsistent shape: {0}")]
    Shape(String),

    #[error("fusion multiplicity overflow")]
    Overflow,

    #[error("Perron-Frobenius iteration did not converge (residual {residual:e})")]
    NonConvergence { residual: f64 },

    #[error("Verlinde coefficient N[{i}][{j}][{k}] = {value} is not integral")]
    NonIntegral { i: usize, j: usize, k: usize, value: f64 },

    #[error("Verlinde coefficient N[{i}][{j}][{k}] rounds to a negative integer ({value})")]
    NegativeCoefficient { i: usize, j: usize, k: usize, value: f64 },

    #[error("|Gauss sum| = {gauss} differs from total dimension {total}: data is not modular")]
    NonModular { gauss: f64, total: f64 },

    #[error("central charge {value} has no rational representative with denominator <= {max_denominator}")]
    NoRationalMatch { value: f64, max_denominator: u64 },

    #[error("central charge {value} is ambiguous: {candidates:?}")]
    AmbiguousCentralCharge { value: f64, candidates: Vec<String> },

    #[error("quadratic form is degenerate: {radical} lies in the radical")]
    DegenerateForm { radical: usize },

    #[error("label {0} is not an invertible object of order at most 2")]
    NotInvertible(usize),

    #[error("simple current {label} has twist {twist} and is not a boson")]
    NotBoson { label: usize, twist: String },

    #[error("modular invariant entry Z[{i}][{j}] is not integral")]
    NonIntegralInvariant { i: usize, j: usize },

    #[error("modular invariant fails to commute with S or T (deviation {deviation:e})")]
    InvariantNotModular { deviation: f64 },

    #[error("{0} fixed points exceed the resolution search bound of 4")]
    TooManyFixedPoints(usize),

    #[error("no consistent fixed-point resolution found")]
    NoResolution,

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is not block decomposable: {0}")]
    NotBlockDecomposable(String),
}
