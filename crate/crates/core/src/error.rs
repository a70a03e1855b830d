use thiserror::Error;

/// All failure modes of the crate. Messages are single-line so a CLI can
/// print them as one diagnostic.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: need b > a, got a = {a}, b = {b}")]
    InvalidDomain { a: f64, b: f64 },

    #[error("invalid point count: need at least {need}, got {got}")]
    InvalidCount { need: usize, got: usize },

    #[error("invalid spacing: h must be positive, got {h}")]
    InvalidSpacing { h: f64 },

    #[error("row {row}: {detail}")]
    Parse { row: usize, detail: String },

    #[error("x values are not strictly increasing at row {row}")]
    NotIncreasing { row: usize },

    #[error("x values are not equidistant: worst deviation {deviation:e} at row {row} exceeds tolerance {tolerance:e}")]
    NotEquidistant {
        row: usize,
        deviation: f64,
        tolerance: f64,
    },

    #[error("dataset is already normalized")]
    AlreadyNormalized,

    #[error("dataset must be normalized first")]
    NotNormalized,

    #[error("basis {basis} is not valid for {operation}")]
    InvalidBasis {
        basis: &'static str,
        operation: &'static str,
    },

    #[error("invalid degree {got}: maximum supported is {max}")]
    InvalidDegree { got: usize, max: usize },

    #[error("rank deficient: degree {degree} is not identifiable from the data")]
    RankDeficient { degree: usize },

    #[error("degenerate denominator in the projection at degree {degree}")]
    DegenerateDenominator { degree: usize },

    #[error("argument {x} lies outside the series domain [{lo}, {hi}]")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },

    #[error("affine map scale must be nonzero")]
    ZeroScale,

    #[error("unsupported precision {got}: expected 16 or 32")]
    InvalidPrecision { got: u32 },

    #[error("unknown table id {got}: expected 1, 2, 3 or 4")]
    InvalidTableId { got: u8 },

    #[error("unknown figure id {got}: expected 1 or 2")]
    InvalidFigureId { got: u8 },

    #[error("length mismatch: {left} vs {right}")]
    ShapeMismatch { left: usize, right: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
