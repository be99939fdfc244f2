use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("origin is not strictly interior to the polygon")]
    OriginNotInterior,
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("invalid tolerance: need 0 < abs <= rel < 1e-3 (got rel={rel}, abs={abs})")]
    InvalidTolerance { rel: f64, abs: f64 },
    #[error("invalid polygon count n={0}: need n >= 3")]
    InvalidN(usize),
    #[error("symmetric circumscription needs an even n >= 4, got {0}")]
    OddN(usize),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("polygon is not origin-symmetric (asymmetry {asymmetry:.3e} exceeds {limit:.3e})")]
    NotSymmetric { asymmetry: f64, limit: f64 },
    #[error("table too short: {0}")]
    InsufficientTable(String),
    #[error("no cell lies inside the window of radius {0}")]
    EmptyWindow(f64),
    #[error("prototype does not tile: {0}")]
    NonTilingPrototype(String),
    #[error("outer normals do not span the circle; K* is unbounded")]
    UnboundedKStar,
    #[error("malformed polygon json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
