use thiserror::Error;

/// Errors raised by the geometry, search and verification layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("vertices {first} and {second} coincide")]
    RepeatedVertex { first: usize, second: usize },

    #[error("polygon is not strictly convex: turn at vertex {vertex} is not a left turn")]
    NotConvex { vertex: usize },

    #[error("polygon winds around more than once (fan check failed at vertex {vertex})")]
    NotSimple { vertex: usize },

    #[error("affine map is degenerate (determinant {det})")]
    DegenerateMap { det: String },

    #[error("m = {m} is out of range for an n = {n} polygon (need {min} <= m <= {max})")]
    OutOfRange {
        n: usize,
        m: usize,
        min: usize,
        max: usize,
    },

    #[error("brute force limited to n <= {limit}, got n = {n}; use the dynamic program")]
    TooLarge { n: usize, limit: usize },

    #[error("a triangle has no ear to peel")]
    NothingToPeel,

    #[error("parameter {name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: String },

    #[error("cannot parse number {0:?}")]
    ParseNumber(String),

    #[error("unknown variable {0:?}")]
    UnknownVariable(String),

    #[error("no value supplied for variable {0:?}")]
    MissingValue(String),

    #[error("expression parse error at byte {pos}: {msg}")]
    ParseExpr { pos: usize, msg: String },

    #[error("identity {name} failed: derived {derived} but expected {stated}")]
    IdentityMismatch {
        name: String,
        derived: String,
        stated: String,
    },

    #[error("variable mismatch: {0}")]
    VariableMismatch(String),

    #[error("polygon file: {0}")]
    PolygonFile(String),

    #[error("certificate fixture: {0}")]
    Fixture(String),

    #[error("invalid search configuration: {0}")]
    Config(String),

    #[error("bound violated at n = {n}: min ear ratio {ratio} exceeds {bound} ({which}) for polygon {polygon}")]
    BoundViolation {
        n: usize,
        ratio: f64,
        bound: f64,
        which: &'static str,
        polygon: String,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
