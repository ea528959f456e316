use thiserror::Error;

/// Errors raised while building groups from specs or Cayley tables.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("group order {0} is outside the supported range 1..=256")]
    UnsupportedOrder(usize),
    #[error("cayley table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("cayley entry ({row}, {col}) = {value} is not an element index")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("identity law violated at index {0}: element 0 must be the identity")]
    Identity(usize),
    #[error("latin square law violated: {0}")]
    LatinSquare(String),
    #[error("associativity violated for ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),
    #[error("element {0} has no two-sided inverse")]
    Inverse(usize),
    #[error("label list has {got} entries for a group of order {expected}")]
    Labels { got: usize, expected: usize },
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
}

/// Errors from the representation catalog and representation validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("no catalog representations for {0}; supply a custom representation set")]
    NotInCatalog(String),
    #[error("representation structure mismatch: {0}")]
    Structure(String),
    #[error("representation set failed validation: {0}")]
    Invalid(String),
}

/// Errors from scalar symbol arithmetic, root finding and index computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolError {
    #[error("division by the zero symbol")]
    DivisionByZero,
    #[error("symbol is identically zero")]
    ZeroSymbol,
    #[error("polynomial degree {0} exceeds the supported maximum of 64")]
    DegreeTooLarge(usize),
    #[error("root-finding did not converge")]
    NoConvergence,
    #[error("symbol is not invertible on the unit circle: zero or pole at {point} (distance {distance:.3e})")]
    NotInvertibleOnContour { point: String, distance: f64 },
    #[error("pole on grid point {0}")]
    PoleOnGrid(usize),
    #[error("zero sample at grid point {0}")]
    ZeroSample(usize),
    #[error("phase accumulation {0:.6} is not within the rounding guard of an integer (undersampled)")]
    AmbiguousPhase(f64),
    #[error("grid size {0} is not a supported power of two")]
    BadGrid(usize),
    #[error("root-count index {exact} disagrees with argument-principle index {sampled}")]
    IndexMismatch { exact: i64, sampled: i64 },
    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),
    #[error("linear system is singular: {0}")]
    Singular(String),
}

/// Errors from the factorization pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FactorError {
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("symbol is singular: {0}")]
    Singular(String),
    #[error("ill-posed: {what} is not invertible on the unit circle ({source})")]
    IllPosed { what: String, source: SymbolError },
    #[error("block {block} (degree {degree}) has no explicit factorization; only index relations are available")]
    Unfactored { block: usize, degree: usize },
    #[error("size mismatch: {0}")]
    Size(String),
    #[error("block is not upper triangular")]
    NotTriangular,
    #[error("construction failed: {0}")]
    Construction(String),
}

/// Errors while reading or interpreting input documents.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("{0}")]
    Group(#[from] GroupError),
    #[error("{0}")]
    Rep(#[from] RepError),
    #[error("invalid symbol: {0}")]
    Symbol(#[from] SymbolError),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("document shape mismatch: {0}")]
    Shape(String),
}

impl From<serde_json::Error> for DocError {
    fn from(e: serde_json::Error) -> Self {
        DocError::Json(e.to_string())
    }
}
