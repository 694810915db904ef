use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report.
///
/// Messages name the violated precondition so they can be surfaced to users
/// unchanged; [`Error::code`] gives the stable machine-readable identifier.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("InvalidRect: {0}")]
    InvalidRect(String),
    #[error("RangeMismatch: overall ranges differ ([{a_lo}, {a_hi}] vs [{b_lo}, {b_hi}])")]
    RangeMismatch {
        a_lo: f64,
        a_hi: f64,
        b_lo: f64,
        b_hi: f64,
    },
    #[error("InvalidEdges: {0}")]
    InvalidEdges(String),
    #[error("DomainError: time {0} is outside [0, 1]")]
    DomainError(f64),
    #[error("DegenerateExtent: piston extent {0} is too small for the area constraint H = A / L")]
    DegenerateExtent(f64),
    #[error("LevelOutOfRange: level {level} outside container extent [0, {extent}]")]
    LevelOutOfRange { level: f64, extent: f64 },
    #[error("EscapesContainer: shifted liquid {0} leaves its container")]
    EscapesContainer(String),
    #[error("AreaMismatch: areas {a} and {b} differ; an area-preserving transition requires equal areas")]
    AreaMismatch { a: f64, b: f64 },
    #[error("InvalidContainer: {0}")]
    InvalidContainer(String),
    #[error("UnknownLiquid: {0}")]
    UnknownLiquid(String),
    #[error("EmptyData: no samples to bin")]
    EmptyData,
    #[error("ValueOutOfRange: sample {value} outside [{lo}, {hi}]")]
    ValueOutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("InvalidHistogram: {0}")]
    InvalidHistogram(String),
    #[error("InvalidChart: {0}")]
    InvalidChart(String),
    #[error("EmptyMatrix: confusion matrix total count is zero")]
    EmptyMatrix,
    #[error("DimensionMismatch: expected {expected} entries, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("EmptySelection: at least one bin must be selected")]
    EmptySelection,
    #[error("UnknownLevel: {0}")]
    UnknownLevel(String),
    #[error("UnknownCategory: {0}")]
    UnknownCategory(String),
    #[error("InvalidPosition: {0}")]
    InvalidPosition(String),
    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),
    #[error("InvalidDocument: {0}")]
    InvalidDocument(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidRect(_) => "InvalidRect",
            Error::RangeMismatch { .. } => "RangeMismatch",
            Error::InvalidEdges(_) => "InvalidEdges",
            Error::DomainError(_) => "DomainError",
            Error::DegenerateExtent(_) => "DegenerateExtent",
            Error::LevelOutOfRange { .. } => "LevelOutOfRange",
            Error::EscapesContainer(_) => "EscapesContainer",
            Error::AreaMismatch { .. } => "AreaMismatch",
            Error::InvalidContainer(_) => "InvalidContainer",
            Error::UnknownLiquid(_) => "UnknownLiquid",
            Error::EmptyData => "EmptyData",
            Error::ValueOutOfRange { .. } => "ValueOutOfRange",
            Error::InvalidHistogram(_) => "InvalidHistogram",
            Error::InvalidChart(_) => "InvalidChart",
            Error::EmptyMatrix => "EmptyMatrix",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::EmptySelection => "EmptySelection",
            Error::UnknownLevel(_) => "UnknownLevel",
            Error::UnknownCategory(_) => "UnknownCategory",
            Error::InvalidPosition(_) => "InvalidPosition",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::InvalidDocument(_) => "InvalidDocument",
        }
    }
}
