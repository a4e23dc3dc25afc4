use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix has non-positive or non-finite determinant {det}")]
    NonPositiveDeterminant { det: f64 },

    #[error("point ({x}, {y}) is not in the upper half-plane")]
    NotInHalfPlane { x: f64, y: f64 },

    #[error("boundary point (0 : 0) is not a projective point")]
    DegenerateBoundaryPoint,

    #[error("geodesic endpoints coincide")]
    DegenerateGeodesic,

    #[error("element is elliptic (|trace| = {trace})")]
    Elliptic { trace: f64 },

    #[error("triangle vertices are not distinct and counterclockwise")]
    InvalidTriangle,

    #[error("triangles do not share exactly one edge")]
    NotAdjacent,

    #[error("shear {value} exceeds the supported range |s| <= {limit}")]
    ShearOutOfRange { value: f64, limit: f64 },

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("invalid crossing word: {0}")]
    InvalidWord(String),

    #[error("partial deviation sum {partial} exceeds the declared budget {budget}")]
    DivergentBudget { partial: f64, budget: f64 },

    #[error("depth sequence must be strictly increasing with a positive gap")]
    InvalidDepths,

    #[error("transport chain is inconsistent: {0}")]
    InvalidChain(String),

    #[error("point lies on a lamination leaf")]
    EndpointOnLeaf,

    #[error("invalid lamination: {0}")]
    InvalidLamination(String),

    #[error("invalid gluing: {0}")]
    InvalidGluing(String),

    #[error("multicurve is not supported on the cuffs: {0}")]
    UnsupportedCurve(String),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("{pointer}: {message}")]
    Schema { pointer: String, message: String },
}

impl Error {
    pub fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}
