use thiserror::Error;

pub type Result<T> = std::result::Result<T, WulffError>;

#[derive(Debug, Error)]
pub enum WulffError {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("degenerate tension: {0}")]
    DegenerateTension(String),
    #[error("radial projection hits a vertex of the Wulff shape")]
    VertexHit,
    #[error("evaluation point coincides with a polygon vertex")]
    CenterOnVertex,
    #[error("matrix is singular or has non-positive determinant")]
    SingularMatrix,
    #[error("zero vector where a direction is required")]
    ZeroVector,
    #[error("perturbed boundary self-intersects")]
    SelfIntersection,
    #[error("side {0} of the parallel set degenerates")]
    SideLost(usize),
    #[error("theta must lie in (0, pi/4) with the cut height below the half-diagonal: {0}")]
    BadTheta(f64),
    #[error("polygon resolution too low: discretization error {error:.3e} exceeds {budget:.3e}")]
    ResolutionTooLow { error: f64, budget: f64 },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
}

impl WulffError {
    /// Process exit code used by the CLI: 2 for numerical non-convergence,
    /// 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            WulffError::NoConvergence(_) => 2,
            _ => 1,
        }
    }
}
