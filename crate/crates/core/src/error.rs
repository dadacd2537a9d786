use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid transform parameter: {0}")]
    Parameter(String),

    #[error("holomorphic coordinate is degenerate at t = {t}")]
    DegenerateCoordinate { t: f64 },

    #[error("measure dμ_t is degenerate at t = {t}")]
    DegenerateMeasure { t: f64 },

    #[error("operation undefined at the Fourier endpoint t = π/2; use the endpoint transform")]
    Endpoint,

    #[error("quadrature order {order} outside 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },

    #[error("non-finite integrand {value} at quadrature node x = {node}")]
    IntegrationDomain { node: f64, value: String },

    #[error("quadrature support insufficient (tail estimate {tail:.3e}); try order {suggested_order}")]
    Support { tail: f64, suggested_order: usize },

    #[error("sampled signal does not decay at its grid ends (edge/peak = {ratio:.3e})")]
    SampleSupport { ratio: f64 },

    #[error("signal sampling too coarse: spacing {spacing} exceeds {limit} ({reason})")]
    Resolution { spacing: f64, limit: f64, reason: String },

    #[error("field does not decay at the grid boundary (tail/peak = {ratio:.3e})")]
    BoundaryTail { ratio: f64 },

    #[error("Hermite order {n} exceeds the supported maximum {max}")]
    HermiteOrder { n: usize, max: usize },

    #[error("basis cache mismatch: {0}")]
    CacheMismatch(String),

    #[error("gauge mismatch: expected {expected}, found {found}")]
    GaugeMismatch { expected: String, found: String },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("invalid signal: {0}")]
    Signal(String),
}
