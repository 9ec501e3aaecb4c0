use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is not connected: vertex {unreachable} is unreachable from vertex {from}")]
    NotConnected { from: usize, unreachable: usize },
    #[error("malformed edge list at line {0}")]
    MalformedLine(usize),
    #[error("graph needs at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("odd number of ordered adjacent pairs ({0}) in a distance shell")]
    OddPairCount(usize),
    #[error("invalid intersection sequence: {0}")]
    InvalidSequence(String),
    #[error("deg(A_{k}) is not an integer")]
    NonIntegralDegree { k: usize },
    #[error("isosc(A_{k}) is not an integer")]
    NonIntegralCount { k: usize },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("tolerance {0:e} is below floating-point resolution")]
    ToleranceTooSmall(f64),
    #[error("bisection brackets collapsed two eigenvalues near {0}")]
    CollapsedRoots(f64),
    #[error("{lambda} is not an eigenvalue (residual {residual:e})")]
    NotAnEigenvalue { lambda: f64, residual: f64 },
    #[error("weight formulas disagree at {lambda}: direct {direct}, kernel {kernel}")]
    WeightMismatch {
        lambda: f64,
        direct: f64,
        kernel: f64,
    },
    #[error("multiplicity {value} at eigenvalue {lambda} is not an integer")]
    MultiplicityNotIntegral { lambda: f64, value: f64 },
    #[error("kernel forms disagree: sum {sum}, closed form {closed}")]
    KernelMismatch { sum: f64, closed: f64 },
    #[error("interlacing requires two distinct boundary parameters, got {0} twice")]
    SameTau(f64),
    #[error("quadrature did not reach tolerance {tol:e} (last change {change:e})")]
    QuadratureNotConverged { tol: f64, change: f64 },
    #[error("iteration did not converge after {0} steps")]
    NoConvergence(usize),
    #[error("P_{k}(A) differs from the normalized distance matrix at ({i}, {j})")]
    BasisMismatch { k: usize, i: usize, j: usize },
    #[error("dense oracle is limited to {limit} vertices, got {size}")]
    TooLarge { size: usize, limit: usize },
    #[error("invalid family description: {0}")]
    InvalidFamily(String),
    #[error("unknown graph source: {0}")]
    UnknownGraph(String),
}
