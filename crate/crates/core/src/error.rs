use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element is a zero divisor (norm {norm:e})")]
    ZeroDivisor { norm: f64 },

    #[error("grid axis {axis} has {count} nodes, at least 5 are required")]
    GridTooSmall { axis: usize, count: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("generating pair degenerates at node {node}: Im(conj(F) G) = {value:e}")]
    DegeneratePair { node: usize, value: f64 },

    #[error("permittivity must be positive, got {value} at x = {x}")]
    NonPositivePermittivity { x: f64, value: f64 },

    #[error("permeability must be positive, got {0}")]
    NonPositivePermeability(f64),

    #[error("antiderivative of the refraction index is not increasing near x = {x}")]
    NonMonotone { x: f64 },

    #[error("{value} lies outside [{lo}, {hi}]")]
    OutOfDomain { value: f64, lo: f64, hi: f64 },

    #[error("generating function must be positive, got {value} at xi = {xi}")]
    NonPositiveF { xi: f64, value: f64 },

    #[error("degree {n} exceeds the table maximum {max}")]
    DegreeOutOfRange { n: usize, max: usize },

    #[error("generating set is dependent at node {node} (|det| = {det:e})")]
    DependentSet { node: usize, det: f64 },

    #[error("field is not invertible at node {node}")]
    NotInvertible { node: usize },

    #[error("integration step too large at x = {x}: local error estimate {estimate:e}")]
    StepTooLarge { x: f64, estimate: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
