use thiserror::Error;

use crate::linalg::CMatrix;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} lies outside [0, 1]")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid pulse: {0}")]
    InvalidPulse(String),

    #[error("rotation axis must be a unit vector, got norm {0}")]
    NonUnitAxis(f64),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("invalid design problem: {0}")]
    InvalidProblem(String),

    #[error("damped Newton did not converge after {iterations} iterations (residual norm {residual_norm:e})")]
    NotConverged {
        iterations: usize,
        residual_norm: f64,
        best: Vec<f64>,
    },

    #[error("singular Jacobian at iteration {iteration}; retry from a perturbed guess")]
    SingularJacobian { iteration: usize, point: Vec<f64> },

    #[error("step budget of {max_steps} exhausted before convergence (last step difference {difference:e})")]
    StepBudget {
        max_steps: usize,
        difference: f64,
        iterates: Box<(CMatrix, CMatrix)>,
    },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid bath: {0}")]
    InvalidBath(String),

    #[error("pulse duration grid leaves the perturbative window: max tau_p * (lambda + omega_b) = {0} > 0.3")]
    OutsideWindow(f64),

    #[error("invalid duration grid: {0}")]
    InvalidGrid(String),

    #[error(
        "slope fit needs at least 4 usable points, only {usable} remain after excluding floor-contaminated distances"
    )]
    TooFewPoints { usable: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
