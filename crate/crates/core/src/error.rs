use thiserror::Error;

use crate::expr::{EvalError, ParseError};
use crate::series::SeriesError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error(transparent)]
    Series(#[from] SeriesError),

    /// The chosen backend cannot handle this nonlinearity.
    #[error("unsupported for this backend: {0}")]
    Unsupported(String),

    /// A sampled argument left the domain where the nonlinearity is
    /// evaluable or branch-continuous.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature hit its node cap before reaching tolerance.
    #[error("quadrature did not converge at M = {nodes}: last estimates {previous} and {last}")]
    Accuracy {
        nodes: usize,
        previous: String,
        last: String,
    },

    /// Nested quadrature would exceed the configured evaluation budget.
    #[error("recursive quadrature needs {needed} evaluations, budget is {budget}")]
    CostBudget { needed: u128, budget: u128 },

    #[error("singular denominator: {0}")]
    Singular(String),

    /// Inputs do not cover the requested order.
    #[error("input shortfall: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
