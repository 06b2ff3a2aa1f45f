use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// I/O failure, non-converged quadrature, exceeded evaluation budget.
    pub const FAILURE: i32 = 1;
    /// Malformed expression, components file or arguments.
    pub const PARSE: i32 = 2;
    /// Argument outside the domain of the computation.
    pub const DOMAIN: i32 = 3;
    /// The chosen method cannot handle the nonlinearity.
    pub const UNSUPPORTED: i32 = 4;
    /// Backends disagree beyond the tolerance.
    pub const DISCREPANCY: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] adomian::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("components file line {line}: {msg}")]
    Components { line: usize, msg: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("{0}")]
    Discrepancy(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use adomian::Error as E;
        match self {
            CliError::Lib(e) => match e {
                E::Parse(_) | E::Input(_) | E::Series(_) => exit::PARSE,
                E::Domain(_) | E::Eval(_) | E::Singular(_) => exit::DOMAIN,
                E::Unsupported(_) => exit::UNSUPPORTED,
                E::Accuracy { .. } | E::CostBudget { .. } => exit::FAILURE,
            },
            CliError::Io { .. } => exit::FAILURE,
            CliError::Components { .. } | CliError::Argument(_) => exit::PARSE,
            CliError::Discrepancy(_) => exit::DISCREPANCY,
        }
    }
}

impl From<adomian::expr::ParseError> for CliError {
    fn from(e: adomian::expr::ParseError) -> Self {
        CliError::Lib(e.into())
    }
}
