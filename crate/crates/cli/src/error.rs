use model_search::{LpError, SearchError};

/// CLI failure with its exit code: validation errors exit 2, solver
/// failures exit 3.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Solver(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(msg) | CliError::Solver(msg) => write!(f, "{msg}"),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

impl From<bell_core::BellError> for CliError {
    fn from(e: bell_core::BellError) -> Self {
        CliError::Validation(format!("bell-core: {e}"))
    }
}

impl From<quantum_oracle::OracleError> for CliError {
    fn from(e: quantum_oracle::OracleError) -> Self {
        CliError::Validation(format!("quantum-oracle: {e}"))
    }
}

impl From<arrow_of_time::ArrowError> for CliError {
    fn from(e: arrow_of_time::ArrowError) -> Self {
        CliError::Validation(format!("arrow-of-time: {e}"))
    }
}

impl From<spacetime::GeometryError> for CliError {
    fn from(e: spacetime::GeometryError) -> Self {
        CliError::Validation(format!("spacetime: {e}"))
    }
}

impl From<LpError> for CliError {
    fn from(e: LpError) -> Self {
        CliError::Solver(format!("model-search: {e}"))
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Bell(inner) => inner.into(),
            other => CliError::Solver(format!("model-search: {other}")),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Validation(format!("json: {e}"))
    }
}
