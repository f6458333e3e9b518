use thiserror::Error;

/// Errors produced by the solver, the quadrature engine and the data layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point ({x}, {t}) lies outside the closed quarter-plane")]
    OutsideDomain { x: f64, t: f64 },

    #[error("the corner (0, 0) is excluded from the solution domain")]
    Corner,

    #[error("invalid data term: {0}")]
    InvalidTerm(String),

    #[error("unknown contour name `{0}`")]
    UnknownContour(String),

    #[error("integrand carries no certified decay on {0}")]
    NonDecayingIntegrand(String),

    #[error("tolerance {tol:e} not met after {nodes} nodes (error estimate {err_est:e})")]
    ToleranceNotMet { tol: f64, err_est: f64, nodes: usize },

    #[error("transform diverges at lambda = {re} + {im}i")]
    DivergentTransform { re: f64, im: f64 },

    #[error("lambda = 0 is not allowed here")]
    ZeroLambda,

    #[error("derivative order out of supported range: {0}")]
    OrderOutOfRange(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends its own position; keep one copy
        let msg = e.to_string();
        let msg = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(m, _)| m);
        Error::Parse(format!("line {}, column {}: {msg}", e.line(), e.column()))
    }
}
