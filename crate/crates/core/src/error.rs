use thiserror::Error;

/// Errors raised by the numerical kernels and the run front end.
///
/// Every numerical variant carries the name of the operation that raised it
/// so command-line diagnostics can point at the failing step.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{op}: domain error: {reason}")]
    Domain { op: &'static str, reason: String },

    #[error("{op}: did not converge: {detail}")]
    Convergence { op: &'static str, detail: String },

    #[error("{op}: grid does not cover the integrand: {detail}")]
    GridCoverage { op: &'static str, detail: String },

    #[error("{op}: ill-conditioned fit: {detail}")]
    IllConditionedFit { op: &'static str, detail: String },

    #[error("{op}: singular: {detail}")]
    Singularity { op: &'static str, detail: String },

    #[error("{op}: constraint violated: {detail}")]
    Constraint { op: &'static str, detail: String },

    #[error("{op}: blackening function is non-positive (B = {value:e}) at r = {r}")]
    NonPositiveBlackening { op: &'static str, r: f64, value: f64 },

    #[error("{op}: integrand is imaginary (b = {value:e}) at w = {w}")]
    ImaginaryIntegrand { op: &'static str, w: f64, value: f64 },

    #[error("{op}: non-finite integrand at x = {x}")]
    NonFinite { op: &'static str, x: f64 },

    #[error("regularize: cutoff mismatch between deformed ({deformed}) and background ({background})")]
    CutoffMismatch { deformed: String, background: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { op, reason: reason.into() }
    }

    /// True for errors caused by bad input rather than a failed computation.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Config(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
