use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Newton projection did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("constraint Jacobian has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("sampling exhausted: {rejected} rejected draws for {accepted} accepted points")]
    SamplingExhausted { accepted: usize, rejected: usize },

    #[error("vector field is not tangent at the evaluation point (normal residual {residual:e})")]
    TangencyViolation { residual: f64 },

    #[error("bad dimension: {0}")]
    BadDimension(String),

    #[error("structure violation: {}", .0.join("; "))]
    StructureViolation(Vec<String>),

    #[error("fiber matrix must have trace 0 and determinant 1 (trace {trace:e}, det {det})")]
    BadFiberMatrix { trace: f64, det: f64 },

    #[error("Jacobian corank {corank} differs from the expected dimension {expected}")]
    RegularityFailure { corank: usize, expected: usize },

    #[error("instance requires n >= {min}, got n = {n}")]
    InfeasibleForSmallN { n: usize, min: usize },

    #[error("unknown instance '{0}'")]
    UnknownInstance(String),

    #[error("not an orthonormal frame: {0}")]
    NotAFrame(String),
}

impl Error {
    /// True for failures caused by sampling or a non-regular constraint.
    pub fn is_regularity(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::RankDeficient { .. }
                | Error::SamplingExhausted { .. }
                | Error::RegularityFailure { .. }
                | Error::TangencyViolation { .. }
        )
    }
}
