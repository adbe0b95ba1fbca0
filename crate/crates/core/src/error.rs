use crate::modes::ValidationReport;

/// Errors are split into structural problems (mismatched lengths, resource
/// guards) and physics-domain failures (violated commutation constraints,
/// unphysical covariances, states outside a formula's domain).
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid domain value: {0}")]
    InvalidValue(String),

    #[error("transformation rows violate commutation constraints\n{0}")]
    InvalidRows(ValidationReport),

    #[error("covariance is not in standard form: |{entry}| = {magnitude:.3e} exceeds tolerance")]
    NonStandardForm { entry: &'static str, magnitude: f64 },

    #[error("not a symmetric state: |det alpha - det beta| = {0:.3e}")]
    NonSymmetricState(f64),

    #[error("unphysical covariance: {0}")]
    UnphysicalCovariance(String),

    #[error("imaginary residue {0:.3e} above tolerance; covariance matrix is malformed")]
    ImaginaryResidue(f64),

    #[error("the pair at omega = {0} is never entangled; no threshold temperature exists")]
    NoThreshold(f64),

    #[error("{what} did not converge within {iterations} iterations")]
    Convergence {
        what: &'static str,
        iterations: usize,
    },

    #[error("truncated Fock space too large: {0}")]
    ResourceGuard(String),

    #[error("out of domain: {0}")]
    OutOfDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
