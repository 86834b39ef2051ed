use thiserror::Error;

/// Failure modes of the classification pipeline.
///
/// The variants map one-to-one onto the distinct ways an input can be
/// rejected, so front ends can translate them into exit codes.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Validation(String),

    /// A hamiltonian (or Dirac datum) violates the symmetry constraints.
    #[error("symmetry violation: {what} (residual {residual:.3e})")]
    Symmetry { what: String, residual: f64 },

    /// The single-particle spectrum has no gap at zero energy.
    #[error("gapless input: gap {gap:.3e} does not exceed tolerance {tol:.3e}")]
    Gapless { gap: f64, tol: f64 },

    /// A numerically derived object failed its own consistency check.
    #[error("numerical quality: {0}")]
    Numerical(String),

    /// A flattened operator does not square to minus the identity.
    #[error("flattening: {0}")]
    Flattening(String),

    /// Inconsistent (algebra, linearity, sign) data reached the class tables.
    #[error("classification: {0}")]
    Classification(String),

    /// A multiplicity space has a dimension incompatible with its class.
    #[error("dimension: {0}")]
    Dimension(String),

    /// A sampled path point failed the gap or symmetry check.
    #[error("path construction: {0}")]
    PathConstruction(String),

    /// A documented precondition of the operation does not hold.
    #[error("precondition: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
