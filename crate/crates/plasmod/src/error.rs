use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A pivot fell below the relative threshold during elimination.
    #[error("singular matrix: pivot magnitude {pivot:.3e} below threshold {threshold:.3e}")]
    SingularMatrix { pivot: f64, threshold: f64 },

    /// The eigenvalue iteration exhausted its budget.
    #[error("eigenvalue iteration did not converge within {0} sweeps")]
    NoConvergence(usize),

    /// Polynomial leading coefficient too small relative to the rest.
    #[error("degenerate leading coefficient: |{0:.3e}| < 1e-14 * max|coeff|")]
    DegenerateLeadingCoefficient(f64),

    /// Lossless Drude inversion has no real solution.
    #[error("no real frequency: target permittivity {target} >= background {eps0}")]
    NoRealFrequency { target: f64, eps0: f64 },

    /// The sphere denominator 2*eps0 + eps1 vanished exactly.
    #[error("exact resonance singularity: |2*eps_matrix + eps_particle| = 0")]
    ExactResonanceSingularity,

    /// A contrast hit the sphere eigenvalue 1/6 of the boundary operator.
    #[error("contrast coincides with the sphere eigenvalue 1/6")]
    EigenvalueHit,

    /// Green function evaluated at its source point.
    #[error("evaluation point coincides with the source")]
    SourceSingularity,

    /// Nonphysical negative imaginary permittivity fed to the heat source.
    #[error("negative loss: Im(eps1) = {0} < 0")]
    NegativeLoss(f64),

    /// Two adjacent shell layers have (numerically) equal permittivities.
    #[error("degenerate interface {index}: adjacent permittivities coincide")]
    DegenerateInterface { index: usize },

    /// The transmission system is numerically singular (lossless resonance).
    #[error("resonant singularity: transmission system is numerically singular")]
    ResonantSingularity,

    /// All excitability overlaps of the selected mode vanish.
    #[error("hypothesis violated: every overlap of mode {mode_index} vanishes")]
    HypothesisViolated { mode_index: usize },

    /// A precondition on the inputs does not hold.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Configuration could not be parsed or validated.
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    /// Process exit code for the command-line front end:
    /// 0 success, 2 config error, 3 numerical singularity,
    /// 4 theorem-hypothesis violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidInput(_) => 2,
            Error::SingularMatrix { .. }
            | Error::ResonantSingularity
            | Error::ExactResonanceSingularity
            | Error::EigenvalueHit
            | Error::SourceSingularity
            | Error::NoConvergence(_) => 3,
            Error::HypothesisViolated { .. } => 4,
            _ => 1,
        }
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
