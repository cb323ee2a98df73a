//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian within tolerance (max asymmetry {max_asym:.3e})")]
    NotHermitian { max_asym: f64 },

    #[error("matrix is not special-unitary within tolerance")]
    NotSpecialUnitary,

    #[error("{name} = {value} is outside {range}")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("density matrix trace must be 1 within 1e-12, got {trace}")]
    NonUnitTrace { trace: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eig:.3e}")]
    NotPositiveSemidefinite { min_eig: f64 },

    #[error("invalid quadrature rule {n_alpha}x{n_beta}: need n_alpha >= 4 and n_beta >= 2")]
    InvalidQuadrature { n_alpha: usize, n_beta: usize },

    #[error("reconstruction did not converge: trace {trace} deviates from 1 by more than 1e-6")]
    ReconstructionDiverged { trace: f64 },

    #[error("invalid probability pair ({p_up}, {p_down}): entries must be nonnegative and sum to 1")]
    InvalidProbabilities { p_up: f64, p_down: f64 },

    #[error("invalid stochastic matrix: {reason}")]
    InvalidStochasticMatrix { reason: String },

    #[error("witness parameters out of domain: need |a| <= 1/(2r), got a = {a} with r = {r}")]
    WitnessDomain { a: f64, r: f64 },

    #[error("Bloch radius {r} is outside (0, 1]: the maximally mixed state admits no witness")]
    RadiusOutOfRange { r: f64 },

    #[error("witness parameter {name} = {value} is invalid: {reason}")]
    WitnessParam {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("state is classical (zero Bloch radius): no witness exists")]
    ClassicalState,

    #[error("witness operator ordering 0 <= A <= B violated: {reason}")]
    WitnessOrdering { reason: String },

    #[error("classical hypothesis violated: outcomes must satisfy 0 <= A <= B componentwise")]
    HypothesisViolated,

    #[error("no two distinct eigenvalues found: classical direction not found")]
    ClassicalDirectionNotFound,

    #[error("invalid dimension: {reason}")]
    InvalidDimension { reason: String },

    #[error("invalid measurement plan: {reason}")]
    InvalidPlan { reason: String },

    #[error(
        "plan is missing one of the canonical directions \
         (beta = 0; beta = pi/2, alpha = 0; beta = pi/2, alpha = pi/2)"
    )]
    MissingCanonicalDirections,

    #[error(
        "estimated Bloch radius {r_hat:.4e} is statistically indistinguishable from zero \
         (T = {t_stat:.3} <= {threshold:.3}): no witness constructible"
    )]
    NoWitnessConstructible {
        r_hat: f64,
        t_stat: f64,
        threshold: f64,
    },

    #[error("invalid tomogram grid: {reason}")]
    InvalidGrid { reason: String },

    #[error("invalid value: {reason}")]
    InvalidValue { reason: String },
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "not-hermitian",
            Error::NotSpecialUnitary => "not-special-unitary",
            Error::AngleOutOfRange { .. } => "angle-out-of-range",
            Error::NonUnitTrace { .. } => "non-unit-trace",
            Error::NotPositiveSemidefinite { .. } => "not-positive-semidefinite",
            Error::InvalidQuadrature { .. } => "invalid-quadrature",
            Error::ReconstructionDiverged { .. } => "reconstruction-diverged",
            Error::InvalidProbabilities { .. } => "invalid-probabilities",
            Error::InvalidStochasticMatrix { .. } => "invalid-stochastic-matrix",
            Error::WitnessDomain { .. } => "witness-domain",
            Error::RadiusOutOfRange { .. } => "radius-out-of-range",
            Error::WitnessParam { .. } => "witness-param",
            Error::ClassicalState => "classical-state",
            Error::WitnessOrdering { .. } => "witness-ordering",
            Error::HypothesisViolated => "hypothesis-violated",
            Error::ClassicalDirectionNotFound => "classical-direction-not-found",
            Error::InvalidDimension { .. } => "invalid-dimension",
            Error::InvalidPlan { .. } => "invalid-plan",
            Error::MissingCanonicalDirections => "missing-canonical-directions",
            Error::NoWitnessConstructible { .. } => "no-witness-constructible",
            Error::InvalidGrid { .. } => "invalid-grid",
            Error::InvalidValue { .. } => "invalid-value",
        }
    }
}
