use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operators {0} and {1} do not commute")]
    NonCommuting(usize, usize),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("cannot embed dimension {from} into smaller dimension {to}")]
    EmbedShrinks { from: usize, to: usize },

    #[error("zero vector cannot define a ray")]
    ZeroRay,

    #[error("rays {0} and {1} are equivalent up to phase")]
    DuplicateRay(usize, usize),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid candidate representation: {0}")]
    InvalidCandidate(String),

    #[error("valuation covers {found} observables, expected {expected}")]
    MissingAssignment { expected: usize, found: usize },

    #[error("ill-posed mixture triple {index}: residual {residual:e}")]
    IllPosedMixture { index: usize, residual: f64 },

    #[error("object not present in candidate tables: {0}")]
    MissingObject(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search budget of {budget} nodes exceeded")]
    Budget { budget: u64 },

    #[error("verification of constructed set failed; counterexample valuation {counterexample:?}")]
    VerificationFailed { counterexample: Vec<f64> },

    #[error("an extension hook is required to probe beyond the listed tables")]
    HookRequired,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
