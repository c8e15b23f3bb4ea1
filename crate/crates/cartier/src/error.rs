use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^20]")]
    InvalidPrime(u64),
    #[error("ring contexts differ")]
    RingMismatch,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("level {e} exceeds the cap {cap} (set CARTIER_MAX_E to raise it)")]
    LevelCap { e: u32, cap: u32 },
    #[error("{msg} at column {col}")]
    Parse { msg: String, col: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("polynomial {0} is not monic in the extension variable")]
    NonMonic(String),
    #[error("f is not a regular element on the module")]
    NonDegenerate,
    #[error("module is not F-regular for the given test element")]
    NotFRegular,
    #[error("stabilization not reached after {steps} steps")]
    StabilizationCapExceeded { steps: usize },
    #[error("structure map does not preserve the presentation: {0}")]
    NotCartierStable(String),
    #[error("map is not a Cartier morphism: {0}")]
    NotMorphism(String),
    #[error("methods disagree: {0}")]
    Disagreement(String),
    #[error("value {0} is outside the computed range")]
    OutOfRange(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::LevelCap { .. } | Error::StabilizationCapExceeded { .. } => 4,
            Error::Disagreement(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
