use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("genus {genus} exceeds the word-packed bound {max}")]
    GenusTooLarge { genus: usize, max: usize },

    #[error("genus {genus} out of range: {reason}")]
    GenusOutOfRange { genus: usize, reason: &'static str },

    #[error("basis index {index} out of range for genus {genus} (indices are 1-based)")]
    IndexOutOfRange { index: usize, genus: usize },

    #[error("axis has odd weight (one-sided class); Dehn twists require two-sided curves")]
    OneSidedAxis,

    #[error("class has odd weight where an even-weight (two-sided) class is required")]
    OddWeightClass,

    #[error("input vectors are linearly dependent")]
    DependentInput,

    #[error("classes have rank {rank}, need rank {needed}")]
    RankDeficient { rank: usize, needed: usize },

    #[error("enumeration cap exceeded: genus {genus} > cap {cap}")]
    CapExceeded { genus: usize, cap: usize },

    #[error("memory budget exceeded after exploring {explored} elements (budget {budget_mb} MB)")]
    MemoryBudgetExceeded { explored: usize, budget_mb: usize },

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
