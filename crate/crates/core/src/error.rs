use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DspError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("multiplicity profiles differ: {0}")]
    ProfileMismatch(String),
    #[error("blocks of sizes {s} and {l} not present under label {label:?}")]
    BlocksAbsent { label: String, s: usize, l: usize },
    #[error("rank {r} not admissible for size {n}")]
    BadRank { n: usize, r: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("tuple cannot be reduced: {0}")]
    NotReducible(String),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("search exhausted after u up to {bound}: {detail}")]
    SearchExhausted { bound: u64, detail: String },
    #[error("size {n} unsupported for {what}")]
    SizeUnsupported { what: String, n: usize },
    #[error("diagonal blocks {0} and {1} are equivalent")]
    EquivalentBlocks(usize, usize),
    #[error("every admissible schedule lands in {0}")]
    Unavoidable(String),
    #[error("index {0} unsupported")]
    UnsupportedIndex(i64),
}

impl DspError {
    /// Stable machine-readable kind, used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            DspError::Parse(_) => "Parse",
            DspError::Dimension(_) => "Dimension",
            DspError::NotNilpotent => "NotNilpotent",
            DspError::NoSolution => "NoSolution",
            DspError::ProfileMismatch(_) => "ProfileMismatch",
            DspError::BlocksAbsent { .. } => "BlocksAbsent",
            DspError::BadRank { .. } => "BadRank",
            DspError::PreconditionViolation(_) => "PreconditionViolation",
            DspError::NotReducible(_) => "NotReducible",
            DspError::ConstraintViolation(_) => "ConstraintViolation",
            DspError::SearchExhausted { .. } => "SearchExhausted",
            DspError::SizeUnsupported { .. } => "SizeUnsupported",
            DspError::EquivalentBlocks(..) => "EquivalentBlocks",
            DspError::Unavoidable(_) => "Unavoidable",
            DspError::UnsupportedIndex(_) => "UnsupportedIndex",
        }
    }
}

pub type Result<T> = std::result::Result<T, DspError>;
