use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cell index {index} out of range for ring of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("ring size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("ring of size {n} does not fit in a {width}-bit packed word")]
    TooWideForPacking { n: usize, width: usize },
    #[error("bipartite mode requires an even ring size, got {0}")]
    OddRingSize(usize),
    #[error("not a partition of 0..{n}: {reason}")]
    NotAPartition { n: usize, reason: String },
    #[error("shift {shift} of cell {cell} is not below its period {period}")]
    ShiftOutOfRange { cell: usize, shift: usize, period: usize },
    #[error("period {period} exceeds the cap of {cap} substeps")]
    PeriodOverflow { period: u128, cap: usize },
    #[error("infeasible constraint: {0}")]
    InfeasibleConstraint(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("ring of size {0} is too small (need at least 2 cells)")]
    RingTooSmall(usize),
    #[error("need at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("need at least 2 series of equal length")]
    InsufficientSeries,
    #[error("rule {0} has no wall construction")]
    UnsupportedRule(u8),
    #[error("construction needs {needed} cells but the ring has {n}")]
    DoesNotFit { needed: usize, n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
