use thiserror::Error;

/// Errors produced while building or analysing models.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation contains a cycle through {}", .0.join(" -> "))]
    Cycle(Vec<String>),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("element `{0}` declared more than once")]
    DuplicateElement(String),

    #[error("oracle bound exceeded: {size} elements, bound is {bound}")]
    OracleBoundExceeded { size: usize, bound: usize },

    #[error("chain index {0} out of range")]
    BadChainIndex(usize),

    #[error("invalid chain partition: {0}")]
    BadChainPartition(String),

    #[error("events of process {0} are not totally ordered")]
    NotTotallyOrdered(usize),

    #[error("process {process}: indices {found:?} are not 1..={expected}")]
    IndexGap {
        process: usize,
        expected: usize,
        found: Vec<usize>,
    },

    #[error("process {0}: slot indices disagree with the happened-before order")]
    IndexOrder(usize),

    #[error("process {0} has no events")]
    EmptyProcess(usize),

    #[error("event `{event}`: {reason}")]
    BadLabel { event: String, reason: String },

    #[error("not width-extensible; antichain {{{}}} has no width-antichain", .0.join(", "))]
    NotWidthExtensible(Vec<String>),

    #[error("not a width-antichain: {0}")]
    NotWidthAntichain(String),

    #[error("not a consistent cut: {0}")]
    NotConsistent(String),

    #[error("bad checkpoint marking: {0}")]
    BadMarking(String),

    #[error("state model is not valid for the event transform: {0}")]
    InvalidStateModel(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Cycle(_) => "cycle",
            Error::UnknownElement(_) => "unknown_element",
            Error::DuplicateElement(_) => "duplicate_element",
            Error::OracleBoundExceeded { .. } => "oracle_bound_exceeded",
            Error::BadChainIndex(_) => "bad_chain_index",
            Error::BadChainPartition(_) => "bad_chain_partition",
            Error::NotTotallyOrdered(_) => "not_totally_ordered",
            Error::IndexGap { .. } => "index_gap",
            Error::IndexOrder(_) => "index_order",
            Error::EmptyProcess(_) => "empty_process",
            Error::BadLabel { .. } => "bad_label",
            Error::NotWidthExtensible(_) => "not_width_extensible",
            Error::NotWidthAntichain(_) => "not_width_antichain",
            Error::NotConsistent(_) => "not_consistent",
            Error::BadMarking(_) => "bad_marking",
            Error::InvalidStateModel(_) => "invalid_state_model",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
