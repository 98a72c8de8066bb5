use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The `order` constraints contradict each other.
    #[error("contradictory time ordering involving `{0}`")]
    ConstraintCycle(String),
    /// A time point does not fit inside `[0, H]`.
    #[error("time `{what}` resolves to {value}, outside the horizon [0, {horizon}]")]
    HorizonOverflow { what: String, value: i64, horizon: u32 },
    /// The domain description is malformed.
    #[error("validation error: {0}")]
    Validation(String),
    /// An enumeration or search exceeded its configured bound.
    #[error("resource bound exceeded: {what} is {size}, limit {limit}")]
    ResourceBound { what: &'static str, size: usize, limit: usize },
    /// A formula mentions an atom that is not in the ground vocabulary.
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    /// A precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
