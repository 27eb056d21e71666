use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Bad parameters or mismatched inputs.
    #[error("usage error: {0}")]
    Usage(String),
    /// An operation's input failed a documented precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Two independent computations disagreed.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! usage {
    ($($arg:tt)*) => {
        $crate::error::Error::Usage(alloc::format!($($arg)*))
    };
}
pub(crate) use usage;
