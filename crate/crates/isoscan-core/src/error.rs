use alloc::string::String;
use core::fmt;

/// Errors raised by the library.
///
/// The variants line up with the CLI exit codes: `Usage` and `Validation`
/// map to 2, `Internal` to 4. `BadPrime` is a normal outcome during scans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the arguments was violated.
    Usage(String),
    /// The prime divides a denominator or the discriminant.
    BadPrime(u64),
    /// Input data is inconsistent with the theory (profiles, degrees, pairs).
    Validation(String),
    /// An internal invariant failed; indicates a bug or a wrong group order.
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(m) => write!(f, "usage error: {m}"),
            Error::BadPrime(p) => write!(f, "{p} is not a good prime"),
            Error::Validation(m) => write!(f, "validation error: {m}"),
            Error::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

macro_rules! usage {
    ($($t:tt)*) => { $crate::error::Error::Usage(alloc::format!($($t)*)) };
}
macro_rules! validation {
    ($($t:tt)*) => { $crate::error::Error::Validation(alloc::format!($($t)*)) };
}
macro_rules! internal {
    ($($t:tt)*) => { $crate::error::Error::Internal(alloc::format!($($t)*)) };
}
pub(crate) use {internal, usage, validation};
