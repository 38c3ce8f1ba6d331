//! Support code for the `equimilnor` command-line tool.

pub mod verify;

use equimilnor::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

/// Process exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::DimensionMismatch { .. }
        | Error::InvalidAction(_)
        | Error::InvalidLoopSpec(_)
        | Error::Domain(_) => EXIT_USAGE,
        Error::NotInvariant { .. } | Error::NonIsolated { .. } | Error::NotACriticalPoint { .. } => {
            EXIT_PRECONDITION
        }
        Error::ResourceLimit(_) | Error::DimensionLimit { .. } => EXIT_RESOURCE,
        _ => EXIT_FAILURE,
    }
}
