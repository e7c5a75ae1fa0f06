//! Command-line driver for weightforge: the bundled atlas, job
//! specifications, the runner and its JSON report.

pub mod atlas;
pub mod job;
pub mod report;
pub mod run;

use weightforge::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Process exit code for a failed run. Broken internal invariants share the
/// code of refuted verdicts.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Domain(_) | Error::Validation { .. } | Error::Valuation(_) | Error::Data(_) => EXIT_INPUT,
        Error::ResourceLimit(_) | Error::Dependency(_) => EXIT_RESOURCE,
        Error::Contract(_) | Error::Internal(_) => EXIT_REFUTED,
    }
}
