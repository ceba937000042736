use thiserror::Error;

use crate::exact::{ExactError, Field};
use crate::report::IdentityReport;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("precondition failed: {what}\n{report}")]
    Precondition {
        what: &'static str,
        report: IdentityReport,
    },
    #[error("{tensor} would be discarded but has nonzero entries {entries:?}")]
    NonzeroDiscarded {
        tensor: &'static str,
        entries: Vec<(Vec<usize>, usize)>,
    },
    #[error("{what}: {requested} exceeds the configured cap {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        requested: usize,
    },
    #[error("search space of {required} candidates exceeds the budget {budget}")]
    BudgetExceeded { budget: u64, required: u128 },
    #[error("operation requires a finite field, got {0}")]
    NotFinite(Field),
    #[error("{0} is not in the cochain space")]
    NotACochain(&'static str),
    #[error("invalid argument: {0}")]
    Invalid(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Turns a failing report into a precondition error.
pub(crate) fn require(what: &'static str, report: IdentityReport) -> Result<()> {
    if report.ok() {
        Ok(())
    } else {
        Err(Error::Precondition { what, report })
    }
}
