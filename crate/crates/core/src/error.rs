use thiserror::Error;

use crate::report::PropertyReport;

/// Errors raised by constructors and operations of this crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("event names must be nonempty")]
    EmptyEventName,
    #[error("event `{0}` declared twice")]
    DuplicateEvent(String),
    #[error("state `{0}` declared twice")]
    DuplicateState(String),
    #[error("a generator needs at least one state")]
    NoStates,
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("nondeterministic transition: state `{state}` has two successors on `{event}`")]
    Nondeterministic { state: String, event: String },
    #[error("event `{0}` is controllable in one alphabet and uncontrollable in another")]
    ControllabilityConflict(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("inadmissible supervisor: {0}")]
    Inadmissible(PropertyReport),
    #[error("precondition `{what}` failed: {report}")]
    Precondition {
        what: String,
        report: PropertyReport,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
