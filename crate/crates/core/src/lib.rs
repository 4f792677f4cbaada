//! Supervisory control of two discrete-event subsystems coordinated through a
//! third one.
//!
//! Languages are prefix-closed and represented by deterministic
//! [`Generator`]s. The crate provides the language operations (natural
//! projection, synchronous product, inclusion and equality with
//! counterexamples), classical controllability and the supremal controllable
//! sublanguage, the observer and output-control-consistency properties of
//! projections, and the coordination layer on top of them.

pub mod alphabet;
pub mod control;
pub mod coordination;
pub mod error;
pub mod generator;
pub mod ops;
pub mod oracle;
pub mod report;
mod search;
pub mod structural;

pub use alphabet::{events, Alphabet, Event, EventSet};
pub use control::{closed_loop, is_admissible, is_controllable, sup_c, Supervisor};
pub use coordination::{
    conditionally_decomposable, conditionally_independent, default_coordinator,
    suggest_coordinator_events, ClosedLoops, ConditionalControllabilityReport, CoordinatedPlant,
    Supervisors, SynthesisResult,
};
pub use error::{Error, Result};
pub use generator::{Generator, StateId, Word};
pub use ops::{
    inverse_project, language_equal, language_subset, language_union, minimize, project,
    project_onto, sync_all, sync_product, CoordinationScheme, Local, ProjectionSpec,
};
pub use report::PropertyReport;
pub use structural::{is_observer, is_occ};
