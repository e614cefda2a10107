//! casewright: a workbench for dialectic safety cases.
//!
//! A safety case is held as an immutable [`model::ArgumentModel`]: goal-structured
//! argument modules (risk, confidence, operational), challenges raised against
//! elements and inferences, the resolutions recorded for those challenges, claim
//! points linking modules together, and monitoring obligations. Every operation is
//! a pure function: it returns a new model value or an error and never touches its
//! input.
//!
//! The crate is organised as a small pipeline:
//!
//! * [`dsl`] — the `.scs` textual format: parser with spanned diagnostics,
//!   canonical serializer, and formatter.
//! * [`analysis`] — well-formedness rules (stable `W...` codes), the challenge
//!   labeling and element status semantics, impact closure, and monitor
//!   obligations.
//! * [`workflow`] — stage gates for the six-stage development method, review
//!   sessions, operational triggers, and the append-only event log.
//! * [`render`] — filtered dot-dialect graph views and the plain-text report.

pub mod analysis;
pub mod dsl;
pub mod model;
pub mod render;
pub mod workflow;

pub use model::{ArgumentModel, ModelError};
