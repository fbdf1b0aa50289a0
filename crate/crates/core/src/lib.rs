//! Maximum socially stable matching.
//!
//! A matching is socially stable when it is individually rational and no
//! blocking pair is joined by an edge of the social graph. Finding a
//! maximum one is NP-hard; this crate provides
//!
//! - [`socgs::socgs`], a polynomial 3/2-approximation built on repeated
//!   man-proposing deferred acceptance with altered women's orders,
//! - [`socgs::stable_baseline`], the plain stable matching (a
//!   2-approximation),
//! - [`exact`], an exhaustive oracle for small instances,
//! - [`reduction`], the gadget reduction from Independent Set together with
//!   the procedures that map between independent sets and matchings,
//! - stability checkers, generators, text formats and a benchmark harness.

pub mod altered;
pub mod bench;
pub mod da;
pub mod error;
pub mod exact;
pub mod generators;
pub mod io;
pub mod model;
pub mod reduction;
pub mod socgs;
pub mod stability;

pub use error::{GraphError, ModelError, OracleError, ParseError, ReductionError, SolveError};
pub use model::{cardinality, validate_instance, AgentId, Instance, ManId, Matching, RawInstance, Side, WomanId};
