//! Exact computations with finite metacyclic groups and their rational
//! group algebras.
//!
//! * [`numtheory`]: valuations, multiplicative orders, geometric sums and
//!   cyclotomic classes.
//! * [`group`]: presentations, normal forms, subgroup oracles, canonical
//!   parameters of metacyclic `p`-groups.
//! * [`counting`]: closed-form class counts for metacyclic `p`-groups.
//! * [`wedderburn`]: idempotents and Wedderburn components of `QG`.
//! * [`invariants`]: invariant vectors of `QG` and the checks built on them.
//! * [`sweep`]: batches of exact checks over families of groups, with
//!   checkpointed progress.

pub mod counting;
pub mod error;
pub mod group;
pub mod invariants;
pub mod numtheory;
pub mod sweep;
pub mod wedderburn;

pub use error::{Error, Result};
