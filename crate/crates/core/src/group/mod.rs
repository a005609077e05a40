//! Metacyclic groups: normal-form arithmetic, Cayley-table oracles,
//! canonical parameters of `p`-groups, isomorphism testing and π-signatures.
//!
//! Conjugation is `g^h = h⁻¹ g h` throughout, matching `a^b = a^r`.

pub mod abelian;
pub mod canonical;
pub mod finite;
pub mod iso;
pub mod literal;
pub mod pi;
pub mod presentation;

pub use abelian::{abelianization_invariants, smith_diagonal};
pub use canonical::{CanonicalPParams, ClauseReport, ConditionParse, Epsilon, QuaternionClause, RhoFloor};
pub use finite::{ElementSet, FiniteGroup, Subgroup, DEFAULT_CAP};
pub use iso::{brute_force_isomorphic, isomorphism_classes};
pub use literal::GroupLiteral;
pub use pi::{hall_subgroup, pi_signature, sylow_subgroup, PiSignature};
pub use presentation::{GroupElement, MetacyclicPresentation};
