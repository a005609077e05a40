//! Decision procedures built from the invariants of `QG`: invariant
//! vectors, separation of metacyclic `p`-groups, π-signatures and Sylow
//! subgroups of groups with equal vectors, and the `p`-component identity.

pub mod classify;
pub mod theorems;
pub mod vector;

pub use classify::{classify_order, classify_small_metacyclic, ClassificationRow};
pub use theorems::{
    degree_center_check, frattini_quotient_order_of_sylow2, isop_decide, p_component_sum_check,
    re_presentations, real_imaginary_center_check, sylow_isomorphism_check, sylow_isomorphism_check_with,
    CenterCriterionReport, IsopDecision, PComponentReport, SylowCheck, SylowIsomorphismReport, PROXY_NOTE,
};
pub use vector::{
    compare_vectors, components_compatible, invariant_vector_of_table, qg_invariant_vector, Comparison,
    ComponentInvariant, QGInvariantVector,
};
