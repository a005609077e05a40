//! The rational group algebra `QG` of a metacyclic group: exact idempotents
//! from strong Shoda pairs and the resulting Wedderburn components.

pub mod algebra;
pub mod decomposition;
pub mod field;
pub mod idempotent;

pub use algebra::GroupAlgebraElement;
pub use decomposition::{
    classify_degree2_division, maximal_abelian_subgroup, p_component_by_pair, p_component_predicate,
    strong_shoda_pairs, wedderburn_decomposition, DecompositionOptions, DivisionFlag, ShodaPair,
    SimpleComponentDescriptor, WedderburnComponent, WedderburnDecomposition, DEFAULT_ALGEBRA_CAP,
};
pub use field::{canonicalize_field, AbelianFieldDescriptor};
pub use idempotent::{e_idempotent, epsilon_idempotent, hat};
