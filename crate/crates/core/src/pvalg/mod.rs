//! The V-powerset monad `P_V`, its algebras, strength, bimorphisms and the
//! algebra tensor.

mod algebra;
mod bimorphism;
mod monad;
mod strength;
mod tensor;

pub use algebra::{
    algebra_from_cocomplete, algebra_to_module, algebra_to_vcat, check_algebra_map, check_pv_algebra, enumerate_algebras,
    module_to_algebra, vcat_to_algebra, AlgebraJson, AlphaEntry, AssocMode, PVAlgebra, EXHAUSTIVE_ASSOCIATIVITY,
};
pub use bimorphism::{
    check_bimorphism_componentwise, check_bimorphism_strength, is_bimorphism_componentwise, is_bimorphism_strength,
};
pub use monad::{
    all_weights, check_monad_laws, dense_to_weighted, pv_apply, pv_map, pv_mult, pv_unit, tensor_weights, weight_at,
    weight_index, weighted_to_dense, Weighted,
};
pub use strength::{strength_suite, StrengthData};
pub use tensor::{check_tensor_agreement, tensor_alg, tensor_alg_direct, AlgTensor, DirectTensor};
