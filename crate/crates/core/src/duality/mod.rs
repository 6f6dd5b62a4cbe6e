//! The duality between finite spaces with perfect maps and complete local
//! contact algebras with PAL-morphisms.

mod dual_space;
mod functors;
mod morphism;

pub use dual_space::{dual_space, verify_lambda_g, DualCase, DualSpaceResult};
pub use functors::{
    closed_embedding_test, roundtrip_verify, t_map, xi_a_map, xi_t_map, ClosedEmbeddingVerdict, RoundtripItem,
    TMap,
};
pub use morphism::{
    check_morphism, compose, compose_as, compose_plain, modification, modification_as, AlgebraMorphism,
    MorphismKind,
};
