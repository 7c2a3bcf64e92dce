//! Homotopy-category linear algebra for complexes of projectives.

pub mod complex;
pub mod hom;
pub mod tilting;

pub use complex::{multiply, PathComb, ProjComplex};
pub use hom::{hom_basis, hom_homotopy};
pub use tilting::{
    build_tilting_long_relation, build_tilting_omega, check_generation, has_omega_tilting, long_relation_algebra,
    long_relation_endomorphism_algebra, shift_range, stalk_sum, verify_tilting, GenerationCheck, Summand, TiltingComplex,
    TiltingReport,
};
