//! Derived representation type of Nakayama algebras.
//!
//! The crate parses Nakayama bound quiver algebras, decides whether they are
//! derived tame or derived wild, builds the gentle and skewed-gentle models
//! that witness tameness, verifies two-term tilting complexes by linear
//! algebra in the homotopy category, and computes the singularity-category
//! descriptor of tame cycle algebras.
//!
//! ```
//! use nakayama_core::{classify, parse_presentation, Verdict};
//!
//! let a = parse_presentation("cycle n=3 rel=(0,3),(1,3)").unwrap();
//! assert_eq!(classify(&a).verdict, Verdict::DerivedTame);
//! ```

pub mod classify;
pub mod corpus;
pub mod error;
pub mod euler;
pub mod gentle;
pub mod homotopy;
pub mod linalg;
pub mod parse;
pub mod presentation;
pub mod singularity;

pub use classify::{
    check_class_d, classify, contract, detect_truncated, explain_wildness, isolated_relations, ClassDReport,
    Classification, Verdict, WildnessExplanation, Witness,
};
pub use corpus::{run_corpus, CorpusConfig, CorpusSummary};
pub use error::{Error, Result};
pub use euler::{cartan_matrix, euler_nonnegative, is_psd_exact, EulerReport, PsdVerdict};
pub use gentle::{
    algebra_dimension, build_a_big_omega, build_a_omega, check_skewed_gentle, is_gentle, is_special_biserial, omega_set,
    sp_set, GeneralPresentation, OmegaContraction, SkewedGentleTriple,
};
pub use homotopy::{
    build_tilting_long_relation, build_tilting_omega, hom_basis, hom_homotopy, verify_tilting, ProjComplex, TiltingComplex,
    TiltingReport,
};
pub use linalg::{FieldKind, RationalMatrix, DEFAULT_PRIME};
pub use parse::parse_presentation;
pub use presentation::{
    minimal_relations, relations_from_kupisch, KupischSeries, NakPath, NakayamaPresentation, QuiverKind, RelationSet,
};
pub use singularity::{cycle_set, derived_invariant_check, singularity_descriptor, CycleSet, SingularityDescriptor};
