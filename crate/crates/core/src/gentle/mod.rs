//! General quivers with relations and the gentle / skewed-gentle models of
//! class-D Nakayama algebras.

pub mod checks;
pub mod dimension;
pub mod omega;
pub mod quiver;

pub use checks::{check_skewed_gentle, is_gentle, is_special_biserial, ConditionReport, SkewedGentleTriple, Violation};
pub use dimension::{algebra_dimension, graded_dimension, GradedDimension};
pub use omega::{build_a_big_omega, build_a_omega, omega_set, sp_set, OmegaContraction};
pub use quiver::{Arrow, GeneralPath, GeneralPresentation, GeneralPresentationJson, GeneralQuiver, SignedRelation};
