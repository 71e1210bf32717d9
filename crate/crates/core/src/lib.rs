//! Torsion theory, higher torsion classes and Harder-Narasimhan filtrations
//! over finite-dimensional bound quiver algebras with monomial relations.

pub mod chain;
pub mod covering;
pub mod error;
pub mod formats;
pub mod highertors;
pub mod hn_higher;
pub mod homology;
pub mod matrix;
pub mod model;
pub mod quiver;
pub mod rep;
pub mod torsion;

pub use chain::{Class, StepChain};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use model::{nakayama_model, DecompositionResult, ModuleCategoryModel, Multiset};
pub use quiver::{parse_algebra_spec, projective_module, BoundQuiverAlgebra, Quiver};
pub use rep::{direct_sum, hom_basis, morphism_factorization, submodule_list, Morphism, Representation};
pub use torsion::Ambient;
