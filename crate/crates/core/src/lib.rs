//! Exact Chevalley groups over number fields, finite fields and function
//! fields, their automorphisms and Steinberg twists, and twisted-conjugacy
//! tooling.

pub mod chevgroup;
pub mod finite;
pub mod grpauto;
pub mod liealg;
pub mod matrix;
pub mod rootsys;
pub mod scalars;
pub mod twconj;
pub mod twist;

pub use chevgroup::{Character, ChevalleyGroup, GroupElement, GroupError};
pub use finite::{FiniteError, FiniteGroupOps, IndexAutomorphism, MatrixGroup, QuotientGroup};
pub use grpauto::{AutError, GroupAutomorphism};
pub use liealg::{ChevalleyBasis, LieError};
pub use matrix::{Matrix, MatrixError};
pub use rootsys::{DiagramSymmetry, Root, RootError, RootKind, RootSystem};
pub use scalars::{FieldAutomorphism, FieldDescriptor, FieldError, Polynomial, RationalFunction, Scalar};
pub use twconj::TwconjError;
pub use twist::{Twist, TwistError};
