//! Exact toolkit for ℓ-conformal Galilei algebras with central extensions.
//!
//! The crate builds the algebras in d = 1, 2 (mass and exotic extensions,
//! plus the centerless (d, ℓ) = (1, 1) case), their lowest-weight Verma
//! modules, singular vectors, differential-operator realizations and the
//! invariant PDE hierarchies, and checks every identity by exact
//! arithmetic over rational functions in the weight parameters.
//!
//! ℓ is always passed as the integer `2ℓ`.

pub mod acceptance;
pub mod algebra;
pub mod diffop;
pub mod error;
pub mod expr;
pub mod invariants;
pub mod linalg;
pub mod reps;
pub mod scalars;
pub mod singular;
pub mod verma;

pub use algebra::{AlgebraSpec, Extension, Gen, GenCombo, Pol};

pub use diffop::{CoefPoly, DiffOp, Var, VarSpace};
pub use error::{Error, Result};
pub use scalars::{ParamPoly, Scalar, Symbol};
pub use verma::{BasisConstraint, ModuleVector, Params, PbwMonomial, VermaModule, Weight};

