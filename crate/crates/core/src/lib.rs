//! Realizations of finite-dimensional Lie algebras over `Q` as *basic*
//! subalgebras of polynomial vector fields.
//!
//! Given structure constants of an `n`-dimensional Lie algebra `L`, the
//! engine builds `n` derivations `D_1..D_n` of `Q[x1..xn]` that form a basis
//! of the free module of all derivations and satisfy
//! `[D_i, D_j] = sum_k c_ij^k D_k` exactly. An independent verifier checks any
//! candidate family against the same constants.
//!
//! Module map:
//! - [`polyring`]: exact multivariate polynomials, matrices, determinants.
//! - [`liealg`]: structure constants, series, adapted bases, splits.
//! - [`tensorlie`]: the algebra `R (x) L`, its extension by coordinate
//!   partials, and nilpotent exponentials of `ad`.
//! - [`vectorfield`]: derivations in the standard basis.
//! - [`realize`]: the constructions (nilpotent, solvable, extension,
//!   general, peeling, commuting bases).
//! - [`verify`]: the independent checker.
//! - [`json`] and [`cli`]: file formats and the command-line front end.

pub mod cli;
pub mod error;
pub mod json;
pub mod liealg;
pub mod polyring;
pub mod realize;
pub mod tensorlie;
pub mod vectorfield;
pub mod verify;

pub use error::{Error, Result};
pub use liealg::{BasisChange, LeviData, LieAlgebra, SolvableSplit, Subspace};
pub use polyring::{PolyMatrix, Polynomial, Rational};
pub use realize::{FactoredAutomorphism, Realization, SignConvention};
pub use tensorlie::{AhatElement, TensorElement, TensorLie};
pub use vectorfield::{FieldFamily, VectorField};
