//! Exact linear differential algebra.
//!
//! The crate works over the differential field `K = Q(t1, ..., tv)` with
//! commuting derivations and provides:
//!
//! * [`scalars`]: canonical multivariate rational functions and their derivatives,
//! * [`ore`]: the operator ring `K[d1, ..., dm]`,
//! * [`diffmodule`]: free modules over that ring, rankings, reduction and
//!   characteristic sets of submodules,
//! * [`numpoly`]: integer-valued numerical polynomials and staircase counting,
//! * [`dimension`]: differential dimension polynomials of finitely presented modules,
//! * [`normalform`]: diagonalization of operator matrices for one derivation and the
//!   resulting `K^d x C^k` tangent-space classification,
//! * [`variety`]: differential polynomials, points and linearization,
//! * [`cli`]: the input-file grammar and command dispatch used by the binary.

pub mod cli;
pub mod diffmodule;
pub mod dimension;
mod error;
pub mod normalform;
pub mod numpoly;
pub mod ore;
pub mod scalars;
pub mod variety;

pub use diffmodule::{AutoreducedSet, CharSet, ModElement, ModTerm, Ranking, RankingKind};
pub use dimension::DimensionReport;
pub use error::{Error, Result};
pub use normalform::{OreMatrix, TangentClass};
pub use numpoly::{Antichain, NumericalPolynomial};
pub use ore::{DerivMonomial, OrePoly};
pub use scalars::{DiffFieldConfig, MPoly, RatFun};
pub use variety::{DiffPoly, VarietyPoint};
