//! Exact computation of Schubert, Grothendieck, and beta-Grothendieck
//! polynomials, expansion of products into structure coefficients, machine
//! verification of linear relations among those coefficients, and exhaustive
//! finite-rank sweeps of multiplicity-freeness conjectures.
//!
//! All arithmetic is exact: coefficients are arbitrary-precision integers or
//! integer polynomials in a formal parameter `b`; no floating point appears
//! anywhere.

pub mod conjectures;
pub mod perm;
pub mod poly;
pub mod relations;
pub mod schubert;

pub use perm::{ParsePermError, PermError, Permutation};
pub use relations::{RelationError, RelationReport};
pub use schubert::{Basis, Expansion, PolyCache};
