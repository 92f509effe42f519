//! Exact computation of bigraded free resolutions of symmetric-algebra
//! ideals of equigenerated zero-dimensional schemes.
//!
//! Given n+1 forms of one degree eta in k[x_0..x_n], this crate builds the
//! symmetric-algebra ideal and its Koszul hull in S = k\[x..\]\[y..\], resolves
//! them exactly over F_p or QQ, and checks the structural facts that tie
//! them together: the Eagon-Northcott resolution of the hull, the predicted
//! shape of the minimal resolution, subregularity, colon and Hilbert-series
//! identities, and fibre ranks of the presentation matrix.

pub mod bidegree;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod resolution;
pub mod verify;

pub use bidegree::BiDegree;
pub use complex::{BettiTable, ChainComplex};
pub use error::AlgebraError;
pub use field::{Field, PrimeField, Rationals};
pub use matrix::{GradedFreeModule, PolyMatrix};
pub use monomial::Monomial;
pub use order::{ModuleOrder, TermOrder};
pub use poly::{poly_arith, ArithOp, Polynomial, Ring, RingRef};
