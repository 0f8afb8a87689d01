//! Exact linear algebra over Q: echelon forms, kernels, restriction to
//! invariant subspaces and integer characteristic polynomials.

mod charpoly;
mod field;
mod intpoly;
mod matrix;

pub use charpoly::{charpoly, charpoly_rational, charpoly_with_root_bound, hessenberg_charpoly, rational_to_intpoly};
pub use field::{Field, PrimeField, Rationals};
pub use intpoly::IntPoly;
pub use matrix::{rref_rows, RatMatrix, RatVector};
