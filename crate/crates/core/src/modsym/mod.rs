//! Modular symbols for Gamma_0(N) with a quadratic character, and the Hecke
//! characteristic polynomials on their cuspidal plus quotient.

mod boundary;
pub mod heilbronn;
mod miller;
mod p1;
pub mod relations;
mod space;

pub use boundary::CuspList;
pub use miller::{cusp_basis_level_one, delta, eisenstein_e4, eisenstein_e6, eta_product_series, miller_charpoly, QSeries};
pub use p1::P1List;
pub use space::{ManinSymbol, ModularSymbolSpace};

use crate::dimformulas::SpaceLabel;
use crate::error::Result;
use crate::exactlinalg::IntPoly;

/// Builds the space and returns the characteristic polynomial of T_l on it.
pub fn charpoly_hecke(label: SpaceLabel, l: u64) -> Result<IntPoly> {
    ModularSymbolSpace::build(label)?.charpoly_hecke(l)
}
