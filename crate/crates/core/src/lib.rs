//! Hecke polynomials on spaces of cusp forms `S_k(Gamma_0(N), chi)` and their
//! splitting behaviour modulo small primes.
//!
//! The pipeline runs from modular symbols ([`modsym`]) through exact linear
//! algebra ([`exactlinalg`]) to integer characteristic polynomials, which are
//! reduced and factored over F_p ([`ffpoly`]). [`scan`] drives the
//! level/prime/weight sweeps; [`dimformulas`] supplies closed-form dimensions
//! and degree bounds used as cross-checks.

pub mod arith;
pub mod dimformulas;
pub mod error;
pub mod exactlinalg;
pub mod ffpoly;
pub mod modsym;
pub mod scan;

pub use dimformulas::{QuadChar, SpaceLabel};
pub use error::{Error, Result};
pub use exactlinalg::{IntPoly, RatMatrix};
pub use ffpoly::{Factorization, FpPoly};
pub use modsym::ModularSymbolSpace;
pub use scan::{CellResult, LevelVerdict};
