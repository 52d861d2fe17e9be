//! Sparse multivariate polynomials over prime fields, Gröbner bases and
//! computations with ideals and finitely presented modules.

mod groebner;
mod ideal;
mod module;
mod poly;

pub use ideal::{groebner_basis, Ideal};
pub use module::{module_kernel, FreeSubmodule, PolyMatrix, PresentedModule};
pub use poly::{MonomialOrder, MultiPoly, PolyRing, RingRef};
