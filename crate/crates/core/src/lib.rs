//! Exact-arithmetic kernel for PBW-type algebras: normal ordering, half-integer
//! localization, sl2 centralizers, involutions, root data and minimal
//! W-algebra presentations.

pub mod algebras;
pub mod check;
pub mod exact;
pub mod halfloc;
pub mod morphism;
pub mod pbw;
pub mod roots;
pub mod sl2;
pub mod suite;
pub mod whittaker;

pub use exact::{HalfInt, Rational, RationalMatrix};
pub use pbw::{Lattice, Monomial, NCPoly, PbwError, Presentation};
