//! Exact computations on polarized complex tori with a finite group action:
//! endomorphism algebras, their Wedderburn factors, the invariant ample cone
//! and fundamental domains for its automorphism group.

pub mod algebra;
pub mod check;
pub mod cone;
pub mod endo;
pub mod error;
pub mod exact;
pub mod pipeline;
pub mod reduction;
pub mod torus;
pub mod wedderburn;

pub use check::Check;
pub use error::{Error, Result};
pub use exact::{IntegerMatrix, Rational, RationalMatrix};
