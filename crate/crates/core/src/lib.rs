//! Exact descent polynomials of types A, B and D.
//!
//! The crate builds the polynomial `d(I;n)` counting permutations of `[n]`
//! with descent set `I` in several independent ways, analyses its
//! coefficients in shifted binomial bases, localises its complex roots, and
//! extends the counting to signed permutations and to nonoverlapping
//! consecutive patterns. Every closed form is paired with a brute-force
//! enumerator in [`enumerate`] that serves as its oracle.

pub mod coeffs;
pub mod descent;
pub mod enumerate;
pub mod error;
pub mod exactmath;
pub mod patterns;
pub mod roots;
pub mod signed;

pub use descent::DescentSet;
pub use error::{Error, Result};
pub use exactmath::{BinomExpansion, Composition, ExactInt, ExactPoly, ExactRational};
pub use patterns::PatternSet;
pub use roots::{ComplexPoint, RootCertificate};
pub use signed::{BinaryExpPoly, SignedDescentSet};
