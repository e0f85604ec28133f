//! Exact construction and certification of free divisors: weighted graded
//! polynomial arithmetic, logarithmic derivations, Saito determinant checks,
//! weighted eigenscheme criteria, a Groebner/syzygy oracle, and the explicit
//! divisor families with their exponent formulas.

pub mod cert;
pub mod deriv;
pub mod error;
pub mod families;
pub mod groebner;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod saito;
pub mod syzygy;
pub mod weights;
pub mod wme;

pub use error::{Error, Result};
pub use poly::{Poly, Q};
pub use ring::{GradedRing, Monomial, RingRef, WeightedDegree};
