//! Exact arithmetic for free graded-commutative differential algebras
//! (Sullivan algebras) over Q, together with a checker that certifies that a
//! 3-step Sullivan algebra is not strongly inflexible by mapping it into an
//! auxiliary dga carrying a positive weight.

pub mod algebra;
pub mod checker;
pub mod constructions;
pub mod corpus;
pub mod dga;
pub mod dot;
pub mod error;
pub mod expr;
pub mod file;
pub mod linalg;
pub mod weights;

pub use algebra::{Algebra, Element, Generator, Monomial};
pub use dga::{DgaMorphism, SullivanDga};
pub use error::{Error, Result};

/// Coefficients are arbitrary-precision rationals, always in lowest terms.
pub type Scalar = num_rational::BigRational;

/// Shorthand for an integral scalar.
pub fn q(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

/// Shorthand for the scalar `num/den`.
pub fn qr(num: i64, den: i64) -> Scalar {
    Scalar::new(num.into(), den.into())
}
