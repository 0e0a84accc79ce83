//! Exact lower bounds and certified minima for integer polynomials that are
//! positive on the standard simplex `{x >= 0, sum x_i <= 1}`.
//!
//! Two things are provided:
//!
//! * closed-form dyadic lower bounds `2^-L` on the minimum in terms of the
//!   dimension `k`, the degree `d` and the coefficient bitsize `tau`
//!   ([`bounds`]);
//! * a certification pipeline that computes the exact minimum: automatically
//!   for univariate polynomials and edges, and through supplied rational
//!   univariate representations for faces of dimension two or more
//!   ([`certify`]).
//!
//! All certified arithmetic is exact over `BigInt`/`BigRational`. The
//! polynomial and matrix kernels are generic over [`Scalar`]; the aliases
//! below fix the concrete types used throughout.

pub mod algebraic;
pub mod bits;
pub mod bounds;
pub mod certify;
pub mod error;
pub mod face;
pub mod matrix;
pub mod numeric;
pub mod parse;
pub mod poly;
pub mod resultant;
mod scalar;

pub use error::{Error, Result};
pub use poly::{Monomial, MultiPoly, UniPoly};
pub use scalar::Scalar;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Rational in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;
/// Dense integer polynomial in one variable.
pub type IntPoly = UniPoly<Int>;
/// Dense rational polynomial in one variable.
pub type RatPoly = UniPoly<Rat>;
/// Sparse integer polynomial in several variables.
pub type IntMultiPoly = MultiPoly<Int>;
/// Float image of a polynomial, used by the numeric oracle only.
pub type FloatMultiPoly = MultiPoly<f64>;
