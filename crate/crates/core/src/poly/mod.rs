//! Exact polynomial arithmetic.
//!
//! [`UniPoly`] is dense and [`MultiPoly`] is sparse; both are generic over the
//! coefficient [`Scalar`](crate::Scalar). The integer-only operations the
//! certification pipeline needs (content, gcd, square-free part, exact
//! rational evaluation) live in the `BigInt` impls below.

mod multi;
mod uni;

pub use multi::{Monomial, MultiPoly};
pub use uni::UniPoly;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bits::bitsize;
use crate::error::{Error, Result};

impl UniPoly<BigInt> {
    /// Maximum coefficient bitsize, sign not counted.
    pub fn bitsize(&self) -> Result<u64> {
        self.coeffs().iter().map(bitsize).max().ok_or(Error::ZeroPolynomial)
    }

    /// Gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        let c = if self.leading_coeff().is_some_and(|l| l.is_negative()) { -c } else { c };
        UniPoly::new(self.coeffs().iter().map(|a| a / &c).collect())
    }

    pub fn to_rat(&self) -> UniPoly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Clears denominators and returns the primitive integer associate.
    pub fn from_rat(p: &UniPoly<BigRational>) -> Self {
        let lcm = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        UniPoly::new(p.coeffs().iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect())
            .primitive_part()
    }

    /// Exact value at a rational point.
    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let (num, den_pow) = self.homogeneous_eval(x);
        BigRational::new(num, den_pow)
    }

    /// Sign of the value at a rational point, without building the fraction.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.homogeneous_eval(x).0.cmp(&BigInt::zero())
    }

    // sum c_i p^i q^(n-i) and q^n for x = p/q, q > 0
    fn homogeneous_eval(&self, x: &BigRational) -> (BigInt, BigInt) {
        let p = x.numer();
        let q = x.denom();
        let Some(n) = self.degree() else {
            return (BigInt::zero(), BigInt::one());
        };
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs().iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        // after n+1 steps qpow = q^(n+1); the sum above carries q^0..q^n
        let den = num_traits::pow(q.clone(), n);
        (acc, den)
    }

    /// Primitive gcd with positive leading coefficient; 1 when coprime.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        UniPoly::from_rat(&self.to_rat().gcd_monic(&other.to_rat()))
    }

    /// Exact quotient over the integers, if the division leaves no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.to_rat().div_rem(&divisor.to_rat());
        if !r.is_zero() || q.coeffs().iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(q.map(|c| c.to_integer()))
    }

    /// `p / gcd(p, p')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        let q = self.to_rat().div_rem(&g.to_rat()).0;
        UniPoly::from_rat(&q)
    }

    pub fn is_squarefree(&self) -> bool {
        self.is_constant() || self.gcd(&self.derivative()).is_constant()
    }
}

impl MultiPoly<BigInt> {
    /// Maximum coefficient bitsize, sign not counted.
    pub fn bitsize(&self) -> Result<u64> {
        self.terms().map(|(_, c)| bitsize(c)).max().ok_or(Error::ZeroPolynomial)
    }

    pub fn eval_rat(&self, point: &[BigRational]) -> BigRational {
        self.map(|c| BigRational::from_integer(c.clone())).eval(point)
    }

    pub fn to_f64(&self) -> MultiPoly<f64> {
        self.map(|c| crate::bits::rat_to_f64(&BigRational::from_integer(c.clone())))
    }
}
