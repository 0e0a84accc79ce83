use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

use crate::scalar::Scalar;

/// Dense univariate polynomial, coefficients from degree 0 upward.
///
/// Trailing zeros are always trimmed, so the zero polynomial has an empty
/// coefficient vector and every other polynomial has a nonzero leading
/// coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * T^n`.
    pub fn monomial(c: T, n: usize) -> Self {
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(T))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// `T^n * self(1/T)` with `n = deg self`; the coefficient reversal.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }
}

impl<T: Scalar + FromPrimitive> UniPoly<T> {
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_usize(i).expect("degree fits the scalar"))
                .collect(),
        )
    }

    /// The `n`-th derivative.
    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }
}

impl<T: Scalar + Div<Output = T>> UniPoly<T> {
    /// Euclidean division over a field. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); nd - dd + 1];
        for i in (dd..=nd).rev() {
            let c = rem[i].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = rem[k].clone() - c.clone() * dc.clone();
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd over a field.
    pub fn gcd_monic(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        match a.leading_coeff().cloned() {
            Some(lc) => a.scale(&(T::one() / lc)),
            None => a,
        }
    }
}

impl<T: Scalar> Zero for UniPoly<T> {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> One for UniPoly<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Scalar> Add for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn add(self, rhs: Self) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn sub(self, rhs: Self) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn mul(self, rhs: Self) -> UniPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<T: Scalar> Neg for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn neg(self) -> UniPoly<T> {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! forward_by_value {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr for UniPoly<T> {
            type Output = UniPoly<T>;
            fn $m(self, rhs: Self) -> UniPoly<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_by_value!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Neg for UniPoly<T> {
    type Output = UniPoly<T>;

    fn neg(self) -> UniPoly<T> {
        -&self
    }
}

impl<T: Scalar + fmt::Display> UniPoly<T> {
    /// Renders with `var` as the indeterminate, highest degree first.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            match i {
                0 => out.push_str(&mag),
                _ => {
                    if mag != "1" {
                        out.push_str(&mag);
                        out.push('*');
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("T"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn ip(c: &[i64]) -> UniPoly<BigInt> {
        UniPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(ip(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(ip(&[0, 0]).is_zero());
        assert_eq!(ip(&[]).degree(), None);
    }

    #[test]
    fn product_of_linears() {
        assert_eq!(&ip(&[-1, 1]) * &ip(&[1, 1]), ip(&[-1, 0, 1]));
    }

    #[test]
    fn power_of_berg_g0() {
        let g0 = ip(&[0, -5, 0, 3]);
        let g6 = g0.pow(6);
        assert_eq!(g6.degree(), Some(18));
        assert!(g6.coeff(0).is_zero());
        assert_eq!(g6.leading_coeff(), Some(&BigInt::from(729)));
    }

    #[test]
    fn derivative_of_berg_edge() {
        let p = ip(&[1, 0, 0, -2, 6, -6, 2]);
        let dp = p.derivative();
        assert_eq!(dp, ip(&[0, 0, -6, 24, -30, 12]));
        // 6 y^2 (y-1)^2 (2y-1)
        let fac = ip(&[0, 0, 6]) * ip(&[-1, 1]).pow(2) * ip(&[-1, 2]);
        assert_eq!(dp, fac);
        assert!(ip(&[7]).derivative().is_zero());
    }

    #[test]
    fn compose_and_eval() {
        let p = ip(&[1, -2, 2]);
        let shifted = p.compose(&ip(&[1, 1]));
        assert_eq!(shifted.eval(&BigInt::from(0)), p.eval(&BigInt::from(1)));
        assert_eq!(ip(&[5, 3]).eval(&BigInt::from(0)), BigInt::from(5));
    }

    #[test]
    fn rational_division() {
        let to_r = |p: UniPoly<BigInt>| p.map(|c| BigRational::from_integer(c.clone()));
        let a = to_r(ip(&[-1, 0, 1]));
        let b = to_r(ip(&[1, 1]));
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, to_r(ip(&[-1, 1])));
        assert!(r.is_zero());
        let g = to_r(ip(&[-1, 0, 1])).gcd_monic(&to_r(ip(&[-2, 1, 1])));
        assert_eq!(g, to_r(ip(&[-1, 1])));
    }

    #[test]
    fn display() {
        assert_eq!(ip(&[1, -2, 2]).to_string(), "2*T^2 - 2*T + 1");
        assert_eq!(ip(&[0, -1]).to_string(), "-T");
        assert_eq!(ip(&[]).to_string(), "0");
    }
}
