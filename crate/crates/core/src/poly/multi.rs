use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::FromPrimitive;

use super::UniPoly;
use crate::scalar::Scalar;

/// Exponent vector ordered graded-lexicographically: total degree first,
/// ties broken by comparing exponents from the first variable on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial in `nvars` variables.
///
/// Zero coefficients are never stored. Terms iterate in ascending graded-lex
/// order; [`MultiPoly::terms_desc`] gives the canonical printing order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly<T> {
    nvars: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> MultiPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c)])
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, T::one())])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, T)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &[u32]) -> T {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(T::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    /// Constant term.
    pub fn constant_term(&self) -> T {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn eval(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        // per-variable power tables avoid recomputing x_i^e for every term
        let maxdeg = self.total_degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<T>> = point
            .iter()
            .map(|x| {
                let mut row = Vec::with_capacity(maxdeg + 1);
                row.push(T::one());
                for e in 1..=maxdeg {
                    let prev: T = row[e - 1].clone();
                    row.push(prev * x.clone());
                }
                row
            })
            .collect();
        self.terms.iter().fold(T::zero(), |acc, (m, c)| {
            let term = m.0.iter().enumerate().fold(c.clone(), |t, (i, &e)| t * powers[i][e as usize].clone());
            acc + term
        })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MultiPoly<U> {
        MultiPoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.0.clone(), f(c))))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.nvars, T::one());
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

    /// Replaces variable `i` by `images[i]`; all images share one ring.
    pub fn substitute(&self, images: &[MultiPoly<T>]) -> MultiPoly<T> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, |p| p.nvars);
        assert!(images.iter().all(|p| p.nvars == target), "images live in different rings");
        let maxdeg = self.total_degree().unwrap_or(0);
        let powers: Vec<Vec<MultiPoly<T>>> = images
            .iter()
            .map(|img| {
                let mut row = vec![MultiPoly::constant(target, T::one())];
                for e in 1..=maxdeg as usize {
                    let next = &row[e - 1] * img;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Univariate view; requires at most one variable.
    pub fn to_uni(&self) -> Option<UniPoly<T>> {
        match self.nvars {
            0 => Some(UniPoly::constant(self.constant_term())),
            1 => {
                let deg = self.total_degree().unwrap_or(0) as usize;
                let mut coeffs = vec![T::zero(); deg + 1];
                for (m, c) in &self.terms {
                    coeffs[m.0[0] as usize] = c.clone();
                }
                Some(UniPoly::new(coeffs))
            }
            _ => None,
        }
    }

    pub fn from_uni(p: &UniPoly<T>) -> Self {
        Self::from_terms(1, p.coeffs().iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())))
    }
}

impl<T: Scalar + FromPrimitive> MultiPoly<T> {
    /// Formal partial derivative with respect to variable `i` (0-based).
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index out of range");
        Self::from_terms(
            self.nvars,
            self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
                let mut e = m.0.clone();
                let k = e[i];
                e[i] -= 1;
                (e, c.clone() * T::from_u32(k).expect("exponent fits the scalar"))
            }),
        )
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }
}

impl<T: Scalar> Add for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn add(self, rhs: Self) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn sub(self, rhs: Self) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn mul(self, rhs: Self) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(ma.mul(mb), a.clone() * b.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn neg(self) -> MultiPoly<T> {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = MultiPoly<BigInt>;

    fn t(e: &[u32], c: i64) -> (Vec<u32>, BigInt) {
        (e.to_vec(), BigInt::from(c))
    }

    fn berg() -> P {
        P::from_terms(2, [t(&[4, 2], 1), t(&[2, 4], 1), t(&[2, 2], -1), t(&[0, 0], 1)])
    }

    #[test]
    fn graded_lex_order() {
        let mut ms = [
            Monomial::new(vec![0, 2]),
            Monomial::new(vec![1, 0]),
            Monomial::new(vec![2, 0]),
            Monomial::new(vec![1, 1]),
        ];
        ms.sort();
        let e: Vec<_> = ms.iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(e, vec![vec![1, 0], vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn zero_terms_cancel() {
        let p = P::from_terms(2, [t(&[1, 0], 3), t(&[1, 0], -3)]);
        assert!(p.is_zero());
        assert_eq!(p.total_degree(), None);
    }

    #[test]
    fn berg_partial_x() {
        let expected = P::from_terms(2, [t(&[3, 2], 4), t(&[1, 4], 2), t(&[1, 2], -2)]);
        assert_eq!(berg().partial(0), expected);
        assert_eq!(berg().total_degree(), Some(6));
    }

    #[test]
    fn product_and_power() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let s = &x + &y;
        let sq = s.pow(2);
        assert_eq!(sq, P::from_terms(2, [t(&[2, 0], 1), t(&[1, 1], 2), t(&[0, 2], 1)]));
        assert_eq!(&sq - &sq, P::zero(2));
    }

    #[test]
    fn substitute_into_edge() {
        // x <- 1 - y, y <- y gives the Berg edge polynomial
        let one_minus_y = P::from_terms(1, [t(&[0], 1), t(&[1], -1)]);
        let y = P::var(1, 0);
        let edge = berg().substitute(&[one_minus_y, y]).to_uni().unwrap();
        let expected: Vec<BigInt> = [1, 0, 0, -2, 6, -6, 2].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(edge.coeffs(), &expected[..]);
    }

    #[test]
    fn eval_at_origin_is_constant_term() {
        let z = vec![BigInt::from(0); 2];
        assert_eq!(berg().eval(&z), BigInt::from(1));
    }
}
