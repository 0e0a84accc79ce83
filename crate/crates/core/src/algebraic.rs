//! Real algebraic numbers as (square-free polynomial, isolating interval).
//!
//! Isolation is Descartes-rule bisection; comparison refines until the
//! intervals separate and falls back to a gcd test for equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bits::{decimal_floor, rat_to_f64};
use crate::error::{Error, Result};
use crate::poly::UniPoly;

type IntPoly = UniPoly<BigInt>;
type Rat = BigRational;

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rat::zero())
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        self.intersects(other)
            .then(|| Interval::new(self.lo.clone().max(other.lo.clone()), self.hi.clone().min(other.hi.clone())))
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().cloned().unwrap_or_default();
        let hi = c.iter().max().cloned().unwrap_or_default();
        Interval::new(lo, hi)
    }

    /// Quotient, or `None` when the divisor straddles zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        let inv = Interval::new(o.hi.recip(), o.lo.recip());
        Some(self.mul(&inv))
    }

    /// Horner enclosure of `p` over the interval.
    pub fn eval(p: &IntPoly, x: &Interval) -> Interval {
        p.coeffs()
            .iter()
            .rev()
            .fold(Interval::point(Rat::zero()), |acc, c| acc.mul(x).add(&Interval::point(Rat::from_integer(c.clone()))))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A real root of a square-free integer polynomial, pinned by an interval.
///
/// Either `lo == hi` and the root is that rational, or `lo < hi`, neither
/// endpoint is a root, and the polynomial changes sign across the interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    defpoly: IntPoly,
    interval: Interval,
}

impl AlgebraicNumber {
    /// Trusts the caller that `interval` isolates a root of `defpoly`.
    fn from_parts(defpoly: IntPoly, interval: Interval) -> Self {
        if defpoly.degree() == Some(1) {
            let c = defpoly.coeffs();
            return AlgebraicNumber::rational(Rat::new(-c[0].clone(), c[1].clone()));
        }
        AlgebraicNumber { defpoly, interval }
    }

    pub fn rational(x: Rat) -> Self {
        let defpoly = UniPoly::new(vec![-x.numer().clone(), x.denom().clone()]);
        AlgebraicNumber { defpoly, interval: Interval::point(x) }
    }

    /// Checked constructor: `defpoly` is made square-free, and the interval
    /// must contain exactly one of its roots.
    pub fn new(defpoly: &IntPoly, interval: Interval) -> Result<Self> {
        let sq = defpoly.squarefree_part();
        if sq.is_constant() {
            return Err(Error::NotARoot);
        }
        let roots = isolate_real_roots(&sq, Some((interval.lo.clone(), interval.hi.clone())));
        match roots.len() {
            1 => Ok(roots.into_iter().next().unwrap_or_else(|| unreachable!())),
            0 => Err(Error::NotARoot),
            n => Err(Error::InvalidArgument(format!("interval {interval} holds {n} roots"))),
        }
    }

    pub fn defpoly(&self) -> &IntPoly {
        &self.defpoly
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        (self.interval.lo == self.interval.hi).then_some(&self.interval.lo)
    }

    /// One bisection step; may land exactly on the root.
    pub fn bisect(&self) -> Self {
        if self.as_rational().is_some() {
            return self.clone();
        }
        let mid = self.interval.midpoint();
        let s_mid = self.defpoly.sign_at(&mid);
        if s_mid == Ordering::Equal {
            return AlgebraicNumber::from_parts(self.defpoly.clone(), Interval::point(mid));
        }
        let s_lo = self.defpoly.sign_at(&self.interval.lo);
        let interval = if s_lo == s_mid {
            Interval::new(mid, self.interval.hi.clone())
        } else {
            Interval::new(self.interval.lo.clone(), mid)
        };
        AlgebraicNumber::from_parts(self.defpoly.clone(), interval)
    }

    /// Same root with interval width at most `width` (> 0).
    pub fn refine(&self, width: &Rat) -> Self {
        assert!(width.is_positive(), "refinement width must be positive");
        let mut a = self.clone();
        while a.interval.width() > *width {
            a = a.bisect();
        }
        a
    }

    pub fn to_f64(&self) -> f64 {
        let fine = self.refine(&Rat::new(BigInt::one(), BigInt::one() << 60u32));
        rat_to_f64(&fine.interval.midpoint())
    }

    /// Decimal digits truncated toward -infinity after refining far enough.
    pub fn decimal(&self, places: usize) -> String {
        let ulp = Rat::new(BigInt::one(), num_traits::pow(BigInt::from(10), places + 2));
        let fine = self.refine(&ulp);
        decimal_floor(&fine.interval.lo, places)
    }

    /// Exact comparison with a rational.
    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        if let Some(r) = self.as_rational() {
            return r.cmp(x);
        }
        if x < &self.interval.lo {
            return Ordering::Greater;
        }
        if x > &self.interval.hi {
            return Ordering::Less;
        }
        // lo < x < hi; the root is on the side where the sign differs from p(x)
        match self.defpoly.sign_at(x) {
            Ordering::Equal => Ordering::Equal,
            s if s == self.defpoly.sign_at(&self.interval.lo) => Ordering::Greater,
            _ => Ordering::Less,
        }
    }

    /// Exact comparison of two algebraic numbers.
    pub fn cmp_alg(&self, other: &AlgebraicNumber) -> Ordering {
        if let Some(r) = other.as_rational() {
            return self.cmp_rat(r);
        }
        if let Some(r) = self.as_rational() {
            return other.cmp_rat(r).reverse();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut rounds = 0;
        let mut known_distinct = false;
        loop {
            if a.interval.hi < b.interval.lo {
                return Ordering::Less;
            }
            if b.interval.hi < a.interval.lo {
                return Ordering::Greater;
            }
            if let Some(x) = a.as_rational() {
                return b.cmp_rat(x).reverse();
            }
            if let Some(x) = b.as_rational() {
                return a.cmp_rat(x);
            }
            if rounds >= EQUALITY_ROUNDS && !known_distinct {
                if share_root_in(&a, &b) {
                    return Ordering::Equal;
                }
                known_distinct = true;
            }
            a = a.bisect();
            b = b.bisect();
            rounds += 1;
        }
    }
}

/// Bisection rounds before falling back to the gcd equality test.
const EQUALITY_ROUNDS: usize = 4;

fn share_root_in(a: &AlgebraicNumber, b: &AlgebraicNumber) -> bool {
    let g = a.defpoly.gcd(&b.defpoly);
    if g.is_constant() {
        return false;
    }
    match a.interval.intersection(&b.interval) {
        Some(i) => !isolate_real_roots(&g, Some((i.lo, i.hi))).is_empty(),
        None => false,
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "root of {} in {}", self.defpoly, self.interval),
        }
    }
}

/// A certified real value: rational, or algebraic given by an isolating
/// interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Real {
    Rational(Rat),
    Algebraic(AlgebraicNumber),
}

impl Real {
    pub fn from_algebraic(a: AlgebraicNumber) -> Self {
        match a.as_rational() {
            Some(r) => Real::Rational(r.clone()),
            None => Real::Algebraic(a),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Real::Rational(r) => Some(r),
            Real::Algebraic(_) => None,
        }
    }

    pub fn to_algebraic(&self) -> AlgebraicNumber {
        match self {
            Real::Rational(r) => AlgebraicNumber::rational(r.clone()),
            Real::Algebraic(a) => a.clone(),
        }
    }

    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        match self {
            Real::Rational(r) => r.cmp(x),
            Real::Algebraic(a) => a.cmp_rat(x),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.cmp_rat(&Rat::zero()) == Ordering::Greater
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Rational(r) => rat_to_f64(r),
            Real::Algebraic(a) => a.to_f64(),
        }
    }

    pub fn decimal(&self, places: usize) -> String {
        match self {
            Real::Rational(r) => decimal_floor(r, places),
            Real::Algebraic(a) => a.decimal(places),
        }
    }

    /// Enclosing interval (a point for rationals).
    pub fn enclosure(&self) -> Interval {
        match self {
            Real::Rational(r) => Interval::point(r.clone()),
            Real::Algebraic(a) => a.interval.clone(),
        }
    }
}

/// Exact total order on certified reals.
pub fn compare(a: &Real, b: &Real) -> Ordering {
    match (a, b) {
        (Real::Rational(x), Real::Rational(y)) => x.cmp(y),
        (Real::Algebraic(x), Real::Rational(y)) => x.cmp_rat(y),
        (Real::Rational(x), Real::Algebraic(y)) => y.cmp_rat(x).reverse(),
        (Real::Algebraic(x), Real::Algebraic(y)) => x.cmp_alg(y),
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Rational(r) => write!(f, "{r}"),
            Real::Algebraic(a) => write!(f, "{a}"),
        }
    }
}

/// `p / gcd(p, p')`, primitive with positive leading coefficient.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    p.squarefree_part()
}

/// Classical Cauchy bound `1 + max |c_i| / |lead|`: all real roots lie in
/// the open interval `(-B, B)`.
pub fn cauchy_root_bound(p: &IntPoly) -> Rat {
    let lead = p.leading_coeff().map(|c| c.abs()).unwrap_or_else(BigInt::one);
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    Rat::one() + Rat::new(max, lead)
}

/// Number of sign changes of `p` in the coefficient sequence of
/// `(1+x)^n p((a + b x) / (1 + x))`: Descartes' bound on the roots of `p`
/// in the open interval `(a, b)`.
pub fn descartes_count(p: &IntPoly, a: &Rat, b: &Rat) -> usize {
    let Some(n) = p.degree() else {
        return 0;
    };
    // (a + b x)/(1 + x) = (an bd + bn ad x) / (ad bd (1 + x))
    let num = UniPoly::new(vec![a.numer() * b.denom(), b.numer() * a.denom()]);
    let den = UniPoly::new(vec![a.denom() * b.denom(), a.denom() * b.denom()]);
    let mut num_pows = vec![IntPoly::one()];
    let mut den_pows = vec![IntPoly::one()];
    for i in 1..=n {
        num_pows.push(&num_pows[i - 1] * &num);
        den_pows.push(&den_pows[i - 1] * &den);
    }
    let mut q = IntPoly::zero();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        q = &q + &(&num_pows[i] * &den_pows[n - i]).scale(c);
    }
    sign_variations(q.coeffs())
}

fn sign_variations(cs: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for c in cs {
        let s = match c.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => continue,
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Isolates the distinct real roots of `p`, optionally restricted to the
/// closed interval `range`. Output is sorted and pairwise disjoint; each
/// interval is either a rational point or has a strict sign change of the
/// square-free part across it. The zero polynomial yields no roots.
pub fn isolate_real_roots(p: &IntPoly, range: Option<(Rat, Rat)>) -> Vec<AlgebraicNumber> {
    if p.is_constant() {
        return Vec::new();
    }
    let q = p.squarefree_part();
    let (lo, hi) = match range {
        Some((lo, hi)) => (lo, hi),
        None => {
            let b = cauchy_root_bound(&q);
            (-b.clone(), b)
        }
    };
    if lo > hi {
        return Vec::new();
    }
    let mut out = Vec::new();
    if q.sign_at(&lo) == Ordering::Equal {
        out.push(AlgebraicNumber::rational(lo.clone()));
    }
    if lo == hi {
        return out;
    }
    if q.sign_at(&hi) == Ordering::Equal {
        out.push(AlgebraicNumber::rational(hi.clone()));
    }
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        match descartes_count(&q, &a, &b) {
            0 => {}
            1 => out.push(tighten(&q, a, b)),
            _ => {
                let mid = (&a + &b) / Rat::from_integer(BigInt::from(2));
                if q.sign_at(&mid) == Ordering::Equal {
                    out.push(AlgebraicNumber::rational(mid.clone()));
                }
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    out.sort_by(|x, y| x.interval.lo.cmp(&y.interval.lo));
    out
}

// Exactly one root in the open (a, b); shrink until both endpoints are
// non-roots so the sign-change invariant holds.
fn tighten(q: &IntPoly, mut a: Rat, mut b: Rat) -> AlgebraicNumber {
    while q.sign_at(&a) == Ordering::Equal || q.sign_at(&b) == Ordering::Equal {
        let mid = (&a + &b) / Rat::from_integer(BigInt::from(2));
        if q.sign_at(&mid) == Ordering::Equal {
            return AlgebraicNumber::from_parts(q.clone(), Interval::point(mid));
        }
        if descartes_count(q, &a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    AlgebraicNumber::from_parts(q.clone(), Interval::new(a, b))
}

/// Refines `a` to width at most `width`.
pub fn refine(a: &AlgebraicNumber, width: &Rat) -> AlgebraicNumber {
    a.refine(width)
}

/// Sign of a polynomial, `-1`, `0` or `+1`.
pub type SignValue = i8;

/// Signs of `p, p', p'', ...` at one of its roots (a Thom encoding).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThomSigns(pub Vec<SignValue>);

impl ThomSigns {
    pub fn signs(&self) -> &[SignValue] {
        &self.0
    }
}

fn ordering_sign(o: Ordering) -> SignValue {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Sign of `q` at the algebraic number `a`.
pub fn sign_at(q: &IntPoly, a: &AlgebraicNumber) -> SignValue {
    if q.is_zero() {
        return 0;
    }
    if let Some(r) = a.as_rational() {
        return ordering_sign(q.sign_at(r));
    }
    let g = q.gcd(&a.defpoly);
    if !g.is_constant() {
        let on_g = isolate_real_roots(&g, Some((a.interval.lo.clone(), a.interval.hi.clone())));
        if !on_g.is_empty() {
            return 0;
        }
    }
    // q(a) != 0: refine until q has no root in the interval
    let mut cur = a.clone();
    loop {
        if let Some(r) = cur.as_rational() {
            return ordering_sign(q.sign_at(r));
        }
        let range = Some((cur.interval.lo.clone(), cur.interval.hi.clone()));
        if isolate_real_roots(q, range).is_empty() {
            return ordering_sign(q.sign_at(&cur.interval.lo));
        }
        cur = cur.bisect();
    }
}

/// Thom encoding of `a` with respect to `p`; `a` must be a root of `p`.
pub fn thom_signs_at(p: &IntPoly, a: &AlgebraicNumber) -> Result<ThomSigns> {
    if p.is_zero() || sign_at(p, a) != 0 {
        return Err(Error::NotARoot);
    }
    let deg = p.degree().unwrap_or(0);
    let mut signs = vec![0];
    let mut der = p.clone();
    for _ in 1..=deg {
        der = der.derivative();
        signs.push(sign_at(&der, a));
    }
    Ok(ThomSigns(signs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        UniPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn berg_rur_f_has_four_roots() {
        let f = ip(&[3, 0, -10, 0, 3]);
        let roots = isolate_real_roots(&f, None);
        assert_eq!(roots.len(), 4);
        let approx: Vec<f64> = roots.iter().map(AlgebraicNumber::to_f64).collect();
        let s3 = 3f64.sqrt();
        let expect = [-s3, -1.0 / s3, 1.0 / s3, s3];
        for (a, e) in approx.iter().zip(expect) {
            assert!((a - e).abs() < 1e-12, "{a} vs {e}");
        }
        for w in roots.windows(2) {
            assert!(w[0].interval.hi <= w[1].interval.lo);
        }
    }

    #[test]
    fn rational_root_in_unit_interval() {
        let roots = isolate_real_roots(&ip(&[-1, 2]), Some((r(0, 1), r(1, 1))));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].as_rational(), Some(&r(1, 2)));
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&ip(&[1, 0, 1]), None).is_empty());
        assert!(isolate_real_roots(&ip(&[5]), None).is_empty());
    }

    #[test]
    fn endpoints_and_multiplicities() {
        // T^2 (T - 1)^3 on [0, 1]
        let p = &ip(&[0, 0, 1]) * &ip(&[-1, 1]).pow(3);
        let roots = isolate_real_roots(&p, Some((r(0, 1), r(1, 1))));
        let vals: Vec<_> = roots.iter().map(|a| a.as_rational().cloned()).collect();
        assert_eq!(vals, vec![Some(r(0, 1)), Some(r(1, 1))]);
    }

    #[test]
    fn refine_sqrt3() {
        let a = AlgebraicNumber::new(&ip(&[-3, 0, 1]), Interval::new(r(1, 1), r(2, 1))).unwrap();
        let w = r(1, 1024);
        let fine = a.refine(&w);
        assert!(fine.interval.width() <= w);
        assert!(fine.interval.lo < r(17321, 10000));
        assert!(fine.interval.hi > r(17320, 10000));
        let twice = a.refine(&r(1, 16)).refine(&w);
        assert_eq!(twice, fine);
        let rat = AlgebraicNumber::rational(r(1, 2));
        assert_eq!(rat.refine(&w), rat);
    }

    #[test]
    fn comparisons() {
        assert_eq!(compare(&Real::Rational(r(26, 27)), &Real::Rational(r(31, 32))), Ordering::Less);
        let sqrt2 = AlgebraicNumber::new(&ip(&[-2, 0, 1]), Interval::new(r(1, 1), r(2, 1))).unwrap();
        let other = AlgebraicNumber::new(&ip(&[-4, 0, 2]), Interval::new(r(0, 1), r(3, 1))).unwrap();
        assert_eq!(sqrt2.cmp_alg(&other), Ordering::Equal);
        let sqrt3 = AlgebraicNumber::new(&ip(&[-3, 0, 1]), Interval::new(r(1, 1), r(2, 1))).unwrap();
        assert_eq!(sqrt3.cmp_rat(&r(7, 4)), Ordering::Less);
        assert_eq!(sqrt2.cmp_alg(&sqrt3), Ordering::Less);
        assert_eq!(sqrt3.cmp_alg(&sqrt2), Ordering::Greater);
    }

    #[test]
    fn equal_roots_with_different_polynomials() {
        // sqrt 2 as a root of T^2 - 2 and of (T^2 - 2)(T - 5)
        let a = AlgebraicNumber::new(&ip(&[-2, 0, 1]), Interval::new(r(1, 1), r(3, 2))).unwrap();
        let p = &ip(&[-2, 0, 1]) * &ip(&[-5, 1]);
        let b = AlgebraicNumber::new(&p, Interval::new(r(13, 10), r(2, 1))).unwrap();
        assert_eq!(a.cmp_alg(&b), Ordering::Equal);
    }

    #[test]
    fn thom_encodings() {
        let sqrt2 = AlgebraicNumber::new(&ip(&[-2, 0, 1]), Interval::new(r(1, 1), r(2, 1))).unwrap();
        assert_eq!(thom_signs_at(&ip(&[-2, 0, 1]), &sqrt2).unwrap().0, vec![0, 1, 1]);
        let half = AlgebraicNumber::rational(r(1, 2));
        assert_eq!(thom_signs_at(&ip(&[1, -2]), &half).unwrap().0, vec![0, -1]);
        assert_eq!(thom_signs_at(&ip(&[-3, 0, 1]), &sqrt2), Err(Error::NotARoot));
    }

    #[test]
    fn thom_separates_berg_roots() {
        let f = ip(&[3, 0, -10, 0, 3]);
        let roots = isolate_real_roots(&f, None);
        let codes: Vec<_> = roots.iter().map(|a| thom_signs_at(&f, a).unwrap()).collect();
        for i in 0..codes.len() {
            for j in i + 1..codes.len() {
                assert_ne!(codes[i], codes[j]);
            }
        }
        // sqrt 3 vs 1/sqrt 3 differ in the sign of F'
        assert_eq!(codes[3].0[1], 1);
        assert_eq!(codes[2].0[1], -1);
    }

    #[test]
    fn interval_arithmetic() {
        let x = Interval::new(r(-1, 1), r(2, 1));
        let y = Interval::new(r(3, 1), r(4, 1));
        assert_eq!(x.mul(&y), Interval::new(r(-4, 1), r(8, 1)));
        assert!(y.div(&x).is_none());
        assert_eq!(x.div(&y).unwrap(), Interval::new(r(-1, 3), r(2, 3)));
        let sq = Interval::eval(&ip(&[0, 0, 1]), &Interval::new(r(1, 2), r(1, 1)));
        assert_eq!(sq, Interval::new(r(1, 4), r(1, 1)));
    }
}
