//! Closed-form lower bounds on the minimum of a polynomial positive on the
//! simplex, and the size estimates they are built from.
//!
//! A certified bound is a dyadic `2^-L` with `L` computed in integer
//! arithmetic; every rounding weakens the bound. The accompanying
//! `log2_inverse_upper` is a display value with 64 fractional bits.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebraic::Real;
use crate::bits::{bit, bit_big, ceil_log2, log2_lower, log2_upper, pow_ratio_upper, FRAC_BITS};
use crate::error::{Error, Result};
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Univariate polynomial positive on `[0, 1]`.
    Univariate,
    /// Explicit RUR and `P_u` size bounds.
    FromSizes,
    /// The size chain in terms of `(k, d, tau)`.
    Simplex,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Univariate => "univariate",
            Provenance::FromSizes => "from-sizes",
            Provenance::Simplex => "simplex",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A certified lower bound `m > 2^-l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub l: BigUint,
    /// Upper estimate of `log2` of the inverse of the closed form.
    pub log2_inverse_upper: Rat,
    pub provenance: Provenance,
    /// A rational minorant of the closed form, when one is cheap.
    pub conservative: Option<Rat>,
}

impl BoundValue {
    /// `2^-l` as an exact rational. Only sensible for modest `l`.
    pub fn dyadic(&self) -> Rat {
        let l = self.l.to_u64().expect("bound exponent too large to materialise");
        Rat::new(BigInt::one(), BigInt::one() << l)
    }

    /// Whether `value > 2^-l`, decided exactly.
    pub fn is_below(&self, value: &Real) -> bool {
        match value {
            Real::Rational(x) => rat_exceeds_dyadic(x, &self.l),
            Real::Algebraic(a) => {
                if a.cmp_rat(&Rat::zero()) != Ordering::Greater {
                    return false;
                }
                let mut a = a.clone();
                while !a.interval().lo.is_positive() {
                    a = a.bisect();
                }
                if let Some(x) = a.as_rational() {
                    return rat_exceeds_dyadic(x, &self.l);
                }
                rat_exceeds_dyadic(&a.interval().lo, &self.l) || a.cmp_rat(&self.dyadic()) == Ordering::Greater
            }
        }
    }
}

// x > 2^-l. For x = p/q > 0 with bit(q) <= l: x >= 1/q > 2^-bit(q) >= 2^-l.
fn rat_exceeds_dyadic(x: &Rat, l: &BigUint) -> bool {
    if !x.is_positive() {
        return false;
    }
    if BigUint::from(x.denom().bits()) <= *l {
        return true;
    }
    let l = l.to_u64().expect("bound exponent out of range");
    x > &Rat::new(BigInt::one(), BigInt::one() << l)
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn rat(n: &BigUint) -> Rat {
    Rat::from_integer(BigInt::from(n.clone()))
}

fn half(n: &BigUint) -> Rat {
    rat(n) / Rat::from_integer(BigInt::from(2))
}

/// `m > 3^(d/2) / (2^((2d-1) tau) (d+1)^(2d - 1/2))` for `P` of degree `d`
/// and bitsize `tau` positive on `[0, 1]`.
///
/// `l = (2d-1) tau + e` with `e` least such that `4^e 3^d >= (d+1)^(4d-1)`.
pub fn univariate_bound(d: u64, tau: u64) -> Result<BoundValue> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree 0: the minimum is an integer".into()));
    }
    if tau == 0 {
        return Err(Error::InvalidArgument("bitsize must be at least 1".into()));
    }
    let d32 = u32::try_from(d).map_err(|_| Error::InvalidArgument("degree too large".into()))?;
    let lhs = num_traits::pow(big(3), d32 as usize);
    let rhs = num_traits::pow(big(d + 1), (4 * d32 - 1) as usize);
    // smallest e with 4^e * lhs >= rhs
    let mut e = rhs.bits().saturating_sub(lhs.bits()) / 2;
    while e > 0 && (lhs.clone() << (2 * (e - 1))) >= rhs {
        e -= 1;
    }
    while (lhs.clone() << (2 * e)) < rhs {
        e += 1;
    }
    let l = big((2 * d - 1) * tau + e);

    let two_d_minus_half = Rat::new(BigInt::from(4 * d - 1), BigInt::from(2));
    let log2_inverse_upper = Rat::from_integer(BigInt::from((2 * d - 1) * tau))
        + two_d_minus_half * log2_upper(&big(d + 1))
        - Rat::new(BigInt::from(d), BigInt::from(2)) * log2_lower(&big(3));

    let num = num_traits::pow(BigInt::from(3), (d32 / 2) as usize);
    let den = (BigInt::one() << ((2 * d - 1) * tau)) * num_traits::pow(BigInt::from(d + 1), 2 * d32 as usize);
    Ok(BoundValue { l, log2_inverse_upper, provenance: Provenance::Univariate, conservative: Some(Rat::new(num, den)) })
}

/// Degree and bitsize bounds on the output of bounded algebraic sampling
/// for a polynomial `Q` in `k` variables of degree `d_q` and bitsize `tau_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingSizeBounds {
    /// `(d_Q + 2)(d_Q + 1)^(k-1)`.
    pub degree: BigUint,
    pub bitsize: BigUint,
    pub tau_prime: u64,
    pub mu: u64,
}

pub fn sampling_size_bounds(k: u64, d_q: u64, tau_q: u64) -> SamplingSizeBounds {
    assert!(k >= 1, "k must be at least 1");
    let degree = big(d_q + 2) * num_traits::pow(big(d_q + 1), (k - 1) as usize);
    let mu = bit_big(&degree);
    let tau_prime = tau_q.max(bit(2 * k)) + 2 * bit(k * (d_q + 2)) + 1;
    let bitsize = &degree * big(k * d_q + 2) * big(tau_prime + 2 * bit(k * d_q + 3) + 3 * mu + bit(k));
    SamplingSizeBounds { degree, bitsize, tau_prime, mu }
}

/// Degree `d_u` and bitsize `tau_u` bounds on a RUR of the critical set of a
/// face restriction, with the auxiliary `tau'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RurSizeBounds {
    pub d_u: BigUint,
    pub tau_u: BigUint,
    pub tau_prime: BigUint,
}

pub fn rur_size_bounds(k: u64, d: u64, tau: u64) -> RurSizeBounds {
    assert!(k >= 1 && d >= 1, "k and d must be at least 1");
    let d_u = big(2 * d) * num_traits::pow(big(2 * d - 1), (k - 1) as usize);
    let tau_prime = big(2 * tau + (2 * d + 2) * bit(k) + (k + 3) * bit(d) + 5);
    let bracket = &tau_prime + big(2 * bit(2 * k * d - 2 * k + 3) + 3 * bit_big(&d_u) + bit(k));
    let tau_u = &d_u * big(2 * k * d - 2 * k + 2) * bracket;
    RurSizeBounds { d_u, tau_u, tau_prime }
}

/// Degree and bitsize bounds on `P_u` (and on `g_0^d`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuSizeBounds {
    pub d_pu: BigUint,
    pub tau_pu: BigUint,
}

pub fn pu_size_bounds(d: u64, sizes: &RurSizeBounds, tau: u64, k: u64) -> PuSizeBounds {
    let d_pu = &sizes.d_u * big(d);
    let g0d = g0_power_bitsize(d, sizes);
    let tau_pu = g0d + big(tau + d * bit(k) + d + k + 1);
    PuSizeBounds { d_pu, tau_pu }
}

/// Bitsize bound `d (tau_u + bit(d_u + 1))` on the coefficients of `g_0^d`.
pub fn g0_power_bitsize(d: u64, sizes: &RurSizeBounds) -> BigUint {
    big(d) * (&sizes.tau_u + big(bit_big(&(&sizes.d_u + 1u32))))
}

/// `m > 1 / ([2^(tau_pu+1) sqrt(d_pu+1)]^d_u [2^tau_u sqrt(d_u+1)]^d_pu)`.
pub fn minimum_bound_from_sizes(sizes: &RurSizeBounds, pu: &PuSizeBounds, d: u64) -> Result<BoundValue> {
    let two = big(2);
    if !(&sizes.d_u % &two).is_zero() || !(&pu.d_pu % &two).is_zero() {
        return Err(Error::Internal(format!(
            "degree bounds must be even, got d_u = {} and d_pu = {}",
            sizes.d_u, pu.d_pu
        )));
    }
    if pu.d_pu > &sizes.d_u * big(d) {
        return Err(Error::InvalidArgument("d_pu exceeds d * d_u".into()));
    }
    let (d_u, tau_u, d_pu, tau_pu) = (&sizes.d_u, &sizes.tau_u, &pu.d_pu, &pu.tau_pu);
    let l = d_u * (tau_pu + 1u32)
        + (d_u / &two) * big(ceil_log2(&(d_pu + 1u32)))
        + d_pu * tau_u
        + (d_pu / &two) * big(ceil_log2(&(d_u + 1u32)));
    let log2_inverse_upper = rat(&(d_u * (tau_pu + 1u32)))
        + half(d_u) * log2_upper(&(d_pu + 1u32))
        + rat(&(d_pu * tau_u))
        + half(d_pu) * log2_upper(&(d_u + 1u32));
    Ok(BoundValue { l, log2_inverse_upper, provenance: Provenance::FromSizes, conservative: None })
}

/// The size chain `(D, rho, rho')` and the resulting bound `m_{k,d,tau}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexBound {
    pub rur: RurSizeBounds,
    pub pu: PuSizeBounds,
    pub bound: BoundValue,
}

pub fn simplex_bound_chain(k: u64, d: u64, tau: u64) -> Result<SimplexBound> {
    if k == 0 || d == 0 || tau == 0 {
        return Err(Error::InvalidArgument("k, d and tau must all be at least 1".into()));
    }
    let rur = rur_size_bounds(k, d, tau);
    let pu = pu_size_bounds(d, &rur, tau, k);
    let mut bound = minimum_bound_from_sizes(&rur, &pu, d)?;
    bound.provenance = Provenance::Simplex;
    Ok(SimplexBound { rur, pu, bound })
}

/// `m > 2^-L` for every `P` in `k` variables of degree `d` and bitsize
/// `tau` that is positive on the simplex.
pub fn simplex_min_bound(k: u64, d: u64, tau: u64) -> Result<BoundValue> {
    Ok(simplex_bound_chain(k, d, tau)?.bound)
}

fn pow_u(b: u64, e: u64) -> BigUint {
    num_traits::pow(big(b), e as usize)
}

/// `log2` of the compact form
/// `(2^tau)^(2^(k+3) d^(k+1) k) 2^(2^(k+6) d^(k+2) k^2) k^(2^(k+5) d^(k+2) k) d^(2^(k+5) d^(k+1) k^2)`,
/// logs rounded up.
pub fn compact_bound(k: u64, d: u64, tau: u64) -> Rat {
    let t1 = pow_u(2, k + 3) * pow_u(d, k + 1) * big(k) * big(tau);
    let t2 = pow_u(2, k + 6) * pow_u(d, k + 2) * big(k * k);
    let t3 = pow_u(2, k + 5) * pow_u(d, k + 2) * big(k);
    let t4 = pow_u(2, k + 5) * pow_u(d, k + 1) * big(k * k);
    rat(&(t1 + t2)) + rat(&t3) * log2_upper(&big(k)) + rat(&t4) * log2_upper(&big(d))
}

/// The three estimates the compact form is derived from, plus dominance
/// of the exact exponent by the compact one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactChain {
    pub d_plus_one: bool,
    pub rho: bool,
    pub rho_prime: bool,
    pub dominance: bool,
}

impl CompactChain {
    pub fn all(&self) -> bool {
        self.d_plus_one && self.rho && self.rho_prime && self.dominance
    }
}

pub fn compact_chain(k: u64, d: u64, tau: u64) -> Result<CompactChain> {
    let chain = simplex_bound_chain(k, d, tau)?;
    let rhs = big(2 * tau + (2 * d + 5) * bit(k) + (4 * k + 5) * bit(d) + 6 * k + 9);
    let d_plus_one = chain.rur.d_u < pow_u(2, k) * pow_u(d, k);
    let rho = chain.rur.tau_u <= pow_u(2, k + 1) * pow_u(d, k + 1) * big(k) * &rhs;
    let rho_prime = chain.pu.tau_pu <= pow_u(2, k + 1) * pow_u(d, k + 2) * big(k) * &rhs;
    let dominance = rat(&chain.bound.l) <= compact_bound(k, d, tau);
    Ok(CompactChain { d_plus_one, rho, rho_prime, dominance })
}

/// `log2` of `(2^tau)^(B^(c(k+1))) 2^(B^(c(k+1)))` with `B = max(d+1, k+1)`,
/// the power rounded up to 64 fractional bits.
pub fn loera_santos_bound(k: u64, d: u64, tau: u64, c: &Rat) -> Result<Rat> {
    if !c.is_positive() {
        return Err(Error::InvalidArgument("c must be positive".into()));
    }
    let b = big((d + 1).max(k + 1));
    let p = c.numer().to_u64().and_then(|p| p.checked_mul(k + 1));
    let q = c.denom().to_u64();
    let (Some(p), Some(q)) = (p, q) else {
        return Err(Error::InvalidArgument(format!("c = {c} is too large")));
    };
    if p > 4096 || q > 4096 {
        return Err(Error::InvalidArgument(format!("c = {c} is too large")));
    }
    Ok(Rat::from_integer(BigInt::from(tau + 1)) * pow_ratio_upper(&b, p, q))
}

/// `log2` of `(6 d k^d 2^d 2^tau)^((k+1) d^(k+1))`, logs rounded up.
pub fn canny_bound(k: u64, d: u64, tau: u64) -> Rat {
    let e = rat(&(big(k + 1) * pow_u(d, k + 1)));
    let inner = log2_upper(&big(6))
        + log2_upper(&big(d))
        + Rat::from_integer(BigInt::from(d)) * log2_upper(&big(k))
        + Rat::from_integer(BigInt::from(d + tau));
    e * inner
}

/// Rational lower bound on
/// `3^(-d/2) [2^tau sqrt((d+1)^3)]^d C(d-1, i) [2^tau sqrt(d+1) - 1]^(d-1-i)`,
/// the bound on the `i`-th coefficient of `Res_T(P - Z, P')`.
pub fn univariate_coefficient_bound(d: u64, tau: u64, i: u64) -> Rat {
    assert!(d >= 1 && i < d, "coefficient index out of range");
    let inv_sqrt3 = Rat::one() / pow_ratio_upper(&big(3), d, 2);
    let head = Rat::from_integer(BigInt::one() << (tau * d)) * root_lower(&pow_u(d + 1, 3 * d), 2);
    let choose = Rat::from_integer(BigInt::from(binomial(d - 1, i)));
    let base = Rat::from_integer(BigInt::one() << tau) * root_lower(&big(d + 1), 2) - Rat::one();
    let tail = num_traits::pow(base, (d - 1 - i) as usize);
    inv_sqrt3 * head * choose * tail
}

// Largest dyadic r = m / 2^FRAC_BITS with r^q <= n.
fn root_lower(n: &BigUint, q: u32) -> Rat {
    let scaled = n << (u64::from(FRAC_BITS) * u64::from(q));
    Rat::new(BigInt::from(scaled.nth_root(q)), BigInt::one() << FRAC_BITS)
}
