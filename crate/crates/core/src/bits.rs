//! Bitsizes, integer logarithms and directed-rounding helpers.
//!
//! Everything here is exact integer arithmetic. Quantities that are
//! irrational (`log2 n`, `b^(p/q)`) come back as a pair of dyadic rationals
//! with 64 fractional bits that bracket the true value.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Fractional bits carried by the dyadic log and root approximations.
pub const FRAC_BITS: u32 = 64;

/// Bitsize of an integer magnitude: `floor(log2 |n|) + 1`, and 1 for zero.
pub fn bitsize(n: &BigInt) -> u64 {
    if n.is_zero() {
        1
    } else {
        n.magnitude().bits()
    }
}

/// `bit(n)` for machine-sized counts, used in the closed-form bounds.
pub fn bit(n: u64) -> u64 {
    if n == 0 {
        1
    } else {
        u64::from(64 - n.leading_zeros())
    }
}

/// `bit(n)` for big counts.
pub fn bit_big(n: &BigUint) -> u64 {
    if n.is_zero() {
        1
    } else {
        n.bits()
    }
}

/// Smallest `e` with `2^e >= n`. Panics on zero.
pub fn ceil_log2(n: &BigUint) -> u64 {
    assert!(!n.is_zero(), "ceil_log2 of zero");
    (n - 1u32).bits()
}

/// Dyadic bracket `lo <= log2 n <= hi` with [`FRAC_BITS`] fractional bits.
/// Exact (`lo == hi`) when `n` is a power of two.
pub fn log2_bracket(n: &BigUint) -> (BigRational, BigRational) {
    assert!(!n.is_zero(), "log2 of zero");
    let e = n.bits() - 1;
    let int_part = BigRational::from_integer(BigInt::from(e));
    if n.count_ones() == 1 {
        return (int_part.clone(), int_part);
    }
    let lo_frac = log2_fraction_bits(n, e, false);
    let hi_frac = log2_fraction_bits(n, e, true) + 1u32;
    let scale = BigInt::one() << FRAC_BITS;
    let lo = &int_part + BigRational::new(BigInt::from(lo_frac), scale.clone());
    let hi = int_part + BigRational::new(BigInt::from(hi_frac), scale);
    (lo, hi)
}

pub fn log2_upper(n: &BigUint) -> BigRational {
    log2_bracket(n).1
}

pub fn log2_lower(n: &BigUint) -> BigRational {
    log2_bracket(n).0
}

// Binary digits of log2(n / 2^e) by repeated squaring in fixed point.
// Rounding every intermediate in one direction keeps the digit string on
// that side of the true digit string.
fn log2_fraction_bits(n: &BigUint, e: u64, round_up: bool) -> BigUint {
    const W: u64 = 2 * FRAC_BITS as u64;
    let one = BigUint::one() << W;
    let two = &one << 1u32;
    let shift_down = |v: BigUint, s: u64| -> BigUint {
        if round_up {
            let (q, r) = v.div_rem(&(BigUint::one() << s));
            if r.is_zero() {
                q
            } else {
                q + 1u32
            }
        } else {
            v >> s
        }
    };
    let mut y = if e <= W { n << (W - e) } else { shift_down(n.clone(), e - W) };
    let mut digits = BigUint::zero();
    for _ in 0..FRAC_BITS {
        y = shift_down(&y * &y, W);
        digits <<= 1u32;
        if y >= two {
            digits += 1u32;
            y = shift_down(y, 1);
        }
    }
    digits
}

/// Smallest dyadic `r = m / 2^FRAC_BITS` with `r^q >= base^p`.
pub fn pow_ratio_upper(base: &BigUint, p: u64, q: u64) -> BigRational {
    assert!(q > 0, "zero root index");
    let q32 = u32::try_from(q).expect("root index too large");
    let p32 = u32::try_from(p).expect("exponent too large");
    let target = num_traits::pow(base.clone(), p32 as usize) << (u64::from(FRAC_BITS) * q);
    let mut root = target.nth_root(q32);
    if num_traits::pow(root.clone(), q32 as usize) < target {
        root += 1u32;
    }
    BigRational::new(BigInt::from(root), BigInt::one() << FRAC_BITS)
}

/// Decimal rendering rounded toward +infinity with `places` digits.
pub fn decimal_ceil(r: &BigRational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = r * BigRational::from_integer(scale);
    format_scaled(&scaled.ceil().to_integer(), places)
}

/// Decimal rendering rounded toward -infinity with `places` digits.
pub fn decimal_floor(r: &BigRational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = r * BigRational::from_integer(scale);
    format_scaled(&scaled.floor().to_integer(), places)
}

fn format_scaled(v: &BigInt, places: usize) -> String {
    let neg = v.is_negative();
    let digits = v.abs().to_string();
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{:0>width$}", digits, width = places + 1);
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{int}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Lossy conversion for display and for the float oracle only.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale both down to keep the quotient representable
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
            n / d
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn bitsize_examples() {
        assert_eq!(bitsize(&big(1)), 1);
        assert_eq!(bitsize(&big(5)), 3);
        assert_eq!(bitsize(&(BigInt::one() << 20)), 21);
        assert_eq!(bitsize(&BigInt::zero()), 1);
        assert_eq!(bitsize(&BigInt::from(-1024)), 11);
        assert_eq!(bit(0), 1);
        assert_eq!(bit(1), 1);
        assert_eq!(bit(6), 3);
        assert_eq!(bit(132), 8);
    }

    #[test]
    fn ceil_log2_examples() {
        let c = |n: u32| ceil_log2(&BigUint::from(n));
        assert_eq!(c(1), 0);
        assert_eq!(c(2), 1);
        assert_eq!(c(3), 2);
        assert_eq!(c(5), 3);
        assert_eq!(c(8), 3);
        assert_eq!(c(9), 4);
    }

    #[test]
    fn log2_bracket_contains_float_value() {
        for n in [3u32, 5, 6, 7, 10, 12345, 1_000_000_007] {
            let (lo, hi) = log2_bracket(&BigUint::from(n));
            let truth = f64::from(n).log2();
            assert!(rat_to_f64(&lo) <= truth + 1e-12, "{n}");
            assert!(rat_to_f64(&hi) >= truth - 1e-12, "{n}");
            let width = &hi - &lo;
            assert!(width <= BigRational::new(BigInt::from(2), BigInt::one() << FRAC_BITS));
        }
    }

    #[test]
    fn log2_bracket_is_sound_exactly() {
        // floor(log2(3) * 2^63), from a 300-bit reference computation
        let (lo, hi) = log2_bracket(&BigUint::from(3u32));
        let known = BigRational::new(
            BigInt::parse_bytes(b"1100101011100000000011010001110011111101111010110100001111001111", 2).unwrap(),
            BigInt::one() << 63,
        );
        let ulp = BigRational::new(BigInt::one(), BigInt::one() << 63);
        assert!(lo < &known + ulp);
        assert!(hi >= known);
    }

    #[test]
    fn powers_of_two_are_exact() {
        let (lo, hi) = log2_bracket(&BigUint::from(1u32));
        assert!(lo.is_zero() && hi.is_zero());
        let (lo, hi) = log2_bracket(&BigUint::from(64u32));
        assert_eq!(lo, BigRational::from_integer(big(6)));
        assert_eq!(hi, lo);
    }

    #[test]
    fn pow_ratio_upper_bounds() {
        let r = pow_ratio_upper(&BigUint::from(2u32), 1, 2);
        // r^2 >= 2 and (r - 2^-64)^2 < 2
        let two = BigRational::from_integer(big(2));
        assert!(&r * &r >= two);
        let ulp = BigRational::new(BigInt::one(), BigInt::one() << FRAC_BITS);
        let below = &r - ulp;
        assert!(&below * &below < two);
        assert_eq!(pow_ratio_upper(&BigUint::from(7u32), 3, 1), BigRational::from_integer(big(343)));
    }

    #[test]
    fn decimal_rounding() {
        let r = BigRational::new(big(1), big(3));
        assert_eq!(decimal_ceil(&r, 6), "0.333334");
        assert_eq!(decimal_floor(&r, 6), "0.333333");
        assert_eq!(decimal_ceil(&BigRational::from_integer(big(9548)), 6), "9548.000000");
        assert_eq!(decimal_floor(&BigRational::new(BigInt::from(-1), big(3)), 2), "-0.34");
        assert_eq!(decimal_ceil(&BigRational::new(big(1), big(200)), 2), "0.01");
    }
}
