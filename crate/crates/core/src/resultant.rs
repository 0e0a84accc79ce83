//! Sylvester matrices and resultants with one linear parameter `Z`.
//!
//! The parametric first argument is always of the form `A(T) - Z * B(T)`
//! ([`ZLinear`]). That covers both `P - Z` against `P'` and
//! `P_u - g0^d Z` against `F`.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{det_fraction_free, hadamard_bound, Matrix};
use crate::poly::UniPoly;

type IntPoly = UniPoly<BigInt>;

/// `base(T) - Z * slope(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZLinear {
    pub base: IntPoly,
    pub slope: IntPoly,
}

impl ZLinear {
    pub fn new(base: IntPoly, slope: IntPoly) -> Self {
        ZLinear { base, slope }
    }

    /// `p - Z`.
    pub fn shifted(p: IntPoly) -> Self {
        ZLinear { base: p, slope: UniPoly::one() }
    }

    /// Degree in `T` with `Z` treated formally; `None` when both parts vanish.
    pub fn formal_degree(&self) -> Option<usize> {
        match (self.base.degree(), self.slope.degree()) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(0).max(b.unwrap_or(0))),
        }
    }

    /// Coefficient of `T^i` as an affine polynomial in `Z`.
    pub fn coeff(&self, i: usize) -> IntPoly {
        UniPoly::new(vec![self.base.coeff(i), -self.slope.coeff(i)])
    }

    pub fn at(&self, z: &BigInt) -> IntPoly {
        &self.base - &self.slope.scale(z)
    }
}

/// Sylvester matrix of `f = A - Z B` (formal degree `n`) and `g` (degree `m`).
///
/// The first `m` rows are shifted copies of `f`'s coefficients, the last `n`
/// rows shifted copies of `g`'s, leading coefficients first. Every entry is
/// affine in `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterMatrix {
    entries: Matrix<IntPoly>,
    f_rows: usize,
    g_rows: usize,
}

impl SylvesterMatrix {
    pub fn new(f: &ZLinear, g: &IntPoly) -> Result<Self> {
        let n = f.formal_degree().ok_or_else(|| Error::InvalidArgument("first Sylvester input is zero".into()))?;
        let m = g.degree().ok_or_else(|| Error::InvalidArgument("second Sylvester input is zero".into()))?;
        if n == 0 && m == 0 {
            return Err(Error::ConstantSylvesterInputs);
        }
        let dim = n + m;
        let mut entries = vec![vec![IntPoly::zero(); dim]; dim];
        for (i, row) in entries.iter_mut().take(m).enumerate() {
            for j in 0..=n {
                row[i + j] = f.coeff(n - j);
            }
        }
        for (i, row) in entries.iter_mut().skip(m).enumerate() {
            for j in 0..=m {
                row[i + j] = IntPoly::constant(g.coeff(m - j));
            }
        }
        Ok(SylvesterMatrix { entries, f_rows: m, g_rows: n })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Number of rows carrying `Z` (equals `deg g`).
    pub fn parametric_rows(&self) -> usize {
        self.f_rows
    }

    pub fn constant_rows(&self) -> usize {
        self.g_rows
    }

    /// Entries as polynomials in `Z`.
    pub fn symbolic(&self) -> &Matrix<IntPoly> {
        &self.entries
    }

    pub fn at(&self, z: &BigInt) -> Matrix<BigInt> {
        self.entries.iter().map(|row| row.iter().map(|e| e.eval(z)).collect()).collect()
    }
}

/// Resultant polynomial `R(Z) = sum r_i Z^i`, never identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamResultant {
    poly: IntPoly,
}

impl ParamResultant {
    pub fn new(poly: IntPoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::DegenerateResultant);
        }
        Ok(ParamResultant { poly })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.poly.coeffs()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Index `q` of the lowest nonzero coefficient.
    pub fn trailing_index(&self) -> usize {
        self.poly.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Index `p` of the highest nonzero coefficient.
    pub fn leading_index(&self) -> usize {
        self.degree()
    }

    /// `1 / sum |r_i|`. Every nonzero real root `z` satisfies `|z| >=` this
    /// value, because the lowest nonzero coefficient has magnitude at least 1.
    pub fn nonzero_root_lower_bound(&self) -> BigRational {
        let s: BigInt = self.poly.coeffs().iter().map(|c| c.abs()).sum();
        BigRational::new(BigInt::one(), s)
    }
}

/// `Res_T(A - Z B, g)` by evaluation at `Z = 0, 1, ..., deg g` and exact
/// interpolation.
pub fn resultant_in_z(f: &ZLinear, g: &IntPoly) -> Result<ParamResultant> {
    let syl = SylvesterMatrix::new(f, g)?;
    let nodes: Vec<BigInt> = (0..=syl.parametric_rows()).map(BigInt::from).collect();
    let values = nodes.par_iter().map(|z| det_fraction_free(&syl.at(z))).collect::<Result<Vec<_>>>()?;
    ParamResultant::new(interpolate_integer(&nodes, &values)?)
}

/// Plain resultant of two integer polynomials.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    let syl = SylvesterMatrix::new(&ZLinear::new(f.clone(), IntPoly::zero()), g)?;
    det_fraction_free(&syl.at(&BigInt::zero()))
}

// Newton divided differences over Q, then expansion to the monomial basis.
fn interpolate_integer(nodes: &[BigInt], values: &[BigInt]) -> Result<IntPoly> {
    let xs: Vec<BigRational> = nodes.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let mut dd: Vec<BigRational> = values.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let n = dd.len();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut poly = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let factor = UniPoly::new(vec![-xs[i].clone(), BigRational::one()]);
        poly = &(&poly * &factor) + &UniPoly::constant(dd[i].clone());
    }
    let mut out = Vec::with_capacity(poly.coeffs().len());
    for c in poly.coeffs() {
        if !c.is_integer() {
            return Err(Error::NonIntegralInterpolation(c.to_string()));
        }
        out.push(c.to_integer());
    }
    Ok(UniPoly::new(out))
}

/// Hadamard-based magnitude bound for each coefficient `r_i` of
/// `Res_T(A - Z B, g)`.
///
/// Multilinearity in the `deg g` parametric rows splits `r_i` into
/// `C(deg g, i)` determinants with `i` rows from `B`, the rest from `A`, plus
/// all rows of `g`; each is bounded by the product of its row norms.
pub fn coefficient_bounds(f: &ZLinear, g: &IntPoly) -> Result<Vec<BigUint>> {
    let syl = SylvesterMatrix::new(f, g)?;
    let m = syl.parametric_rows();
    let n = syl.constant_rows();
    let a_row = f.base.coeffs().to_vec();
    let b_row = f.slope.coeffs().to_vec();
    let g_row = g.coeffs().to_vec();
    Ok((0..=m)
        .map(|i| {
            let mut rows = Vec::with_capacity(m + n);
            rows.extend(std::iter::repeat_n(b_row.clone(), i));
            rows.extend(std::iter::repeat_n(a_row.clone(), m - i));
            rows.extend(std::iter::repeat_n(g_row.clone(), n));
            let count = binomial(BigUint::from(m), BigUint::from(i));
            count * hadamard_bound(&rows)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::det_naive;

    fn ip(c: &[i64]) -> IntPoly {
        UniPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn linear_pair_matrix() {
        let syl = SylvesterMatrix::new(&ZLinear::new(ip(&[-1, 1]), IntPoly::zero()), &ip(&[1, 1])).unwrap();
        let m = syl.at(&BigInt::zero());
        let expect: Matrix<BigInt> =
            vec![vec![BigInt::from(1), BigInt::from(-1)], vec![BigInt::from(1), BigInt::from(1)]];
        assert_eq!(m, expect);
    }

    #[test]
    fn quadratic_against_derivative() {
        let p = ip(&[1, -2, 2]);
        let f = ZLinear::shifted(p.clone());
        let syl = SylvesterMatrix::new(&f, &p.derivative()).unwrap();
        assert_eq!(syl.dim(), 3);
        assert_eq!(syl.parametric_rows(), 1);
        // naive construction: [2, -2, 1 - Z], [4, -2, 0], [0, 4, -2]
        let s = syl.symbolic();
        assert_eq!(s[0], vec![ip(&[2]), ip(&[-2]), ip(&[1, -1])]);
        assert_eq!(s[1], vec![ip(&[4]), ip(&[-2]), ip(&[])]);
        assert_eq!(s[2], vec![ip(&[]), ip(&[4]), ip(&[-2])]);
        let r = resultant_in_z(&f, &p.derivative()).unwrap();
        assert_eq!(r.poly(), &ip(&[8, -16]));
        assert_eq!(det_naive(s).unwrap(), ip(&[8, -16]));
        assert_eq!(r.nonzero_root_lower_bound(), BigRational::new(1.into(), 24.into()));
    }

    #[test]
    fn zero_slope_gives_constant() {
        let f = ZLinear::new(ip(&[-1, 1]), IntPoly::zero());
        let r = resultant_in_z(&f, &ip(&[1, 1])).unwrap();
        assert_eq!(r.poly(), &ip(&[2]));
        assert_eq!(resultant(&ip(&[-1, 1]), &ip(&[1, 1])), Ok(BigInt::from(2)));
    }

    #[test]
    fn degenerate_and_constant_inputs() {
        // P - Z against a g sharing no Z-free structure but P' = 0 is rejected
        let f = ZLinear::new(ip(&[0, 1]), ip(&[0, 1]));
        // (T - Z T) = T (1 - Z) shares the root 0 with g = T for every Z
        assert_eq!(resultant_in_z(&f, &ip(&[0, 1])), Err(Error::DegenerateResultant));
        let c = ZLinear::new(ip(&[3]), IntPoly::zero());
        assert_eq!(SylvesterMatrix::new(&c, &ip(&[2])), Err(Error::ConstantSylvesterInputs));
    }

    #[test]
    fn root_bound_of_pure_power() {
        let r = ParamResultant::new(ip(&[0, 1])).unwrap();
        assert_eq!(r.nonzero_root_lower_bound(), BigRational::one());
        assert_eq!(r.trailing_index(), 1);
        assert_eq!(r.leading_index(), 1);
        assert_eq!(ParamResultant::new(IntPoly::zero()), Err(Error::DegenerateResultant));
    }

    #[test]
    fn coefficient_bounds_dominate() {
        let p = ip(&[3, -7, 0, 5, 2]);
        let f = ZLinear::shifted(p.clone());
        let r = resultant_in_z(&f, &p.derivative()).unwrap();
        let bounds = coefficient_bounds(&f, &p.derivative()).unwrap();
        for (i, b) in bounds.iter().enumerate() {
            assert!(r.poly().coeff(i).magnitude() <= b);
        }
    }
}
