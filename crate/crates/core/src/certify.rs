//! Exact minima: univariate on `[0, 1]`, and over the simplex face by face.
//!
//! Vertices are evaluated, edges go through the univariate pipeline, and
//! faces of dimension two or more need a rational univariate representation
//! of their critical set. The minimum over a face is a root of
//! `Res_T(P_u - g0^d Z, F)`; each candidate value is identified as one of
//! the isolated roots of that resultant.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebraic::{compare, isolate_real_roots, thom_signs_at, AlgebraicNumber, Interval, Real, ThomSigns};
use crate::bounds::{simplex_min_bound, univariate_bound, BoundValue};
use crate::error::{Error, Result};
use crate::face::{enumerate_faces, restrict_to_face, RestrictedPoly, SimplexFace};
use crate::resultant::{resultant_in_z, ParamResultant, ZLinear};
use crate::{IntMultiPoly, IntPoly, Rat};

/// Bisections spent identifying a value among the resultant roots.
pub const IDENTIFY_BUDGET: usize = 4096;
/// Finest witness enclosure tried before a candidate is kept unfiltered.
pub const FILTER_WIDTH_BITS: u32 = 64;

/// Which real roots of `F` a RUR designates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    All,
    Interval(Interval),
    Thom(ThomSigns),
}

/// `(F, g0, g1, ..., gs, selector)`: points `(g1(t)/g0(t), ..., gs(t)/g0(t))`
/// at the selected real roots `t` of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rur {
    f: IntPoly,
    g: Vec<IntPoly>,
    selector: Selector,
}

impl Rur {
    /// `g` holds `g0..gs`; needs `s >= 1`, `deg F >= 1` and `F`, `g0` coprime.
    pub fn new(f: IntPoly, g: Vec<IntPoly>, selector: Selector) -> Result<Self> {
        if g.len() < 2 {
            return Err(Error::InvalidRur("need g0 and at least one coordinate".into()));
        }
        if f.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidRur("F must have degree at least 1".into()));
        }
        if g[0].is_zero() || !f.gcd(&g[0]).is_constant() {
            return Err(Error::InvalidRur("F and g0 are not coprime".into()));
        }
        Ok(Rur { f, g, selector })
    }

    pub fn s(&self) -> usize {
        self.g.len() - 1
    }

    pub fn f(&self) -> &IntPoly {
        &self.f
    }

    pub fn g(&self) -> &[IntPoly] {
        &self.g
    }

    pub fn selector(&self) -> &Selector {
        &self.selector
    }

    /// Real roots of `F` named by the selector, in increasing order.
    pub fn selected_roots(&self) -> Result<Vec<AlgebraicNumber>> {
        let roots = isolate_real_roots(&self.f, None);
        Ok(match &self.selector {
            Selector::All => roots,
            Selector::Interval(iv) => roots
                .into_iter()
                .filter(|t| t.cmp_rat(&iv.lo) != Ordering::Less && t.cmp_rat(&iv.hi) != Ordering::Greater)
                .collect(),
            Selector::Thom(signs) => {
                let mut out = Vec::new();
                for t in roots {
                    if &thom_signs_at(&self.f, &t)? == signs {
                        out.push(t);
                    }
                }
                out
            }
        })
    }
}

/// Exact minimum of a univariate polynomial on `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateMinimum {
    pub minimum: Real,
    /// Every point of `[0, 1]` where the minimum is attained, increasing.
    pub minimizers: Vec<Real>,
    /// `Res_T(P - Z, P')`; absent for constant `P`.
    pub resultant: Option<ParamResultant>,
    /// The univariate bound for the measured `(d, tau)`; absent for constant `P`.
    pub bound: Option<BoundValue>,
    pub bound_holds: bool,
    pub positive: bool,
}

/// Minimum over `[0, 1]` from `P(0)`, `P(1)` and the values at the roots of
/// `P'` in `(0, 1)`. Interior values are identified as roots of
/// `Res_T(P - Z, P')`.
pub fn certify_univariate_min(p: &IntPoly) -> Result<UnivariateMinimum> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let zero = Rat::zero();
    let one = Rat::one();
    let mut candidates = vec![
        (Real::Rational(zero.clone()), Real::Rational(p.eval_rat(&zero))),
        (Real::Rational(one.clone()), Real::Rational(p.eval_rat(&one))),
    ];
    let d = p.degree().unwrap_or(0) as u64;
    let mut resultant = None;
    if d >= 1 {
        let dp = p.derivative();
        let r = resultant_in_z(&ZLinear::shifted(p.clone()), &dp)?;
        let values = isolate_real_roots(r.poly(), None);
        for x in isolate_real_roots(&dp, Some((zero.clone(), one.clone()))) {
            if x.cmp_rat(&zero) != Ordering::Greater || x.cmp_rat(&one) != Ordering::Less {
                continue;
            }
            let value = match x.as_rational() {
                Some(xr) => Real::Rational(p.eval_rat(xr)),
                None => {
                    let (j, _) = identify_value(&x, p, &IntPoly::one(), &values)?;
                    Real::from_algebraic(values[j].clone())
                }
            };
            candidates.push((Real::from_algebraic(x), value));
        }
        resultant = Some(r);
    }
    let minimum = candidates
        .iter()
        .map(|(_, v)| v)
        .min_by(|a, b| compare(a, b))
        .cloned()
        .unwrap_or_else(|| unreachable!("endpoints are always candidates"));
    let mut minimizers: Vec<Real> =
        candidates.into_iter().filter(|(_, v)| compare(v, &minimum) == Ordering::Equal).map(|(x, _)| x).collect();
    minimizers.sort_by(compare);
    let positive = minimum.is_positive();
    let (bound, bound_holds) = if d >= 1 {
        let b = univariate_bound(d, p.bitsize()?)?;
        let holds = positive && b.is_below(&minimum);
        if positive && !holds {
            return Err(Error::Internal(format!("minimum {minimum} is not above 2^-{}", b.l)));
        }
        (Some(b), holds)
    } else {
        (None, positive)
    };
    Ok(UnivariateMinimum { minimum, minimizers, resultant, bound, bound_holds, positive })
}

// Refines `t` until num(t)/den(t) is enclosed in exactly one of `values`.
fn identify_value(
    t: &AlgebraicNumber,
    num: &IntPoly,
    den: &IntPoly,
    values: &[AlgebraicNumber],
) -> Result<(usize, AlgebraicNumber)> {
    let mut t = t.clone();
    for _ in 0..IDENTIFY_BUDGET {
        if let Some(enc) = Interval::eval(num, t.interval()).div(&Interval::eval(den, t.interval())) {
            let hits: Vec<usize> =
                values.iter().enumerate().filter(|(_, v)| v.interval().intersects(&enc)).map(|(j, _)| j).collect();
            match hits.as_slice() {
                [j] => return Ok((*j, t)),
                [] if t.as_rational().is_some() => {
                    return Err(Error::Internal("value at a rational root is not a resultant root".into()))
                }
                _ => {}
            }
        }
        if t.as_rational().is_some() {
            return Err(Error::Internal(format!("value at the rational point {t} is not isolated")));
        }
        t = t.bisect();
    }
    Err(Error::RefinementExhausted(format!("could not identify the value at {t}")))
}

/// `P_u = g0^d P_sigma(g1/g0, ..., gs/g0)` and `g0^d`, with `d` the degree of
/// the parent polynomial.
pub fn compose_pu(ps: &RestrictedPoly, u: &Rur) -> Result<(IntPoly, IntPoly)> {
    let s = ps.face.dim();
    if u.s() != s {
        return Err(Error::RurDimension { expected: s, got: u.s() });
    }
    let d = ps.parent_degree as usize;
    let pow_table = |p: &IntPoly| {
        let mut v = vec![IntPoly::one()];
        for i in 1..=d {
            v.push(&v[i - 1] * p);
        }
        v
    };
    let g_pows: Vec<Vec<IntPoly>> = u.g.iter().map(pow_table).collect();
    let mut pu = IntPoly::zero();
    for (mono, c) in ps.poly.terms() {
        let deg = mono.degree() as usize;
        if deg > d {
            return Err(Error::Internal("restriction exceeds the parent degree".into()));
        }
        let mut term = g_pows[0][d - deg].scale(c);
        for (i, &e) in mono.exps().iter().enumerate() {
            term = &term * &g_pows[i + 1][e as usize];
        }
        pu = &pu + &term;
    }
    Ok((pu, g_pows[0][d].clone()))
}

/// Real roots of `R(Z) = Res_T(P_u - g0^d Z, F)`, and which real root of `F`
/// produces which of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalValueSet {
    pub resultant: ParamResultant,
    /// Distinct real roots of `R`, increasing.
    pub values: Vec<AlgebraicNumber>,
    /// `(t, j)`: the real root `t` of `F` maps to `values[j]`.
    pub witnesses: Vec<(AlgebraicNumber, usize)>,
}

pub fn critical_values(pu: &IntPoly, g0d: &IntPoly, f: &IntPoly) -> Result<CriticalValueSet> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidArgument("F must have degree at least 1".into()));
    }
    let resultant = resultant_in_z(&ZLinear::new(pu.clone(), g0d.clone()), f)?;
    let values = isolate_real_roots(resultant.poly(), None);
    let mut witnesses = Vec::new();
    for t in isolate_real_roots(f, None) {
        witnesses.push(identify_value(&t, pu, g0d, &values)?);
    }
    let witnesses = witnesses.into_iter().map(|(j, t)| (t, j)).collect();
    Ok(CriticalValueSet { resultant, values, witnesses })
}

/// Enclosures of `g_i(t)/g0(t)`, `i = 1..s`, each of width at most `width`.
pub fn associated_point(u: &Rur, root: &AlgebraicNumber, width: &Rat) -> Result<Vec<Interval>> {
    if crate::algebraic::sign_at(&u.f, root) != 0 {
        return Err(Error::NotARoot);
    }
    let mut t = root.clone();
    for _ in 0..IDENTIFY_BUDGET {
        if let Some(box_) = point_enclosure(u, &t) {
            if box_.iter().all(|iv| iv.width() <= *width) {
                return Ok(box_);
            }
        }
        if t.as_rational().is_some() {
            break;
        }
        t = t.bisect();
    }
    Err(Error::InvalidRur(format!("g0 vanishes or the enclosure stalls near {t}")))
}

fn point_enclosure(u: &Rur, t: &AlgebraicNumber) -> Option<Vec<Interval>> {
    let den = Interval::eval(&u.g[0], t.interval());
    u.g[1..].iter().map(|gi| Interval::eval(gi, t.interval()).div(&den)).collect()
}

/// Where a witness point sits relative to the closed standard simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Placement {
    Inside,
    Outside,
    Unknown,
}

fn placement(box_: &[Interval]) -> Placement {
    let zero = Rat::zero();
    let one = Rat::one();
    let lo_sum: Rat = box_.iter().map(|iv| iv.lo.clone()).sum();
    let hi_sum: Rat = box_.iter().map(|iv| iv.hi.clone()).sum();
    if box_.iter().any(|iv| iv.hi < zero) || lo_sum > one {
        Placement::Outside
    } else if box_.iter().all(|iv| iv.lo >= zero) && hi_sum <= one {
        Placement::Inside
    } else {
        Placement::Unknown
    }
}

/// A critical value kept for a face, with the witness enclosure in face
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub value: Real,
    pub point: Vec<Interval>,
    /// True when the enclosure never separated from the face boundary.
    pub unresolved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceOutcome {
    /// Vertex, or a face on which `P` is constant.
    Constant(Rat),
    Edge(Box<UnivariateMinimum>),
    Interior {
        critical: CriticalValueSet,
        kept: Vec<Candidate>,
        /// Critical values with no witness in the closed face.
        discarded: Vec<Real>,
    },
    /// Dimension at least two and no RUR supplied.
    Missing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceResult {
    pub face: SimplexFace,
    pub outcome: FaceOutcome,
    /// Smallest candidate on the face, if any.
    pub minimum: Option<Real>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Complete,
    Incomplete,
    Nonpositive,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Complete => "complete",
            Status::Incomplete => "incomplete",
            Status::Nonpositive => "nonpositive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedMinimum {
    pub k: usize,
    pub d: u64,
    pub tau: u64,
    pub value: Real,
    /// Faces where the minimum is attained.
    pub attained_on: Vec<SimplexFace>,
    pub faces: Vec<FaceResult>,
    pub missing: Vec<SimplexFace>,
    pub bound: BoundValue,
    pub bound_holds: bool,
    pub status: Status,
}

/// Minimum of `P` over the simplex, face by face. Faces of dimension two or
/// more are looked up in `rurs`.
pub fn certify_simplex_min(p: &IntMultiPoly, rurs: &BTreeMap<SimplexFace, Rur>) -> Result<CertifiedMinimum> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let k = p.nvars();
    if k == 0 {
        return Err(Error::InvalidArgument("need at least one variable".into()));
    }
    let d = u64::from(p.total_degree().unwrap_or(0));
    let tau = p.bitsize()?;
    let faces = enumerate_faces(k);
    let results = faces.par_iter().map(|face| certify_face(p, face, rurs.get(face))).collect::<Result<Vec<_>>>()?;

    let missing: Vec<SimplexFace> =
        results.iter().filter(|r| r.outcome == FaceOutcome::Missing).map(|r| r.face.clone()).collect();
    let value = results
        .iter()
        .filter_map(|r| r.minimum.as_ref())
        .min_by(|a, b| compare(a, b))
        .cloned()
        .ok_or_else(|| Error::Internal("no face produced a candidate".into()))?;
    let attained_on = results
        .iter()
        .filter(|r| r.minimum.as_ref().is_some_and(|m| compare(m, &value) == Ordering::Equal))
        .map(|r| r.face.clone())
        .collect();

    let bound = simplex_min_bound(k as u64, d.max(1), tau)?;
    let positive = value.is_positive();
    let bound_holds = positive && bound.is_below(&value);
    let status = if !positive {
        Status::Nonpositive
    } else if !missing.is_empty() {
        Status::Incomplete
    } else {
        Status::Complete
    };
    if status == Status::Complete && !bound_holds {
        return Err(Error::Internal(format!("certified minimum {value} is not above 2^-{}", bound.l)));
    }
    Ok(CertifiedMinimum { k, d, tau, value, attained_on, faces: results, missing, bound, bound_holds, status })
}

/// Candidates for one face.
pub fn certify_face(p: &IntMultiPoly, face: &SimplexFace, rur: Option<&Rur>) -> Result<FaceResult> {
    let ps = restrict_to_face(p, face)?;
    if ps.poly.is_constant() {
        let c = Rat::from_integer(ps.poly.constant_term());
        return Ok(FaceResult {
            face: face.clone(),
            minimum: Some(Real::Rational(c.clone())),
            outcome: FaceOutcome::Constant(c),
        });
    }
    if face.dim() == 1 {
        let uni = ps.poly.to_uni().ok_or_else(|| Error::Internal("edge restriction is not univariate".into()))?;
        let m = certify_univariate_min(&uni)?;
        return Ok(FaceResult {
            face: face.clone(),
            minimum: Some(m.minimum.clone()),
            outcome: FaceOutcome::Edge(Box::new(m)),
        });
    }
    let Some(u) = rur else {
        return Ok(FaceResult { face: face.clone(), minimum: None, outcome: FaceOutcome::Missing });
    };
    let (pu, g0d) = compose_pu(&ps, u)?;
    let critical = critical_values(&pu, &g0d, u.f())?;
    let selected = u.selected_roots()?;
    let finest = Rat::new(BigInt::one(), BigInt::one() << FILTER_WIDTH_BITS);

    let mut kept_idx: BTreeMap<usize, Candidate> = BTreeMap::new();
    for (t, j) in &critical.witnesses {
        if !selected.iter().any(|s| s.cmp_alg(t) == Ordering::Equal) || kept_idx.contains_key(j) {
            continue;
        }
        let mut width = Rat::new(BigInt::one(), BigInt::from(16));
        loop {
            let point = associated_point(u, t, &width)?;
            match placement(&point) {
                Placement::Inside => {
                    kept_idx.insert(*j, candidate(&critical.values[*j], point, false));
                    break;
                }
                Placement::Outside => break,
                Placement::Unknown if width <= finest => {
                    kept_idx.insert(*j, candidate(&critical.values[*j], point, true));
                    break;
                }
                Placement::Unknown => width = &width / Rat::from_integer(BigInt::from(1u64 << 16)),
            }
        }
    }
    let discarded = (0..critical.values.len())
        .filter(|j| !kept_idx.contains_key(j))
        .map(|j| Real::from_algebraic(critical.values[j].clone()))
        .collect();
    let kept: Vec<Candidate> = kept_idx.into_values().collect();
    let minimum = kept.iter().map(|c| &c.value).min_by(|a, b| compare(a, b)).cloned();
    Ok(FaceResult { face: face.clone(), minimum, outcome: FaceOutcome::Interior { critical, kept, discarded } })
}

fn candidate(value: &AlgebraicNumber, point: Vec<Interval>, unresolved: bool) -> Candidate {
    Candidate { value: Real::from_algebraic(value.clone()), point, unresolved }
}

/// The interior RUR of the Berg polynomial `x^2 y^2 (x^2 + y^2 - 1) + 1`:
/// `F = (3T^2 - 1)(T^2 - 3)`, `g0 = T(3T^2 - 5)`, `g1 = T^2 + 1`,
/// `g2 = 2(T^2 - 1)`.
pub fn berg_interior_rur() -> Rur {
    let ip = |c: &[i64]| IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect());
    Rur::new(ip(&[3, 0, -10, 0, 3]), vec![ip(&[0, -5, 0, 3]), ip(&[1, 0, 1]), ip(&[-2, 0, 2])], Selector::All)
        .expect("Berg RUR is valid")
}
