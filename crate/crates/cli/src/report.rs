//! JSON reports. Field order is fixed by the struct definitions, so a
//! parsed report serializes back to the same bytes.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use simplexbound::algebraic::{compare, Interval, Real};
use simplexbound::bits::decimal_ceil;
use simplexbound::bounds::{BoundValue, SimplexBound};
use simplexbound::certify::{associated_point, CertifiedMinimum, FaceOutcome, FaceResult, Rur, UnivariateMinimum};
use simplexbound::face::SimplexFace;
use simplexbound::numeric::NumericEstimate;
use simplexbound::resultant::ParamResultant;
use simplexbound::{IntPoly, Rat};

use crate::formats::fmt_rational;
use crate::CliError;

/// Enclosures in reports have width at most `2^-ENCLOSURE_BITS`.
pub const ENCLOSURE_BITS: u32 = 32;
pub const DECIMAL_PLACES: usize = 12;
pub const LOG2_PLACES: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub args: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Params>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimum: Option<ValueReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub minimizers: Vec<PointReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resultant: Option<ResultantReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<FaceReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attained_on: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub missing_faces: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric_check: Option<NumericReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<CsvReport>,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl Report {
    pub fn new(command: &str, args: &[String], status: &str) -> Self {
        Report {
            command: command.to_string(),
            args: args.to_vec(),
            params: None,
            bounds: Vec::new(),
            minimum: None,
            positive: None,
            minimizers: Vec::new(),
            resultant: None,
            faces: Vec::new(),
            attained_on: Vec::new(),
            missing_faces: Vec::new(),
            numeric_check: None,
            csv: None,
            status: status.to_string(),
            timings_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("report: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub k: u64,
    pub d: u64,
    pub tau: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundReport {
    pub formula: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    /// Certified exponent: the minimum exceeds `2^-l`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<String>,
    /// `log2` of the inverse bound, rounded up.
    pub log2_inverse: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conservative: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<SizesReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
}

impl BoundReport {
    pub fn from_value(formula: &str, b: &BoundValue) -> Self {
        BoundReport {
            formula: formula.to_string(),
            provenance: Some(b.provenance.name().to_string()),
            l: Some(b.l.to_string()),
            log2_inverse: decimal_ceil(&b.log2_inverse_upper, LOG2_PLACES),
            conservative: b.conservative.as_ref().map(fmt_rational),
            sizes: None,
            holds: None,
        }
    }

    pub fn from_chain(formula: &str, c: &SimplexBound) -> Self {
        let mut r = Self::from_value(formula, &c.bound);
        r.sizes = Some(SizesReport {
            d_u: c.rur.d_u.to_string(),
            tau_prime: c.rur.tau_prime.to_string(),
            tau_u: c.rur.tau_u.to_string(),
            d_pu: c.pu.d_pu.to_string(),
            tau_pu: c.pu.tau_pu.to_string(),
        });
        r
    }

    /// A display-only estimate given as an upper bound on its `log2`.
    pub fn from_log2(formula: &str, log2: &Rat) -> Self {
        BoundReport {
            formula: formula.to_string(),
            provenance: None,
            l: None,
            log2_inverse: decimal_ceil(log2, LOG2_PLACES),
            conservative: None,
            sizes: None,
            holds: None,
        }
    }
}

/// `D`, `tau'`, `rho`, `d_Pu` and `rho'` of the size chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SizesReport {
    pub d_u: String,
    pub tau_prime: String,
    pub tau_u: String,
    pub d_pu: String,
    pub tau_pu: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueReport {
    /// `num/den`, or `root of <poly> in [lo, hi]`.
    pub exact: String,
    /// Rounded toward -infinity.
    pub decimal: String,
    pub enclosure: [String; 2],
}

impl ValueReport {
    pub fn new(x: &Real, var: &str) -> Self {
        let enc = enclosure(x);
        ValueReport { exact: fmt_real(x, var), decimal: x.decimal(DECIMAL_PLACES), enclosure: fmt_interval(&enc) }
    }
}

/// A point of the simplex as enclosures of its ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointReport {
    pub face: String,
    pub x: Vec<[String; 2]>,
}

impl PointReport {
    fn new(face: &SimplexFace, y: &[Interval]) -> Self {
        PointReport { face: face.label(), x: face.embed_box(y).iter().map(fmt_interval).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultantReport {
    pub degree: usize,
    pub expr: String,
    /// Degree 0 first.
    pub coeffs: Vec<String>,
}

impl ResultantReport {
    pub fn new(r: &ParamResultant) -> Self {
        ResultantReport::from_poly(r.poly())
    }

    pub fn from_poly(p: &IntPoly) -> Self {
        ResultantReport {
            degree: p.degree().unwrap_or(0),
            expr: p.to_string_in("Z"),
            coeffs: p.coeffs().iter().map(BigInt::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceReport {
    pub face: String,
    pub dim: usize,
    /// `constant`, `edge`, `interior` or `missing`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimum: Option<ValueReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub minimizers: Vec<PointReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resultant: Option<ResultantReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub critical_values: Vec<CriticalReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalReport {
    pub value: ValueReport,
    pub kept: bool,
    /// Kept only because the enclosure never separated from the boundary.
    pub unresolved: bool,
    pub witnesses: Vec<WitnessReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessReport {
    /// The root of `F` defining the point.
    pub t: String,
    pub point: PointReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericReport {
    pub seed: u64,
    pub samples: usize,
    pub refinement_steps: usize,
    pub value: String,
    pub argmin: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

impl NumericReport {
    pub fn new(seed: u64, e: &NumericEstimate, certified: Option<&Real>, tolerance: f64) -> Self {
        let rel = certified.map(|m| relative_error(e.value, m.to_f64()));
        NumericReport {
            seed,
            samples: e.samples,
            refinement_steps: e.refinement_steps,
            value: e.value.to_string(),
            argmin: e.argmin.iter().map(f64::to_string).collect(),
            relative_error: rel.map(|r| r.to_string()),
            agrees: rel.map(|r| r <= tolerance),
        }
    }
}

pub fn relative_error(estimate: f64, exact: f64) -> f64 {
    let diff = (estimate - exact).abs();
    if exact == 0.0 {
        diff
    } else {
        diff / exact.abs()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CsvReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub rows: usize,
    pub header: String,
}

pub fn enclosure_width() -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << ENCLOSURE_BITS)
}

/// Interval around `x` of width at most [`enclosure_width`].
pub fn enclosure(x: &Real) -> Interval {
    match x {
        Real::Rational(r) => Interval::point(r.clone()),
        Real::Algebraic(a) => a.refine(&enclosure_width()).interval().clone(),
    }
}

pub fn fmt_interval(iv: &Interval) -> [String; 2] {
    [fmt_rational(&iv.lo), fmt_rational(&iv.hi)]
}

/// `num/den`, or `root of <defining polynomial in var> in [lo, hi]`.
pub fn fmt_real(x: &Real, var: &str) -> String {
    match x {
        Real::Rational(r) => fmt_rational(r),
        Real::Algebraic(a) => {
            let [lo, hi] = fmt_interval(a.interval());
            format!("root of {} in [{lo}, {hi}]", a.defpoly().to_string_in(var))
        }
    }
}

/// Report pieces for the univariate certifier. Points are `t` on `[0, 1]`.
pub fn univariate_parts(m: &UnivariateMinimum) -> (ValueReport, Vec<PointReport>, Option<ResultantReport>) {
    let minimizers =
        m.minimizers.iter().map(|t| PointReport { face: "0,1".into(), x: vec![fmt_interval(&enclosure(t))] }).collect();
    (ValueReport::new(&m.minimum, "Z"), minimizers, m.resultant.as_ref().map(ResultantReport::new))
}

pub fn face_report(r: &FaceResult, rur: Option<&Rur>) -> Result<FaceReport, CliError> {
    let face = &r.face;
    let mut out = FaceReport {
        face: face.label(),
        dim: face.dim(),
        kind: String::new(),
        minimum: r.minimum.as_ref().map(|m| ValueReport::new(m, "Z")),
        minimizers: Vec::new(),
        resultant: None,
        critical_values: Vec::new(),
    };
    match &r.outcome {
        FaceOutcome::Constant(_) => {
            out.kind = "constant".into();
            if face.dim() == 0 {
                out.minimizers.push(PointReport::new(face, &[]));
            }
        }
        FaceOutcome::Edge(m) => {
            out.kind = "edge".into();
            out.resultant = m.resultant.as_ref().map(ResultantReport::new);
            out.minimizers = m.minimizers.iter().map(|t| PointReport::new(face, &[enclosure(t)])).collect();
        }
        FaceOutcome::Missing => out.kind = "missing".into(),
        FaceOutcome::Interior { critical, kept, .. } => {
            out.kind = "interior".into();
            out.resultant = Some(ResultantReport::new(&critical.resultant));
            let u = rur.ok_or_else(|| CliError::Invalid(format!("face {face} has a result but no RUR")))?;
            let width = enclosure_width();
            for (j, value) in critical.values.iter().enumerate() {
                let value = Real::from_algebraic(value.clone());
                let hit = kept.iter().find(|c| compare(&c.value, &value) == Ordering::Equal);
                let is_min = hit.is_some() && r.minimum.as_ref().is_some_and(|m| compare(m, &value) == Ordering::Equal);
                let mut witnesses = Vec::new();
                for (t, _) in critical.witnesses.iter().filter(|(_, i)| *i == j) {
                    let y = associated_point(u, t, &width)?;
                    let point = PointReport::new(face, &y);
                    // only witnesses overlapping a kept enclosure are minimizers
                    if is_min && hit.is_some_and(|c| y.iter().zip(&c.point).all(|(a, b)| a.intersects(b))) {
                        out.minimizers.push(point.clone());
                    }
                    witnesses.push(WitnessReport { t: fmt_real(&Real::from_algebraic(t.clone()), "T"), point });
                }
                out.critical_values.push(CriticalReport {
                    value: ValueReport::new(&value, "Z"),
                    kept: hit.is_some(),
                    unresolved: hit.is_some_and(|c| c.unresolved),
                    witnesses,
                });
            }
        }
    }
    Ok(out)
}

/// Faces, global minimizers and attainment for a certified result.
pub fn certified_parts(
    c: &CertifiedMinimum,
    rurs: &BTreeMap<SimplexFace, Rur>,
) -> Result<(Vec<FaceReport>, Vec<PointReport>), CliError> {
    let faces = c.faces.iter().map(|r| face_report(r, rurs.get(&r.face))).collect::<Result<Vec<_>, _>>()?;
    let minimizers = faces
        .iter()
        .filter(|f| c.attained_on.iter().any(|a| a.label() == f.face))
        .flat_map(|f| f.minimizers.iter().cloned())
        .collect();
    Ok((faces, minimizers))
}
