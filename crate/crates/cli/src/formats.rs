//! Polynomial and RUR documents, and rational literals.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use simplexbound::algebraic::{Interval, ThomSigns};
use simplexbound::certify::{Rur, Selector};
use simplexbound::parse::parse_polynomial;
use simplexbound::{IntMultiPoly, IntPoly, Rat};

use crate::CliError;

/// `{"nvars": k, "terms": [{"exp": [..], "coef": ".."}]}` or
/// `{"expr": "..", "nvars": k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum PolyDoc {
    Terms { nvars: usize, terms: Vec<TermDoc> },
    Expr { expr: String, nvars: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub exp: Vec<u32>,
    pub coef: String,
}

pub fn parse_poly_doc(text: &str) -> Result<IntMultiPoly, CliError> {
    let doc: PolyDoc =
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("polynomial document: {e}")))?;
    match doc {
        PolyDoc::Expr { expr, nvars } => {
            parse_polynomial(&expr, nvars).map_err(|e| CliError::Invalid(format!("expression: {e}")))
        }
        PolyDoc::Terms { nvars, terms } => {
            let mut out = Vec::with_capacity(terms.len());
            for t in terms {
                if t.exp.len() != nvars {
                    return Err(CliError::Invalid(format!(
                        "exponent vector {:?} has length {}, expected {nvars}",
                        t.exp,
                        t.exp.len()
                    )));
                }
                out.push((t.exp, parse_int(&t.coef)?));
            }
            Ok(IntMultiPoly::from_terms(nvars, out))
        }
    }
}

/// Sparse-term document for `p`, terms in descending graded-lex order.
pub fn poly_to_doc(p: &IntMultiPoly) -> PolyDoc {
    let terms = p.terms_desc().map(|(m, c)| TermDoc { exp: m.exps().to_vec(), coef: c.to_string() }).collect();
    PolyDoc::Terms { nvars: p.nvars(), terms }
}

pub fn load_poly(path: &Path) -> Result<IntMultiPoly, CliError> {
    parse_poly_doc(&read(path)?)
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))
}

fn parse_int(s: &str) -> Result<BigInt, CliError> {
    let t = s.trim();
    let digits = t.strip_prefix('+').unwrap_or(t);
    digits.parse::<BigInt>().map_err(|_| CliError::Invalid(format!("`{s}` is not an integer")))
}

/// `3`, `-7/4`, `0.125`, `-2.5`.
pub fn parse_rational(s: &str) -> Result<Rat, CliError> {
    let bad = || CliError::Invalid(format!("`{s}` is not a rational number"));
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let d = parse_int(d).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(parse_int(n).map_err(|_| bad())?, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) || (int_digits.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let all = format!("{int_digits}{frac}");
        let mag: BigInt = all.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rat::new(mag, scale);
        return Ok(if neg { -r } else { r });
    }
    Ok(Rat::from_integer(parse_int(t).map_err(|_| bad())?))
}

/// `num/den`, always with an explicit denominator.
pub fn fmt_rational(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn coeff_list(v: &Value, key: &str) -> Result<IntPoly, CliError> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Invalid(format!("RUR is missing the coefficient list `{key}`")))?;
    let coeffs = arr
        .iter()
        .map(|c| match c {
            Value::String(s) => parse_int(s),
            Value::Number(n) if n.is_i64() || n.is_u64() => parse_int(&n.to_string()),
            other => Err(CliError::Invalid(format!("bad coefficient {other} in `{key}`"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPoly::new(coeffs))
}

fn parse_selector(v: Option<&Value>) -> Result<Selector, CliError> {
    let bad = |what: &str| CliError::Invalid(format!("RUR selector: {what}"));
    match v {
        None | Some(Value::Null) => Ok(Selector::All),
        Some(Value::String(s)) if s == "all" => Ok(Selector::All),
        Some(Value::Object(o)) if o.len() == 1 => {
            if let Some(iv) = o.get("interval") {
                let pair = iv.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("interval needs [lo, hi]"))?;
                let ends = pair
                    .iter()
                    .map(|e| e.as_str().ok_or_else(|| bad("interval ends must be strings")).and_then(parse_rational))
                    .collect::<Result<Vec<_>, _>>()?;
                if ends[0] > ends[1] {
                    return Err(bad("interval has lo > hi"));
                }
                return Ok(Selector::Interval(Interval::new(ends[0].clone(), ends[1].clone())));
            }
            if let Some(signs) = o.get("thom") {
                let signs = signs
                    .as_array()
                    .ok_or_else(|| bad("thom needs a sign list"))?
                    .iter()
                    .map(|s| match s.as_i64() {
                        Some(x @ -1..=1) => Ok(x as i8),
                        _ => Err(bad("thom signs must be -1, 0 or 1")),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                return Ok(Selector::Thom(ThomSigns(signs)));
            }
            Err(bad("expected `interval` or `thom`"))
        }
        Some(other) => Err(bad(&format!("unrecognised value {other}"))),
    }
}

/// `{"s": 2, "F": [..], "g0": [..], "g1": [..], "g2": [..], "selector": ..}`
/// with coefficient lists from degree 0 up.
pub fn parse_rur(text: &str) -> Result<Rur, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("RUR document: {e}")))?;
    let obj = v.as_object().ok_or_else(|| CliError::Invalid("RUR document must be an object".into()))?;
    let s = obj
        .get("s")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::Invalid("RUR needs a nonnegative integer `s`".into()))? as usize;
    for key in obj.keys() {
        let known = key == "s" || key == "F" || key == "selector";
        let g_index = key.strip_prefix('g').and_then(|i| i.parse::<usize>().ok());
        if !known && !g_index.is_some_and(|i| i <= s) {
            return Err(CliError::Invalid(format!("unexpected RUR field `{key}`")));
        }
    }
    let f = coeff_list(&v, "F")?;
    let g = (0..=s).map(|i| coeff_list(&v, &format!("g{i}"))).collect::<Result<Vec<_>, _>>()?;
    let selector = parse_selector(obj.get("selector"))?;
    Ok(Rur::new(f, g, selector)?)
}

pub fn load_rur(path: &Path) -> Result<Rur, CliError> {
    parse_rur(&read(path)?)
}

/// Inverse of [`parse_rur`].
pub fn render_rur(u: &Rur) -> String {
    let list = |p: &IntPoly| Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect());
    let mut obj = serde_json::Map::new();
    obj.insert("s".into(), Value::from(u.s()));
    obj.insert("F".into(), list(u.f()));
    for (i, g) in u.g().iter().enumerate() {
        obj.insert(format!("g{i}"), list(g));
    }
    let selector = match u.selector() {
        Selector::All => Value::String("all".into()),
        Selector::Interval(iv) => serde_json::json!({
            "interval": [fmt_rational(&iv.lo), fmt_rational(&iv.hi)]
        }),
        Selector::Thom(t) => serde_json::json!({ "thom": t.signs() }),
    };
    obj.insert("selector".into(), selector);
    let mut out = serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON values always serialize");
    out.push('\n');
    out
}
