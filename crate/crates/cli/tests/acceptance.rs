//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::panic;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simplexbound::algebraic::{compare, Real};
use simplexbound::bounds::{
    compact_chain, simplex_bound_chain, simplex_min_bound, univariate_bound, univariate_coefficient_bound,
};
use simplexbound::certify::{certify_simplex_min, certify_univariate_min, Rur, Selector, Status};
use simplexbound::face::{enumerate_faces, restrict_to_face, SimplexFace};
use simplexbound::numeric::{numeric_min_estimate, DEFAULT_SEED};
use simplexbound::resultant::{resultant_in_z, ZLinear};
use simplexbound::{IntMultiPoly, IntPoly, Rat};
use simplexbound_cli::commands::{NUMERIC_ROUNDS, NUMERIC_SAMPLES};
use simplexbound_cli::formats::{load_poly, parse_rational};
use simplexbound_cli::report::Report;

// Tolerances and limits, as stated by the criteria.
const BERG_TIME_LIMIT: Duration = Duration::from_secs(30);
const SHARPNESS_TIME_LIMIT: Duration = Duration::from_secs(5);
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(10);
const COMPACT_TIME_LIMIT: Duration = Duration::from_secs(5);
const ENCLOSURE_BITS: u32 = 32;
const NUMERIC_RELATIVE_TOLERANCE: f64 = 1e-6;
const RANDOM_CASES: usize = 100;
const CORPUS_SIZE: usize = 50;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "Berg reproduction", berg_reproduction),
        (2, "univariate sharpness family", sharpness_family),
        (3, "resultant oracle equivalence", resultant_oracle),
        (4, "coefficient bounds on R(Z)", coefficient_bounds),
        (5, "face restriction bitsize", face_bitsize),
        (6, "soundness of the simplex bound", soundness_sandwich),
        (7, "bound formula regression", formula_regression),
        (8, "compact bound dominance", compact_dominance),
        (9, "numeric cross-validation", numeric_cross_validation),
        (10, "determinism", determinism),
    ];
    let mut failed = 0;
    for (n, name, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name} [{secs:.2}s] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name} [{secs:.2}s] {detail}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn dyadic(l: u64) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << l)
}

fn verdict(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", failures.join("; ")))
    }
}

fn bits_of(n: &BigInt) -> u64 {
    n.magnitude().bits().max(1)
}

// Coefficient bitsize of a multivariate polynomial, from its terms.
fn tau_of(p: &IntMultiPoly) -> u64 {
    p.terms().map(|(_, c)| bits_of(c)).max().unwrap_or(1)
}

fn degree_of(p: &IntMultiPoly) -> u64 {
    p.terms().map(|(m, _)| m.exps().iter().map(|&e| u64::from(e)).sum::<u64>()).max().unwrap_or(0)
}

fn eval_multi(p: &IntMultiPoly, x: &[Rat]) -> Rat {
    p.terms()
        .map(|(m, c)| {
            m.exps()
                .iter()
                .zip(x)
                .fold(Rat::from_integer(c.clone()), |acc, (&e, xi)| acc * num_traits::pow(xi.clone(), e as usize))
        })
        .sum()
}

/// A positive rational below `x`, for `x > 0`.
fn positive_lower(x: &Real) -> Option<Rat> {
    match x {
        Real::Rational(r) => r.is_positive().then(|| r.clone()),
        Real::Algebraic(a) => {
            if a.cmp_rat(&Rat::zero()) != Ordering::Greater {
                return None;
            }
            let mut w = rat(1, 1);
            loop {
                let lo = a.refine(&w).interval().lo.clone();
                if lo.is_positive() {
                    return Some(lo);
                }
                w /= rat(2, 1);
            }
        }
    }
}

/// `x > 2^-l`, decided without materialising `2^-l` when `l` is large.
fn exceeds_dyadic(x: &Real, l: &BigUint) -> bool {
    let Some(lo) = positive_lower(x) else { return false };
    // lo = a/b with a >= 1, so lo >= 1/b > 2^-bits(b)
    if BigUint::from(lo.denom().bits()) <= *l {
        return true;
    }
    match l.to_u64() {
        Some(l) if l <= 1 << 20 => lo > dyadic(l) || compare(x, &Real::Rational(dyadic(l))) == Ordering::Greater,
        _ => false,
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = simplexbound_cli::run(std::iter::once("simplexbound").chain(args.iter().copied()));
    (out.code, out.stdout)
}

// Berg polynomial x^2 y^2 (x^2 + y^2 - 1) + 1 with its interior RUR.
fn berg_report() -> Result<(Report, Duration), String> {
    let start = Instant::now();
    let (code, out) = run_cli(&["certify", "--poly", &fixture("berg.json"), "--rur-dir", &fixture("berg")]);
    let elapsed = start.elapsed();
    if code != 0 {
        return Err(format!("certify exited with {code}"));
    }
    Ok((Report::from_json(&out).map_err(|e| e.to_string())?, elapsed))
}

fn berg_resultant_oracle() -> Vec<BigInt> {
    // 2^48 3^6 (27 Z - 26)^4, expanded by the binomial theorem
    let scale: BigInt = (BigInt::one() << 48u32) * BigInt::from(729);
    (0..=4u32)
        .map(|j| {
            let choose = [1, 4, 6, 4, 1][j as usize];
            scale.clone() * choose * BigInt::from(27).pow(j) * BigInt::from(-26).pow(4 - j)
        })
        .collect()
}

fn encloses_inv_sqrt3(iv: &[String; 2]) -> bool {
    let (Ok(lo), Ok(hi)) = (parse_rational(&iv[0]), parse_rational(&iv[1])) else { return false };
    let three = rat(3, 1);
    lo.is_positive()
        && &three * &lo * &lo < Rat::one()
        && &three * &hi * &hi > Rat::one()
        && &hi - &lo <= dyadic(u64::from(ENCLOSURE_BITS))
}

fn berg_reproduction() -> Outcome {
    let (r, elapsed) = berg_report()?;
    let mut failures = Vec::new();
    let face = |label: &str| r.faces.iter().find(|f| f.face == label);

    let interior = face("0,1,2").ok_or("no report for the interior face")?;
    let expected: Vec<String> = berg_resultant_oracle().iter().map(BigInt::to_string).collect();
    let resultant_ok = interior.resultant.as_ref().is_some_and(|res| res.coeffs == expected);
    if !resultant_ok {
        failures.push("R(Z) differs from 2^48 3^6 (27Z - 26)^4".to_string());
    }

    let global = r.minimum.as_ref().map(|m| m.exact.clone()).unwrap_or_default();
    if global != "26/27" {
        failures.push(format!("global minimum is {global} on {:?}, expected 26/27", r.attained_on));
    }

    let half = ["1/2".to_string(), "1/2".to_string()];
    let edge_ok = face("1,2").is_some_and(|f| {
        f.minimum.as_ref().is_some_and(|m| m.exact == "31/32")
            && f.minimizers.iter().any(|p| p.x.len() == 2 && p.x[1] == half)
    });
    if !edge_ok {
        failures.push("edge {1,2} minimum is not 31/32 at y = 1/2".to_string());
    }

    let vertices_ok =
        ["0", "1", "2"].iter().all(|v| face(v).is_some_and(|f| f.minimum.as_ref().is_some_and(|m| m.exact == "1/1")));
    if !vertices_ok {
        failures.push("a vertex value differs from 1".to_string());
    }

    let witness = interior
        .critical_values
        .iter()
        .find(|c| c.value.exact == "26/27")
        .and_then(|c| c.witnesses.iter().find(|w| w.point.x.iter().all(encloses_inv_sqrt3)).map(|_| c.kept));
    match witness {
        None => failures.push("no enclosure of (1/sqrt3, 1/sqrt3) at width 2^-32".to_string()),
        Some(false) => failures.push("the critical point (1/sqrt3, 1/sqrt3) lies outside the simplex".to_string()),
        Some(true) => {}
    }
    if elapsed >= BERG_TIME_LIMIT {
        failures.push(format!("took {elapsed:?}"));
    }
    verdict(
        failures,
        format!(
            "R(Z) exact: {resultant_ok}, edge 31/32: {edge_ok}, vertices 1: {vertices_ok}, minimum {global}, {:.3}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn sharpness_poly(d: usize, k: u32) -> IntPoly {
    // X^d + (2^k X - 1)^2
    let mut c = vec![BigInt::zero(); d.max(2) + 1];
    c[0] += 1;
    c[1] -= BigInt::one() << (k + 1);
    c[2] += BigInt::one() << (2 * k);
    c[d] += 1;
    IntPoly::new(c)
}

fn sharpness_family() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for d in 2..=4usize {
        for k in 1..=3u32 {
            let p = sharpness_poly(d, k);
            let x = dyadic(u64::from(k));
            let at = p.coeffs().iter().rev().fold(Rat::zero(), |acc, c| acc * &x + Rat::from_integer(c.clone()));
            let upper = dyadic(d as u64 * u64::from(k));
            if at != upper {
                failures.push(format!("P(2^-{k}) = {at} for d = {d}"));
            }
            let m = match certify_univariate_min(&p) {
                Ok(m) => m.minimum,
                Err(e) => {
                    failures.push(format!("d = {d}, k = {k}: {e}"));
                    continue;
                }
            };
            let b = univariate_bound(d as u64, 2 * u64::from(k)).map_err(|e| e.to_string())?;
            if !exceeds_dyadic(&m, &b.l) {
                failures.push(format!("d = {d}, k = {k}: minimum not above 2^-{}", b.l));
            }
            if compare(&m, &Real::Rational(upper)) == Ordering::Greater {
                failures.push(format!("d = {d}, k = {k}: minimum above 2^-{}", d as u32 * k));
            }
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= SHARPNESS_TIME_LIMIT {
        failures.push(format!("took {elapsed:?}"));
    }
    verdict(failures, format!("{count} of 9 instances sandwiched"))
}

fn random_uni(rng: &mut ChaCha8Rng, d: usize, max_coef: i64) -> IntPoly {
    let mut c: Vec<BigInt> = (0..=d).map(|_| BigInt::from(rng.gen_range(-max_coef..=max_coef))).collect();
    while c[d].is_zero() {
        c[d] = BigInt::from(rng.gen_range(-max_coef..=max_coef));
    }
    IntPoly::new(c)
}

// Polynomials in Z as coefficient vectors, lowest degree first.
type ZPoly = Vec<BigInt>;

fn zp_trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn zp_add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    zp_trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
}

fn zp_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zp_trim(out)
}

// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<ZPoly>]) -> ZPoly {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut total = Vec::new();
    for j in 0..n {
        if m[0][j].is_empty() {
            continue;
        }
        let minor: Vec<Vec<ZPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let mut term = zp_mul(&m[0][j], &cofactor_det(&minor));
        if j % 2 == 1 {
            term = term.into_iter().map(|c| -c).collect();
        }
        total = zp_add(&total, &term);
    }
    total
}

// Sylvester matrix of P - Z and P' with entries in Z[Z].
fn symbolic_sylvester(p: &IntPoly) -> Vec<Vec<ZPoly>> {
    let d = p.degree().expect("nonzero");
    let dp: Vec<BigInt> = (1..=d).map(|i| p.coeffs()[i].clone() * i).collect();
    let m = d - 1;
    let n = d + m;
    let mut f_row: Vec<ZPoly> = p.coeffs().iter().map(|c| zp_trim(vec![c.clone()])).collect();
    f_row[0] = zp_trim(vec![p.coeffs()[0].clone(), BigInt::from(-1)]);
    f_row.reverse();
    let g_row: Vec<ZPoly> = dp.iter().rev().map(|c| zp_trim(vec![c.clone()])).collect();
    let mut rows = Vec::with_capacity(n);
    for i in 0..m {
        let mut r = vec![Vec::new(); n];
        r[i..i + f_row.len()].clone_from_slice(&f_row);
        rows.push(r);
    }
    for i in 0..d {
        let mut r = vec![Vec::new(); n];
        r[i..i + g_row.len()].clone_from_slice(&g_row);
        rows.push(r);
    }
    rows
}

fn resultant_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = Vec::new();
    for case in 0..RANDOM_CASES {
        let d = rng.gen_range(1..=4);
        let p = random_uni(&mut rng, d, 255);
        let fast = resultant_in_z(&ZLinear::shifted(p.clone()), &p.derivative()).map_err(|e| e.to_string())?;
        let slow = cofactor_det(&symbolic_sylvester(&p));
        if fast.coeffs() != slow.as_slice() {
            failures.push(format!("case {case}: P = {p}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= ORACLE_TIME_LIMIT {
        failures.push(format!("took {elapsed:?}"));
    }
    verdict(failures, format!("{RANDOM_CASES} pairs compared"))
}

fn coefficient_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let mut checked = 0;
    for case in 0..RANDOM_CASES {
        let d = rng.gen_range(1..=6);
        let p = random_uni(&mut rng, d, 255);
        let tau = p.coeffs().iter().map(bits_of).max().unwrap_or(1);
        let r = resultant_in_z(&ZLinear::shifted(p.clone()), &p.derivative()).map_err(|e| e.to_string())?;
        for i in 0..d {
            let ri = Rat::from_integer(r.poly().coeff(i).abs());
            let bound = univariate_coefficient_bound(d as u64, tau, i as u64);
            if ri >= bound {
                failures.push(format!("case {case}: |r_{i}| = {ri} for P = {p}"));
            }
            checked += 1;
        }
    }
    verdict(failures, format!("{checked} coefficients below their bounds"))
}

fn random_multi(rng: &mut ChaCha8Rng, k: usize, d: u32, max_coef: i64, terms: usize) -> IntMultiPoly {
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut left = d;
        let mut e = vec![0u32; k];
        for slot in e.iter_mut() {
            *slot = rng.gen_range(0..=left);
            left -= *slot;
        }
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-max_coef..=max_coef);
        }
        out.push((e, BigInt::from(c)));
    }
    IntMultiPoly::from_terms(k, out)
}

// Barycentric embedding of face coordinates, written out independently.
fn embed(face: &SimplexFace, y: &[Rat]) -> Vec<Rat> {
    let v = face.vertices();
    let mut x = vec![Rat::zero(); face.k()];
    for (yi, &vi) in y.iter().zip(&v[1..]) {
        x[vi - 1] = yi.clone();
    }
    if v[0] != 0 {
        x[v[0] - 1] = Rat::one() - y.iter().cloned().sum::<Rat>();
    }
    x
}

fn face_bitsize() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let mut faces = 0;
    let mut cases = 0;
    while cases < RANDOM_CASES {
        let k = rng.gen_range(1..=3);
        let (d, terms) = (rng.gen_range(1..=5), rng.gen_range(1..=8));
        let p = random_multi(&mut rng, k, d, 255, terms);
        if p.is_zero() {
            continue;
        }
        cases += 1;
        let d = degree_of(&p);
        let tau = tau_of(&p);
        let bit_k = 64 - u64::from((k as u64).leading_zeros());
        let allowed = tau + 1 + d * bit_k;
        for face in enumerate_faces(k) {
            let r = restrict_to_face(&p, &face).map_err(|e| e.to_string())?;
            faces += 1;
            if !r.poly.is_zero() && tau_of(&r.poly) > allowed {
                failures.push(format!("face {face}: bitsize {} > {allowed} for {p:?}", tau_of(&r.poly)));
            }
            for _ in 0..3 {
                let y: Vec<Rat> = (0..face.dim()).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=7))).collect();
                if eval_multi(&r.poly, &y) != eval_multi(&p, &embed(&face, &y)) {
                    failures.push(format!("face {face}: restriction disagrees with substitution"));
                }
            }
        }
    }
    verdict(failures, format!("{faces} face restrictions within tau + 1 + d bit(k)"))
}

struct Instance {
    p: IntMultiPoly,
    rurs: BTreeMap<SimplexFace, Rur>,
}

fn square_sum(rng: &mut ChaCha8Rng, k: usize, d: u32, squares: usize) -> IntMultiPoly {
    let mut p = IntMultiPoly::constant(k, BigInt::one());
    for _ in 0..squares {
        let q = random_multi(rng, k, d, 4, 3);
        p = &p + &(&q * &q);
    }
    p
}

fn ip(c: &[BigInt]) -> IntPoly {
    IntPoly::new(c.to_vec())
}

// 1 + l1^2 + l2^2 for independent affine l1, l2: a single critical point,
// given by Cramer's rule, as a RUR with F = T.
fn quadratic_instance(rng: &mut ChaCha8Rng) -> Instance {
    loop {
        let mut c = || BigInt::from(rng.gen_range(-5i64..=5));
        let (a1, b1, c1, a2, b2, c2) = (c(), c(), c(), c(), c(), c());
        let det = &a1 * &b2 - &a2 * &b1;
        if det.is_zero() {
            continue;
        }
        let affine = |a: &BigInt, b: &BigInt, c: &BigInt| {
            IntMultiPoly::from_terms(2, [(vec![1, 0], a.clone()), (vec![0, 1], b.clone()), (vec![0, 0], c.clone())])
        };
        let l1 = affine(&a1, &b1, &c1);
        let l2 = affine(&a2, &b2, &c2);
        let p = &(&IntMultiPoly::constant(2, BigInt::one()) + &(&l1 * &l1)) + &(&l2 * &l2);
        let x = &b1 * &c2 - &b2 * &c1;
        let y = &a2 * &c1 - &a1 * &c2;
        let rur = Rur::new(ip(&[BigInt::zero(), BigInt::one()]), vec![ip(&[det]), ip(&[x]), ip(&[y])], Selector::All)
            .expect("linear RUR is valid");
        return Instance { p, rurs: BTreeMap::from([(SimplexFace::full(2), rur)]) };
    }
}

/// 20 univariate, 15 bivariate quadratics with interior RURs, 15 bivariate
/// quartics with edges and vertices only.
fn corpus() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut out = Vec::with_capacity(CORPUS_SIZE);
    while out.len() < 20 {
        let d = rng.gen_range(1..=3);
        out.push(Instance { p: square_sum(&mut rng, 1, d, 2), rurs: BTreeMap::new() });
    }
    while out.len() < 35 {
        out.push(quadratic_instance(&mut rng));
    }
    while out.len() < CORPUS_SIZE {
        out.push(Instance { p: square_sum(&mut rng, 2, 2, 2), rurs: BTreeMap::new() });
    }
    out
}

fn soundness_sandwich() -> Outcome {
    let mut failures = Vec::new();
    let (mut complete, mut partial) = (0, 0);
    for (i, inst) in corpus().iter().enumerate() {
        let c = certify_simplex_min(&inst.p, &inst.rurs).map_err(|e| format!("instance {i}: {e}"))?;
        match c.status {
            Status::Complete => complete += 1,
            Status::Incomplete => partial += 1,
            Status::Nonpositive => failures.push(format!("instance {i} reported nonpositive")),
        }
        // every instance is 1 + a sum of squares
        if compare(&c.value, &Real::Rational(Rat::one())) == Ordering::Less {
            failures.push(format!("instance {i}: minimum {} below 1", c.value));
        }
        let k = inst.p.nvars() as u64;
        let l = simplex_min_bound(k, degree_of(&inst.p).max(1), tau_of(&inst.p)).map_err(|e| e.to_string())?.l;
        if !exceeds_dyadic(&c.value, &l) {
            failures.push(format!("instance {i}: minimum {} not above 2^-{l}", c.value));
        }
    }
    verdict(failures, format!("{complete} complete and {partial} edge/vertex-only instances above 2^-L"))
}

fn bit(n: u128) -> u128 {
    u128::from(128 - n.leading_zeros())
}

fn ceil_log2(n: u128) -> u128 {
    if n <= 1 {
        0
    } else {
        u128::from(128 - (n - 1).leading_zeros())
    }
}

// The size chain and exponent written out term by term in machine integers.
fn direct_chain(k: u128, d: u128, tau: u128) -> (u128, u128, u128, u128, u128) {
    let big_d = 2 * d * (2 * d - 1).pow((k - 1) as u32);
    let tau_prime = 2 * tau + (2 * d + 2) * bit(k) + (k + 3) * bit(d) + 5;
    let rho = big_d * (2 * k * d - 2 * k + 2) * (tau_prime + 2 * bit(2 * k * d - 2 * k + 3) + 3 * bit(big_d) + bit(k));
    let rho_prime = d * (rho + bit(big_d + 1)) + tau + d * bit(k) + d + k + 1;
    let d_pu = d * big_d;
    let l =
        big_d * (rho_prime + 1) + (big_d / 2) * ceil_log2(d_pu + 1) + d_pu * rho + (d_pu / 2) * ceil_log2(big_d + 1);
    (big_d, tau_prime, rho, rho_prime, l)
}

// ceil(log2 N) for N = [2^(rho'+1) sqrt(dD+1)]^D [2^rho sqrt(D+1)]^(dD),
// exactly, via N^2.
fn exact_ceil_log2(d: u128, big_d: u128, rho: u128, rho_prime: u128) -> u64 {
    let d_pu = d * big_d;
    let odd = num_traits::pow(BigUint::from(d_pu + 1), big_d as usize)
        * num_traits::pow(BigUint::from(big_d + 1), d_pu as usize);
    let n2 = odd << (2 * (big_d * (rho_prime + 1) + d_pu * rho)) as usize;
    // least l with 4^l >= N^2
    let mut l = n2.bits() / 2;
    while (BigUint::one() << (2 * l)) < n2 {
        l += 1;
    }
    while l > 0 && (BigUint::one() << (2 * (l - 1))) >= n2 {
        l -= 1;
    }
    l
}

fn formula_regression() -> Outcome {
    let mut failures = Vec::new();
    let (big_d, tau_prime, rho, rho_prime, l) = direct_chain(1, 2, 1);
    if (big_d, tau_prime, rho, rho_prime, l) != (4, 21, 592, 1197, 9548) {
        failures.push(format!("direct transcription gives {:?}", (big_d, tau_prime, rho, rho_prime, l)));
    }
    let exact = exact_ceil_log2(2, big_d, rho, rho_prime);
    if u128::from(exact) > l {
        failures.push(format!("rounded L = {l} is below the exact exponent {exact}"));
    }
    let c = simplex_bound_chain(1, 2, 1).map_err(|e| e.to_string())?;
    let lib = (c.rur.d_u.to_string(), c.rur.tau_prime.to_string(), c.rur.tau_u.to_string(), c.pu.tau_pu.to_string());
    if lib != ("4".into(), "21".into(), "592".into(), "1197".into()) || c.bound.l != BigUint::from(9548u32) {
        failures.push(format!("library chain gives {lib:?} and L = {}", c.bound.l));
    }
    for (k, d, tau) in [(1u128, 1u128, 1u128), (2, 3, 4), (3, 6, 8), (2, 6, 1)] {
        let lib = simplex_min_bound(k as u64, d as u64, tau as u64).map_err(|e| e.to_string())?.l;
        if lib != BigUint::from(direct_chain(k, d, tau).4) {
            failures.push(format!("L({k}, {d}, {tau}) = {lib} disagrees with the direct path"));
        }
    }
    let (code, out) = run_cli(&["bound", "--k", "1", "--d", "2", "--tau", "1", "--formula", "exact"]);
    let cli_l = Report::from_json(&out).ok().and_then(|r| r.bounds.first().and_then(|b| b.l.clone()));
    if code != 0 || cli_l.as_deref() != Some("9548") {
        failures.push(format!("bound command gives {cli_l:?}"));
    }
    verdict(failures, format!("L = 9548, (D, tau', rho, rho') = (4, 21, 592, 1197), exact exponent {exact}"))
}

fn compact_dominance() -> Outcome {
    let start = Instant::now();
    let mut points = 0;
    let mut broken: BTreeMap<&str, usize> = BTreeMap::new();
    let mut first = None;
    for k in 1..=3u64 {
        for d in 1..=6u64 {
            for tau in 1..=8u64 {
                let c = compact_chain(k, d, tau).map_err(|e| e.to_string())?;
                points += 1;
                for (name, ok) in
                    [("D+1", c.d_plus_one), ("rho", c.rho), ("rho'", c.rho_prime), ("dominance", c.dominance)]
                {
                    if !ok {
                        *broken.entry(name).or_default() += 1;
                        first.get_or_insert((k, d, tau));
                    }
                }
            }
        }
    }
    let mut failures = Vec::new();
    if !broken.is_empty() {
        failures.push(format!("violations {broken:?}, first at (k, d, tau) = {:?}", first.unwrap_or_default()));
    }
    let elapsed = start.elapsed();
    if elapsed >= COMPACT_TIME_LIMIT {
        failures.push(format!("took {elapsed:?}"));
    }
    verdict(failures, format!("{points} grid points"))
}

fn numeric_cross_validation() -> Outcome {
    let mut cases: Vec<(String, IntMultiPoly, Real)> = Vec::new();

    let berg = load_poly(&fixtures().join("berg.json")).map_err(|e| e.to_string())?;
    let rurs = simplexbound_cli::commands::load_rurs(Some(&fixtures().join("berg")), 2).map_err(|e| e.to_string())?;
    let c = certify_simplex_min(&berg, &rurs).map_err(|e| e.to_string())?;
    if c.status == Status::Complete {
        cases.push(("Berg".into(), berg, c.value));
    }
    for d in 2..=4usize {
        for k in 1..=3u32 {
            let p = sharpness_poly(d, k);
            let m = certify_univariate_min(&p).map_err(|e| e.to_string())?;
            cases.push((format!("P_{k} with d = {d}"), IntMultiPoly::from_uni(&p), m.minimum));
        }
    }
    for (i, inst) in corpus().into_iter().enumerate() {
        let c = certify_simplex_min(&inst.p, &inst.rurs).map_err(|e| e.to_string())?;
        if c.status == Status::Complete {
            cases.push((format!("corpus {i}"), inst.p, c.value));
        }
    }

    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for (name, p, m) in &cases {
        let e = numeric_min_estimate(p, NUMERIC_SAMPLES, NUMERIC_ROUNDS, DEFAULT_SEED);
        let exact = m.to_f64();
        let rel = (e.value - exact).abs() / exact.abs();
        worst = worst.max(rel);
        if rel.is_nan() || rel > NUMERIC_RELATIVE_TOLERANCE {
            failures.push(format!("{name}: estimate {} vs certified {exact}", e.value));
        }
    }
    verdict(failures, format!("{} certified minima, worst relative error {worst:.2e}", cases.len()))
}

fn run_binary(args: &[&str], seed: Option<&str>) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_simplexbound"));
    cmd.args(args).env_remove(simplexbound_cli::SEED_VAR);
    if let Some(s) = seed {
        cmd.env(simplexbound_cli::SEED_VAR, s);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let csv_path = dir.path().join("grid.csv").display().to_string();
    let berg = fixture("berg.json");
    let berg_dir = fixture("berg");
    let edge = fixture("berg_edge.json");
    let runs: Vec<(Vec<&str>, Option<&str>)> = vec![
        (vec!["bound", "--k", "1", "--d", "2", "--tau", "1", "--formula", "exact"], None),
        (vec!["bound", "--k", "1", "--d", "2", "--tau", "2", "--formula", "exact", "--univariate"], None),
        (vec!["bound", "--k", "2", "--d", "3", "--tau", "2", "--formula", "ls", "--c", "3/2"], None),
        (vec!["bound", "--poly", &berg, "--formula", "canny"], None),
        (vec!["certify1d", "--poly", &edge], None),
        (vec!["certify", "--poly", &berg, "--rur-dir", &berg_dir, "--numeric-check"], Some("7")),
        (vec!["certify", "--poly", &berg], None),
        (vec!["compare", "--kmax", "3", "--dmax", "6", "--taumax", "8", "--c", "1"], None),
        (vec!["compare", "--kmax", "2", "--dmax", "2", "--taumax", "2", "--c", "1", "--out", &csv_path], None),
    ];
    let mut failures = Vec::new();
    for (args, seed) in &runs {
        let (code_a, out_a) = run_binary(args, *seed);
        let file_a = std::fs::read(&csv_path).ok();
        let (code_b, out_b) = run_binary(args, *seed);
        let file_b = std::fs::read(&csv_path).ok();
        let label = args.join(" ");
        if code_a != code_b || out_a != out_b || file_a != file_b {
            failures.push(format!("`{label}` differs between runs"));
        }
        let text = String::from_utf8_lossy(&out_a);
        if args[0] != "compare" || args.contains(&"--out") {
            match Report::from_json(&text) {
                Ok(r) if r.to_json() == text => {}
                _ => failures.push(format!("`{label}` report does not re-serialize identically")),
            }
        }
    }
    let (_, out) = run_binary(&runs[5].0, Some("7"));
    let seed = Report::from_json(&String::from_utf8_lossy(&out)).ok().and_then(|r| r.numeric_check).map(|n| n.seed);
    if seed != Some(7) {
        failures.push(format!("seed override not honoured: {seed:?}"));
    }
    verdict(failures, format!("{} commands run twice with identical output", runs.len()))
}
