//! Floating-point estimate of the minimum over the simplex.
//!
//! Used to cross-check certified results; nothing here feeds a
//! certificate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{FloatMultiPoly, IntMultiPoly};

/// Seed used when the caller has no preference.
pub const DEFAULT_SEED: u64 = 0;

// Best sample points that get refined.
const STARTS: usize = 8;
const INITIAL_STEP: f64 = 0.125;

#[derive(Clone, Debug, PartialEq)]
pub struct NumericEstimate {
    pub value: f64,
    pub argmin: Vec<f64>,
    pub samples: usize,
    pub refinement_steps: usize,
}

/// Samples the simplex uniformly (plus its vertices), then polishes the best
/// few points by projected coordinate descent with step halving.
pub fn numeric_min_estimate(p: &IntMultiPoly, n_samples: usize, n_refine: usize, seed: u64) -> NumericEstimate {
    assert!(n_samples >= 1, "need at least one sample");
    let f = p.to_f64();
    let k = f.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut points: Vec<Vec<f64>> = Vec::with_capacity(n_samples + k + 1);
    points.push(vec![0.0; k]);
    for i in 0..k {
        let mut v = vec![0.0; k];
        v[i] = 1.0;
        points.push(v);
    }
    for _ in 0..n_samples {
        points.push(sample_simplex(&mut rng, k));
    }
    let mut scored: Vec<(f64, Vec<f64>)> = points.into_iter().map(|x| (f.eval(&x), x)).collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    scored.truncate(STARTS);

    let mut best = scored[0].clone();
    let mut steps = 0;
    for (v, x) in scored {
        let (v, x, used) = descend(&f, x, v, n_refine);
        steps += used;
        if v < best.0 {
            best = (v, x);
        }
    }
    NumericEstimate { value: best.0, argmin: best.1, samples: n_samples, refinement_steps: steps }
}

// Sorted spacings: k sorted uniforms split [0, 1] into k + 1 barycentric
// coordinates; the first k are the point.
fn sample_simplex(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let mut u: Vec<f64> = (0..k).map(|_| rng.gen::<f64>()).collect();
    u.sort_by(f64::total_cmp);
    let mut prev = 0.0;
    u.iter()
        .map(|&x| {
            let s = x - prev;
            prev = x;
            s
        })
        .collect()
}

fn descend(f: &FloatMultiPoly, mut x: Vec<f64>, mut v: f64, rounds: usize) -> (f64, Vec<f64>, usize) {
    let k = x.len();
    let mut h = INITIAL_STEP;
    let mut used = 0;
    for _ in 0..rounds {
        used += 1;
        let mut improved = false;
        for dir in directions(k) {
            for sign in [1.0, -1.0] {
                let cand: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + sign * h * d).collect();
                let cand = project(cand);
                let cv = f.eval(&cand);
                if cv < v {
                    v = cv;
                    x = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            h /= 2.0;
            if h < 1e-15 {
                break;
            }
        }
    }
    (v, x, used)
}

// Coordinate axes and the edge directions e_i - e_j.
fn directions(k: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for i in 0..k {
        let mut d = vec![0.0; k];
        d[i] = 1.0;
        out.push(d);
        for j in i + 1..k {
            let mut d = vec![0.0; k];
            d[i] = 1.0;
            d[j] = -1.0;
            out.push(d);
        }
    }
    out
}

/// Euclidean projection onto `{x >= 0, sum x <= 1}`.
pub fn project(x: Vec<f64>) -> Vec<f64> {
    let clamped: Vec<f64> = x.iter().map(|v| v.max(0.0)).collect();
    if clamped.iter().sum::<f64>() <= 1.0 {
        return clamped;
    }
    // onto the face sum = 1: shift by the threshold theta
    let mut sorted = x.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (i, v) in sorted.iter().enumerate() {
        cum += v;
        let t = (cum - 1.0) / (i + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    x.iter().map(|v| (v - theta).max(0.0)).collect()
}
