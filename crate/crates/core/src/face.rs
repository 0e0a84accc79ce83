//! Faces of the standard simplex and restriction of a polynomial to them.
//!
//! Vertex 0 is the origin and vertex `i >= 1` is the unit vector `e_i`. A
//! face is a nonempty vertex subset `I`; its dimension is `|I| - 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebraic::Interval;
use crate::bits::bit;
use crate::error::{Error, Result};
use crate::{IntMultiPoly, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexFace {
    k: usize,
    vertices: Vec<usize>,
}

impl SimplexFace {
    /// Vertex indices are sorted and deduplicated; each must be `<= k`.
    pub fn new(k: usize, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::InvalidArgument("a face needs at least one vertex".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v > k) {
            return Err(Error::InvalidArgument(format!("vertex {v} exceeds dimension {k}")));
        }
        Ok(SimplexFace { k, vertices })
    }

    /// The whole simplex.
    pub fn full(k: usize) -> Self {
        SimplexFace { k, vertices: (0..=k).collect() }
    }

    /// Ambient dimension.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Face dimension `s = |I| - 1`.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Vertices not on the face.
    pub fn complement(&self) -> Vec<usize> {
        (0..=self.k).filter(|v| !self.vertices.contains(v)).collect()
    }

    pub fn contains_origin(&self) -> bool {
        self.vertices.first() == Some(&0)
    }

    /// Comma-separated vertex list, the CLI spelling (`0,2`).
    pub fn label(&self) -> String {
        join(&self.vertices, ",")
    }

    /// File name of the RUR for this face (`face_0_1_2.rur`).
    pub fn rur_file_name(&self) -> String {
        format!("face_{}.rur", join(&self.vertices, "_"))
    }

    /// Parses the CLI spelling `0,2`.
    pub fn parse(k: usize, label: &str) -> Result<Self> {
        let vertices = label
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad vertex `{t}` in face `{label}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, vertices)
    }

    /// Embeds face coordinates `y_1..y_s` as a point of the simplex.
    pub fn embed<T: crate::Scalar>(&self, y: &[T]) -> Vec<T> {
        assert_eq!(y.len(), self.dim(), "face coordinates have wrong length");
        let mut x = vec![T::zero(); self.k];
        let free = self.free_vertices();
        for (yi, &v) in y.iter().zip(free) {
            x[v - 1] = yi.clone();
        }
        if !self.contains_origin() {
            let pinned = self.vertices[0];
            let s = y.iter().fold(T::zero(), |acc, v| acc + v.clone());
            x[pinned - 1] = T::one() - s;
        }
        x
    }

    /// [`embed`](Self::embed) for interval boxes.
    pub fn embed_box(&self, y: &[Interval]) -> Vec<Interval> {
        assert_eq!(y.len(), self.dim(), "face coordinates have wrong length");
        let zero = Interval::point(Rat::zero());
        let mut x = vec![zero.clone(); self.k];
        for (yi, &v) in y.iter().zip(self.free_vertices()) {
            x[v - 1] = yi.clone();
        }
        if !self.contains_origin() {
            let s = y.iter().fold(zero, |acc, v| acc.add(v));
            x[self.vertices[0] - 1] = Interval::point(Rat::one()).sub(&s);
        }
        x
    }

    // Vertices whose coordinates become the face variables Y_1..Y_s.
    fn free_vertices(&self) -> &[usize] {
        &self.vertices[1..]
    }
}

fn join(v: &[usize], sep: &str) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for SimplexFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.label())
    }
}

/// All `2^(k+1) - 1` faces, by increasing dimension, then lexicographically.
pub fn enumerate_faces(k: usize) -> Vec<SimplexFace> {
    assert!(k >= 1, "simplex dimension must be at least 1");
    assert!(k < 31, "too many faces to enumerate");
    let mut faces: Vec<SimplexFace> = (1u32..(1 << (k + 1)))
        .map(|mask| SimplexFace { k, vertices: (0..=k).filter(|&v| mask & (1 << v) != 0).collect() })
        .collect();
    faces.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.vertices.cmp(&b.vertices)));
    faces
}

/// `tau_sigma = tau + 1 + d * bit(k)`.
pub fn tau_sigma(tau: u64, d: u64, k: u64) -> u64 {
    tau + 1 + d * bit(k)
}

/// `P` restricted to a face, in the face variables `Y_1..Y_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedPoly {
    pub face: SimplexFace,
    pub poly: IntMultiPoly,
    /// `tau_sigma` for the parent parameters.
    pub declared_tau: u64,
    /// Total degree `d` of the parent polynomial.
    pub parent_degree: u64,
    /// Coefficient bitsize `tau` of the parent polynomial.
    pub parent_tau: u64,
}

/// Zeroes `X_j` for `j` off the face; when the origin is off the face,
/// also substitutes `X_{i0} = 1 - sum Y` for the smallest vertex `i0`.
pub fn restrict_to_face(p: &IntMultiPoly, face: &SimplexFace) -> Result<RestrictedPoly> {
    if p.nvars() != face.k() {
        return Err(Error::VariableCount { expected: face.k(), got: p.nvars() });
    }
    let s = face.dim();
    let mut images = vec![IntMultiPoly::zero(s); face.k()];
    for (l, &v) in face.free_vertices().iter().enumerate() {
        images[v - 1] = IntMultiPoly::var(s, l);
    }
    if !face.contains_origin() {
        let mut one_minus = IntMultiPoly::constant(s, BigInt::one());
        for l in 0..s {
            one_minus = &one_minus - &IntMultiPoly::var(s, l);
        }
        images[face.vertices()[0] - 1] = one_minus;
    }
    let d = u64::from(p.total_degree().unwrap_or(0));
    let tau = p.bitsize().unwrap_or(1);
    Ok(RestrictedPoly {
        face: face.clone(),
        poly: p.substitute(&images),
        declared_tau: tau_sigma(tau, d, face.k() as u64),
        parent_degree: d,
        parent_tau: tau,
    })
}

/// `Q = sum_i (dP_sigma / dY_i)^2` with its declared size bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradientSquares {
    pub q: IntMultiPoly,
    /// `d_Q = 2d - 2`.
    pub degree_bound: u64,
    /// `tau_Q = 2 tau + (2d + 1) bit(k) + (k + 2) bit(d) + 2`.
    pub tau_bound: u64,
}

pub fn tau_q(tau: u64, d: u64, k: u64) -> u64 {
    2 * tau + (2 * d + 1) * bit(k) + (k + 2) * bit(d) + 2
}

pub fn gradient_sum_of_squares(ps: &RestrictedPoly) -> Result<GradientSquares> {
    let s = ps.face.dim();
    if s == 0 {
        return Err(Error::InvalidArgument("a vertex has no gradient".into()));
    }
    if ps.poly.is_constant() {
        return Err(Error::WholeFaceCritical(ps.face.clone()));
    }
    let q = ps.poly.gradient().iter().fold(IntMultiPoly::zero(s), |acc, g| &acc + &(g * g));
    let d = ps.parent_degree;
    let degree_bound = (2 * d).saturating_sub(2);
    let tau_bound = tau_q(ps.parent_tau, d, ps.face.k() as u64);
    let deg = u64::from(q.total_degree().unwrap_or(0));
    let tq = q.bitsize()?;
    if deg > degree_bound || tq > tau_bound {
        return Err(Error::Internal(format!(
            "Q exceeds its size bounds: degree {deg} > {degree_bound} or bitsize {tq} > {tau_bound}"
        )));
    }
    Ok(GradientSquares { q, degree_bound, tau_bound })
}
