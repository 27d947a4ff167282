//! Plane frames and the quarter-turn operator of a triple.
//!
//! Every transform in this crate is planar: it acts inside a 2-plane of
//! `R^d` that contains the triple, spanned by an orthonormal pair `(n, t)`
//! in which the triple is positively oriented (counter-clockwise
//! `1 -> 2 -> 3`). The rotation operator turns vectors of that plane by
//! `+pi/2` and annihilates its orthogonal complement.

use nalgebra::{DMatrix, DVector};

use super::point::Triple;
use crate::error::{GeometryError, Result};

/// Relative tolerance used for collinearity decisions when none is given.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Orthonormal pair spanning a plane that contains a triple.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneFrame {
    pub n: DVector<f64>,
    pub t: DVector<f64>,
}

impl PlaneFrame {
    pub fn dim(&self) -> usize {
        self.n.len()
    }

    /// Coordinates of `v` in the frame basis.
    pub fn project(&self, v: &DVector<f64>) -> [f64; 2] {
        [self.n.dot(v), self.t.dot(v)]
    }

    /// Vector of `R^d` with frame coordinates `c`.
    pub fn lift(&self, c: [f64; 2]) -> DVector<f64> {
        &self.n * c[0] + &self.t * c[1]
    }

    /// Component of `v` orthogonal to the frame plane.
    pub fn normal_component(&self, v: &DVector<f64>) -> DVector<f64> {
        v - self.lift(self.project(v))
    }
}

/// The `+pi/2` rotation in the plane of a triple, or zero for a trivial triple.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationOperator {
    dim: usize,
    frame: Option<PlaneFrame>,
}

impl RotationOperator {
    pub fn from_frame(frame: PlaneFrame) -> Self {
        Self {
            dim: frame.dim(),
            frame: Some(frame),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, frame: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn frame(&self) -> Option<&PlaneFrame> {
        self.frame.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.frame.is_none()
    }

    /// `R v = t (n.v) - n (t.v)`.
    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        match &self.frame {
            Some(PlaneFrame { n, t }) => t * n.dot(v) - n * t.dot(v),
            None => DVector::zeros(v.len()),
        }
    }

    /// Dense `d x d` matrix `[n t] J [n t]^T`.
    pub fn matrix(&self) -> DMatrix<f64> {
        match &self.frame {
            Some(PlaneFrame { n, t }) => t * n.transpose() - n * t.transpose(),
            None => DMatrix::zeros(self.dim, self.dim),
        }
    }
}

fn longest_side(x: &Triple) -> (usize, usize, usize) {
    // (i, j, opposite) for the pairs in the order of `squared_sides`
    const PAIRS: [(usize, usize, usize); 3] = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    let sides = x.squared_sides();
    let mut best = 0;
    for k in 1..3 {
        if sides[k] > sides[best] {
            best = k;
        }
    }
    PAIRS[best]
}

/// Distance of the vertex opposite the longest side from the line through
/// that side. This is the smallest height of the triangle.
pub fn collinearity_gap(x: &Triple) -> f64 {
    let (i, j, k) = longest_side(x);
    let base = x.vertex(j).as_vector() - x.vertex(i).as_vector();
    let norm = base.norm();
    if norm == 0.0 {
        return 0.0;
    }
    let n = base / norm;
    let w = x.vertex(k).as_vector() - x.vertex(i).as_vector();
    (&w - &n * n.dot(&w)).norm()
}

/// True when every vertex lies within `tol * scale` of a common line.
/// Trivial triples are collinear.
pub fn is_collinear(x: &Triple, tol: f64) -> bool {
    let scale = x.scale();
    scale == 0.0 || collinearity_gap(x) <= tol * scale
}

fn unit(v: DVector<f64>) -> DVector<f64> {
    let norm = v.norm();
    v / norm
}

/// Deterministic unit vector orthogonal to `n`.
fn perpendicular(n: &DVector<f64>) -> DVector<f64> {
    if n.len() == 2 {
        return DVector::from_vec(vec![-n[1], n[0]]);
    }
    let k = n.iamin();
    let mut e = DVector::zeros(n.len());
    e[k] = 1.0;
    unit(&e - n * n[k])
}

/// Orthonormal frame of the plane in which `x` is positively oriented.
pub fn plane_frame(x: &Triple, tol: f64) -> Result<PlaneFrame> {
    let [x1, x2, x3] = x.vertices();
    let (x1, x2, x3) = (x1.as_vector(), x2.as_vector(), x3.as_vector());
    if x.is_trivial() {
        return Err(GeometryError::TrivialTriple);
    }
    if !is_collinear(x, tol) {
        let n = unit(x2 - x1);
        let along = unit(x3 - x1);
        let t = unit(&along - &n * n.dot(&along));
        // A second projection restores orthogonality lost to cancellation
        // when x3 - x1 is nearly parallel to n.
        let t = unit(&t - &n * n.dot(&t));
        return Ok(PlaneFrame { n, t });
    }
    // Collinear: n follows the line through the longest side, signed like
    // x2 - x1 (or x3 - x2 when x1 = x2).
    let (i, j, _) = longest_side(x);
    let mut n = unit(x.vertex(j).as_vector() - x.vertex(i).as_vector());
    let reference = if x1 != x2 { x2 - x1 } else { x3 - x2 };
    if n.dot(&reference) < 0.0 {
        n = -n;
    }
    let t = perpendicular(&n);
    Ok(PlaneFrame { n, t })
}

/// Quarter-turn operator of `x`; the zero operator for a trivial triple.
pub fn rotation_operator(x: &Triple, tol: f64) -> RotationOperator {
    match plane_frame(x, tol) {
        Ok(frame) => RotationOperator::from_frame(frame),
        Err(_) => RotationOperator::zero(x.dim()),
    }
}
