//! Torricelli and Napoleon transformations of a triple.
//!
//! With `y = T(x)` the Torricelli configuration, vertex `y_i` is the apex of
//! the equilateral triangle erected on the side opposite `x_i`, inward for
//! [`TransformKind::Inner`] and outward for [`TransformKind::Outer`]. The
//! Napoleon triple replaces each apex by the centroid of its erected
//! triangle, `N(x) = (K x + T(x)) / 3`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use super::frame::{rotation_operator, RotationOperator, DEFAULT_TOL};
use super::point::{Point, Triple};
use crate::error::{GeometryError, Result};

pub(crate) const HALF_SQRT_3: f64 = 0.866_025_403_784_438_6;

/// Side of each edge on which equilateral triangles are erected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    /// Towards the interior of a positively oriented triple (`+`).
    Inner,
    /// Away from the interior (`-`).
    Outer,
}

impl TransformKind {
    pub fn sign(self) -> f64 {
        match self {
            TransformKind::Inner => 1.0,
            TransformKind::Outer => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            TransformKind::Inner => '+',
            TransformKind::Outer => '-',
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            TransformKind::Inner => TransformKind::Outer,
            TransformKind::Outer => TransformKind::Inner,
        }
    }
}

/// The `3d x 3d` operators `K = P_K (x) I_d` and `L = P_L (x) I_d` acting on
/// stacked triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureOperators {
    pub dim: usize,
}

impl StructureOperators {
    pub const PAIRWISE_SUM: [[f64; 3]; 3] = [[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]];
    pub const CYCLIC_DIFFERENCE: [[f64; 3]; 3] = [[0.0, -1.0, 1.0], [1.0, 0.0, -1.0], [-1.0, 1.0, 0.0]];

    pub fn new(dim: usize) -> Self {
        Self { dim }
    }

    fn kron(pattern: &[[f64; 3]; 3], dim: usize) -> DMatrix<f64> {
        let p = DMatrix::from_fn(3, 3, |i, j| pattern[i][j]);
        p.kronecker(&DMatrix::identity(dim, dim))
    }

    pub fn k_matrix(&self) -> DMatrix<f64> {
        Self::kron(&Self::PAIRWISE_SUM, self.dim)
    }

    pub fn l_matrix(&self) -> DMatrix<f64> {
        Self::kron(&Self::CYCLIC_DIFFERENCE, self.dim)
    }

    /// `(K x)_i = x_j + x_k`.
    pub fn apply_k(&self, x: &Triple) -> Triple {
        let [a, b, c] = x.vertices().each_ref().map(|p| p.as_vector());
        Triple::from_raw([b + c, a + c, a + b])
    }

    /// `(L x) = [x3 - x2, x1 - x3, x2 - x1]`.
    pub fn apply_l(&self, x: &Triple) -> Triple {
        let [a, b, c] = x.vertices().each_ref().map(|p| p.as_vector());
        Triple::from_raw([c - b, a - c, b - a])
    }
}

/// Stacks a triple into a vector of `R^{3d}`.
pub fn stack(x: &Triple) -> DVector<f64> {
    DVector::from_iterator(3 * x.dim(), x.vertices().iter().flat_map(|p| p.iter().copied()))
}

/// Inverse of [`stack`].
pub fn unstack(v: &DVector<f64>) -> Triple {
    let d = v.len() / 3;
    let block = |i: usize| v.rows(i * d, d).into_owned();
    Triple::from_raw([block(0), block(1), block(2)])
}

pub fn centroid(x: &Triple) -> Point {
    let [a, b, c] = x.vertices().each_ref().map(|p| p.as_vector());
    Point::from_raw((a + b + c) / 3.0)
}

/// Apex of the equilateral triangle erected on segment `ab`:
/// `(a + b) / 2 + s (sqrt(3) / 2) R (b - a)`.
pub fn erected_vertex(a: &Point, b: &Point, rot: &RotationOperator, kind: TransformKind) -> Result<Point> {
    for p in [a, b] {
        if p.dim() != rot.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: rot.dim(),
                found: p.dim(),
            });
        }
    }
    Ok(Point::from_raw(erect(a.as_vector(), b.as_vector(), rot, kind)))
}

fn erect(a: &DVector<f64>, b: &DVector<f64>, rot: &RotationOperator, kind: TransformKind) -> DVector<f64> {
    (a + b) * 0.5 + rot.apply(&(b - a)) * (kind.sign() * HALF_SQRT_3)
}

/// Torricelli configuration built with an explicit rotation operator.
pub fn torricelli_with_rotation(x: &Triple, kind: TransformKind, rot: &RotationOperator) -> Triple {
    let [a, b, c] = x.vertices().each_ref().map(|p| p.as_vector());
    Triple::from_raw([erect(b, c, rot, kind), erect(c, a, rot, kind), erect(a, b, rot, kind)])
}

pub fn torricelli_with_tol(x: &Triple, kind: TransformKind, tol: f64) -> Triple {
    torricelli_with_rotation(x, kind, &rotation_operator(x, tol))
}

pub fn torricelli(x: &Triple, kind: TransformKind) -> Triple {
    torricelli_with_tol(x, kind, DEFAULT_TOL)
}

pub fn napoleon_with_tol(x: &Triple, kind: TransformKind, tol: f64) -> Triple {
    let y = torricelli_with_tol(x, kind, tol);
    let k = StructureOperators::new(x.dim()).apply_k(x);
    k.combine(1.0 / 3.0, &y, 1.0 / 3.0)
}

pub fn napoleon(x: &Triple, kind: TransformKind) -> Triple {
    napoleon_with_tol(x, kind, DEFAULT_TOL)
}

/// `(2/3) x + (1/3) T+(x)`, the outer Napoleon transform applied twice.
pub fn double_outer_napoleon_with_tol(x: &Triple, tol: f64) -> Triple {
    let inner = torricelli_with_tol(x, TransformKind::Inner, tol);
    x.combine(2.0 / 3.0, &inner, 1.0 / 3.0)
}

pub fn double_outer_napoleon(x: &Triple) -> Triple {
    double_outer_napoleon_with_tol(x, DEFAULT_TOL)
}

/// Smallest iteration count with the same result as `k` iterations.
///
/// Two inner steps already collapse any triple to its centroid, and the
/// outer transform has period two from the first step on.
pub fn reduced_iterations(kind: TransformKind, k: usize) -> usize {
    match kind {
        TransformKind::Inner => k.min(2),
        TransformKind::Outer if k >= 3 => 2 - k % 2,
        TransformKind::Outer => k,
    }
}

pub fn napoleon_iter_with_tol(x: &Triple, kind: TransformKind, k: usize, tol: f64) -> Triple {
    match (kind, reduced_iterations(kind, k)) {
        (_, 0) => x.clone(),
        (_, 1) => napoleon_with_tol(x, kind, tol),
        (TransformKind::Inner, _) => Triple::repeated(&centroid(x)),
        (TransformKind::Outer, _) => double_outer_napoleon_with_tol(x, tol),
    }
}

/// `k` Napoleon iterations, using the collapse and periodicity shortcuts.
pub fn napoleon_iter(x: &Triple, kind: TransformKind, k: usize) -> Triple {
    napoleon_iter_with_tol(x, kind, k, DEFAULT_TOL)
}

/// `k` literal applications of the Napoleon transform, no shortcuts.
pub fn napoleon_compose(x: &Triple, kind: TransformKind, k: usize) -> Triple {
    (0..k).fold(x.clone(), |y, _| napoleon(&y, kind))
}

/// Largest relative deviation of the squared side lengths from their mean,
/// with the mean floored at `floor`.
pub fn equilaterality_residual_with_floor(x: &Triple, floor: f64) -> f64 {
    let sides = x.squared_sides();
    let mean = sides.iter().sum::<f64>() / 3.0;
    if mean == 0.0 {
        return 0.0;
    }
    let spread = sides.iter().map(|s| (s - mean).abs()).fold(0.0, f64::max);
    spread / mean.max(floor)
}

/// Zero exactly for equilateral (including trivial) triples.
pub fn equilaterality_residual(x: &Triple) -> f64 {
    equilaterality_residual_with_floor(x, f64::MIN_POSITIVE)
}

/// Equilateral triple with centroid `center`, circumradius `radius` and
/// first vertex at angle `phase` in the frame `(e1, e2)` of `R^2`.
pub fn regular_planar(center: [f64; 2], radius: f64, phase: f64, positive: bool) -> Triple {
    let s = if positive { 1.0 } else { -1.0 };
    let v = |i: usize| {
        let a = phase + s * 2.0 * PI * i as f64 / 3.0;
        DVector::from_vec(vec![center[0] + radius * a.cos(), center[1] + radius * a.sin()])
    };
    Triple::from_raw([v(0), v(1), v(2)])
}
