use std::fmt;
use std::ops::Deref;

use nalgebra::DVector;

use crate::error::{GeometryError, Result};

/// A point of `R^d`, `d >= 2`, with finite coordinates.
#[derive(Clone, PartialEq)]
pub struct Point(DVector<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        Self::from_vector(DVector::from_vec(coords))
    }

    pub fn from_vector(v: DVector<f64>) -> Result<Self> {
        if v.len() < 2 {
            return Err(GeometryError::DimensionTooSmall(v.len()));
        }
        if let Some(&value) = v.iter().find(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite { value });
        }
        Ok(Self(v))
    }

    /// Wraps a vector produced from already validated inputs.
    pub(crate) fn from_raw(v: DVector<f64>) -> Self {
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn as_vector(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn into_vector(self) -> DVector<f64> {
        self.0
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (&self.0 - &other.0).norm()
    }
}

impl Deref for Point {
    type Target = DVector<f64>;

    fn deref(&self) -> &DVector<f64> {
        &self.0
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Point").field(&self.coords()).finish()
    }
}

/// An ordered triple of points sharing one dimension.
///
/// Vertex order matters: it fixes the orientation used by the rotation
/// operator and the vertex correspondence of the alignment objective.
#[derive(Clone, PartialEq)]
pub struct Triple {
    vertices: [Point; 3],
}

impl Triple {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        let d = a.dim();
        for p in [&b, &c] {
            if p.dim() != d {
                return Err(GeometryError::DimensionMismatch {
                    expected: d,
                    found: p.dim(),
                });
            }
        }
        Ok(Self { vertices: [a, b, c] })
    }

    /// Builds a triple from three coordinate rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        if rows.len() != 3 {
            return Err(GeometryError::DimensionMismatch {
                expected: 3,
                found: rows.len(),
            });
        }
        let p = |i: usize| Point::new(rows[i].as_ref().to_vec());
        Self::new(p(0)?, p(1)?, p(2)?)
    }

    pub fn planar(rows: [[f64; 2]; 3]) -> Result<Self> {
        Self::from_rows(&rows)
    }

    pub(crate) fn from_raw(vertices: [DVector<f64>; 3]) -> Self {
        let [a, b, c] = vertices;
        Self {
            vertices: [Point::from_raw(a), Point::from_raw(b), Point::from_raw(c)],
        }
    }

    /// Three copies of `p`.
    pub fn repeated(p: &Point) -> Self {
        Self {
            vertices: [p.clone(), p.clone(), p.clone()],
        }
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[Point; 3] {
        &self.vertices
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.vertices.iter().map(|p| p.coords().to_vec()).collect()
    }

    /// Squared side lengths `|x1-x2|^2, |x1-x3|^2, |x2-x3|^2`.
    pub fn squared_sides(&self) -> [f64; 3] {
        let [a, b, c] = &self.vertices;
        [
            (a.as_vector() - b.as_vector()).norm_squared(),
            (a.as_vector() - c.as_vector()).norm_squared(),
            (b.as_vector() - c.as_vector()).norm_squared(),
        ]
    }

    /// Largest pairwise vertex distance.
    pub fn scale(&self) -> f64 {
        self.squared_sides().into_iter().fold(0.0, f64::max).sqrt()
    }

    pub fn is_trivial(&self) -> bool {
        self.scale() == 0.0
    }

    pub fn check_dim(&self, other: &Triple) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// Largest vertex-wise distance to `other`.
    pub fn max_vertex_distance(&self, other: &Triple) -> f64 {
        self.vertices
            .iter()
            .zip(&other.vertices)
            .map(|(p, q)| p.distance(q))
            .fold(0.0, f64::max)
    }

    /// Vertex-wise `a * self + b * other`.
    pub(crate) fn combine(&self, a: f64, other: &Triple, b: f64) -> Triple {
        let v = |i: usize| self.vertices[i].as_vector() * a + other.vertices[i].as_vector() * b;
        Triple::from_raw([v(0), v(1), v(2)])
    }

    pub fn map<F>(&self, mut f: F) -> Triple
    where
        F: FnMut(&DVector<f64>) -> DVector<f64>,
    {
        let v = |i: usize, f: &mut F| f(self.vertices[i].as_vector());
        Triple::from_raw([v(0, &mut f), v(1, &mut f), v(2, &mut f)])
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.vertices.iter().map(|p| p.coords()))
            .finish()
    }
}
