use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};

use crate::geometry::HALF_SQRT_3;

/// Equilateral triangles of the plane written through two vertices and an
/// orientation `k`: `y3 = M y1 + M^T y2` with `M = I/2 - k (sqrt(3)/2) J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanarParametrization {
    pub k: i8,
}

impl PlanarParametrization {
    pub fn new(k: i8) -> Self {
        assert!(k == 1 || k == -1, "orientation must be +1 or -1");
        Self { k }
    }

    pub fn quarter_turn() -> Matrix2<f64> {
        Matrix2::new(0.0, -1.0, 1.0, 0.0)
    }

    pub fn m(&self) -> Matrix2<f64> {
        Matrix2::identity() * 0.5 - Self::quarter_turn() * (f64::from(self.k) * HALF_SQRT_3)
    }

    pub fn third_vertex(&self, y1: &Vector2<f64>, y2: &Vector2<f64>) -> Vector2<f64> {
        let m = self.m();
        m * y1 + m.transpose() * y2
    }

    /// The symmetric system matrix `[[2I, -M], [-M^T, 2I]]` of the
    /// stationarity conditions in `(y1, y2)`.
    pub fn hessian(&self) -> Matrix4<f64> {
        let m = self.m();
        let mut h = Matrix4::identity() * 2.0;
        h.fixed_view_mut::<2, 2>(0, 2).copy_from(&(-m));
        h.fixed_view_mut::<2, 2>(2, 0).copy_from(&(-m.transpose()));
        h
    }

    /// Closest equilateral triple of orientation `k` to the planar triple `x`,
    /// from the linear stationarity system.
    pub fn solve(&self, x: &[Vector2<f64>; 3]) -> Option<[Vector2<f64>; 3]> {
        let m = self.m();
        let r1 = x[0] + m.transpose() * x[2];
        let r2 = x[1] + m * x[2];
        let rhs = Vector4::new(r1.x, r1.y, r2.x, r2.y);
        let sol = self.hessian().lu().solve(&rhs)?;
        let y1 = Vector2::new(sol[0], sol[1]);
        let y2 = Vector2::new(sol[2], sol[3]);
        Some([y1, y2, self.third_vertex(&y1, &y2)])
    }
}
