//! Fermat–Torricelli point: the minimizer of the summed distances to the
//! three vertices.

use nalgebra::{Matrix2, Vector2};

use super::frame::{is_collinear, plane_frame};
use super::point::{Point, Triple};
use super::transform::{torricelli_with_rotation, TransformKind};
use crate::error::{GeometryError, Result};
use crate::geometry::frame::RotationOperator;

/// Cosine threshold below which an internal angle counts as `>= 120` degrees.
pub const WIDE_ANGLE_COS: f64 = -0.5;
pub const ANGLE_COS_TOL: f64 = 1e-12;

/// Cosines of the internal angles at the three vertices. Undefined (NaN)
/// at a vertex that coincides with another.
pub fn internal_angle_cosines(x: &Triple) -> [f64; 3] {
    std::array::from_fn(|i| {
        let p = x.vertex(i).as_vector();
        let u = x.vertex((i + 1) % 3).as_vector() - p;
        let v = x.vertex((i + 2) % 3).as_vector() - p;
        u.dot(&v) / (u.norm() * v.norm())
    })
}

/// Index of the vertex whose internal angle is at least 120 degrees, if any.
pub fn wide_angle_vertex(x: &Triple) -> Option<usize> {
    internal_angle_cosines(x)
        .iter()
        .position(|&c| c <= WIDE_ANGLE_COS + ANGLE_COS_TOL)
}

/// Fermat point of a non-trivial triple.
///
/// Collinear triples map to their middle vertex. A vertex with an angle of
/// 120 degrees or more is its own Fermat point. Otherwise the lines joining
/// each vertex to the opposite outer Torricelli apex are concurrent at the
/// Fermat point; their least-squares intersection is solved in the plane
/// frame.
pub fn fermat_point(x: &Triple, tol: f64) -> Result<Point> {
    if x.is_trivial() {
        return Err(GeometryError::TrivialTriple);
    }
    let frame = plane_frame(x, tol)?;
    if is_collinear(x, tol) {
        let along = |i: usize| frame.n.dot(x.vertex(i).as_vector());
        let mut order = [0, 1, 2];
        order.sort_by(|&a, &b| along(a).total_cmp(&along(b)));
        return Ok(x.vertex(order[1]).clone());
    }
    if let Some(i) = wide_angle_vertex(x) {
        return Ok(x.vertex(i).clone());
    }

    let origin = x.vertex(0).as_vector().clone();
    let local = |p: &Point| Vector2::from(frame.project(&(p.as_vector() - &origin)));
    let apexes = torricelli_with_rotation(x, TransformKind::Outer, &RotationOperator::from_frame(frame.clone()));

    // each line contributes nu . z = nu . p with nu its unit normal
    let mut normal = Matrix2::zeros();
    let mut rhs = Vector2::zeros();
    for (p, q) in x.vertices().iter().zip(apexes.vertices()) {
        let (p, q) = (local(p), local(q));
        let dir = (q - p).normalize();
        let nu = Vector2::new(-dir.y, dir.x);
        normal += nu * nu.transpose();
        rhs += nu * nu.dot(&p);
    }
    let z = normal.lu().solve(&rhs).ok_or(GeometryError::SingularSystem)?;
    Ok(Point::from_raw(origin + frame.lift([z.x, z.y])))
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::geometry::{centroid, DEFAULT_TOL};

    fn tri(rows: [[f64; 2]; 3]) -> Triple {
        Triple::planar(rows).unwrap()
    }

    fn summed_distance(x: &Triple, p: &Point) -> f64 {
        x.vertices().iter().map(|v| v.distance(p)).sum()
    }

    #[test]
    fn equilateral_fermat_point_is_centroid() {
        let x = tri([[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]]);
        let f = fermat_point(&x, DEFAULT_TOL).unwrap();
        assert!(f.distance(&centroid(&x)) < 1e-14);
    }

    #[test]
    fn wide_angle_returns_the_vertex() {
        let x = tri([[-1.0, 0.0], [1.0, 0.0], [0.0, 0.2]]);
        assert_eq!(wide_angle_vertex(&x), Some(2));
        assert_eq!(fermat_point(&x, DEFAULT_TOL).unwrap().coords(), &[0.0, 0.2]);
    }

    #[test]
    fn interior_point_beats_vertices_and_centroid() {
        let x = tri([[0.0, 0.0], [1.0, 0.0], [0.5, 0.9]]);
        assert_eq!(wide_angle_vertex(&x), None);
        let f = fermat_point(&x, DEFAULT_TOL).unwrap();
        let best = summed_distance(&x, &f);
        for v in x.vertices() {
            assert!(best <= summed_distance(&x, v));
        }
        assert!(best <= summed_distance(&x, &centroid(&x)));
        // first-order condition: unit vectors towards the vertices cancel
        let g = x
            .vertices()
            .iter()
            .map(|v| (v.as_vector() - f.as_vector()).normalize())
            .fold(nalgebra::DVector::zeros(2), |acc, u| acc + u);
        assert_abs_diff_eq!(g.norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn collinear_triple_gives_middle_vertex() {
        let x = tri([[0.0, 0.0], [5.0, 0.0], [2.0, 0.0]]);
        assert_eq!(fermat_point(&x, DEFAULT_TOL).unwrap().coords(), &[2.0, 0.0]);
        let y = tri([[3.0, 3.0], [0.0, 0.0], [3.0, 3.0]]);
        assert_eq!(fermat_point(&y, DEFAULT_TOL).unwrap().coords(), &[3.0, 3.0]);
    }

    #[test]
    fn trivial_triple_is_rejected() {
        let x = tri([[1.0, 2.0]; 3]);
        assert_eq!(fermat_point(&x, DEFAULT_TOL).unwrap_err(), GeometryError::TrivialTriple);
    }

    #[test]
    fn works_off_the_coordinate_plane() {
        let x = Triple::from_rows(&[[0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [0.5, 0.9, 1.0]]).unwrap();
        let f = fermat_point(&x, DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(f[2], 1.0, epsilon = 1e-14);
        let g = fermat_point(&tri([[0.0, 0.0], [1.0, 0.0], [0.5, 0.9]]), DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(f[0], g[0], epsilon = 1e-14);
        assert_abs_diff_eq!(f[1], g[1], epsilon = 1e-14);
    }
}
