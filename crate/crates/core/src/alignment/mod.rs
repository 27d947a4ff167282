//! Closest equilateral triple to a given triple, in the sum of squared
//! distances between corresponding vertices, plus the numerical checks used
//! to certify it.
//!
//! The closed form is `y = (2/3) x + (1/3) T+(x)`, the double outer Napoleon
//! triple. Writing equilaterals of the plane of `x` through two vertices and
//! an orientation `k` turns the problem into two strongly convex quadratics;
//! the `k = +1` branch is `(2/3) x + (1/3) T+(x)`, the `k = -1` branch is
//! `(2/3) x + (1/3) T-(x)`, and the first is never worse. They tie exactly
//! when `x` is collinear, in which case both are reported.

mod kkt;
mod oracle;
mod planar;
mod weiszfeld;

pub use kkt::{kkt_residual, LagrangeDiagnostics};
pub use oracle::{golden_section_minimize, oracle_alignment, oracle_alignment_with_offset};
pub use planar::PlanarParametrization;
pub use weiszfeld::weiszfeld;

use crate::error::Result;
use crate::geometry::{
    double_outer_napoleon_with_tol, is_collinear, plane_frame, torricelli_with_tol, PlaneFrame, TransformKind, Triple,
    DEFAULT_TOL,
};

/// `sum_i |x_i - y_i|^2`.
pub fn alignment_objective(x: &Triple, y: &Triple) -> Result<f64> {
    x.check_dim(y)?;
    Ok(x.vertices()
        .iter()
        .zip(y.vertices())
        .map(|(p, q)| (p.as_vector() - q.as_vector()).norm_squared())
        .sum())
}

/// Best objective reached on each orientation branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchObjectives {
    /// `k = +1`, equilaterals oriented like `x`.
    pub positive: f64,
    /// `k = -1`.
    pub negative: f64,
}

impl BranchObjectives {
    pub fn gap(&self) -> f64 {
        self.negative - self.positive
    }
}

#[derive(Debug, Clone)]
pub struct AlignmentResult {
    pub y: Triple,
    pub objective: f64,
    pub branch_k: i8,
    pub unique: bool,
    /// `None` for a trivial input.
    pub plane_frame: Option<PlaneFrame>,
    pub branch_objectives: BranchObjectives,
    /// The other minimizer when the optimum is not unique.
    pub alternate: Option<Triple>,
}

pub fn optimal_equilateral_alignment_with_tol(x: &Triple, tol: f64) -> AlignmentResult {
    let y = double_outer_napoleon_with_tol(x, tol);
    let other = x.combine(2.0 / 3.0, &torricelli_with_tol(x, TransformKind::Outer, tol), 1.0 / 3.0);
    // dimensions agree by construction
    let objective = alignment_objective(x, &y).unwrap_or(f64::NAN);
    let negative = alignment_objective(x, &other).unwrap_or(f64::NAN);
    let unique = !is_collinear(x, tol);
    let plane_frame = plane_frame(x, tol).ok();
    let alternate = (!unique && plane_frame.is_some()).then_some(other);
    AlignmentResult {
        y,
        objective,
        branch_k: 1,
        unique,
        plane_frame,
        branch_objectives: BranchObjectives {
            positive: objective,
            negative,
        },
        alternate,
    }
}

pub fn optimal_equilateral_alignment(x: &Triple) -> AlignmentResult {
    optimal_equilateral_alignment_with_tol(x, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector2;

    use super::*;
    use crate::geometry::{centroid, equilaterality_residual, napoleon, Point};

    fn tri(rows: [[f64; 2]; 3]) -> Triple {
        Triple::planar(rows).unwrap()
    }

    fn unit_equilateral() -> Triple {
        tri([[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]])
    }

    #[test]
    fn objective_examples() {
        let x = tri([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(alignment_objective(&x, &x).unwrap(), 0.0);
        let shifted = tri([[1.0, 0.0], [2.0, 0.0], [1.0, 1.0]]);
        assert_eq!(alignment_objective(&x, &shifted).unwrap(), 3.0);
        let e = unit_equilateral();
        let c = centroid(&e);
        let spread: f64 = e
            .vertices()
            .iter()
            .map(|p| (p.as_vector() - c.as_vector()).norm_squared())
            .sum();
        assert_abs_diff_eq!(
            alignment_objective(&e, &napoleon(&e, TransformKind::Outer)).unwrap(),
            4.0 * spread,
            epsilon = 1e-14
        );
        let y = Triple::from_rows(&[[0.0; 3]; 3]).unwrap();
        assert!(alignment_objective(&x, &y).is_err());
    }

    #[test]
    fn equilateral_input_is_its_own_alignment() {
        let e = unit_equilateral();
        let r = optimal_equilateral_alignment(&e);
        assert!(r.y.max_vertex_distance(&e) < 1e-15);
        assert!(r.objective < 1e-30);
        assert!(r.unique);
        assert_eq!(r.branch_k, 1);
    }

    #[test]
    fn trivial_input_is_its_own_alignment() {
        let p = Point::new(vec![1.0, -2.0, 0.5]).unwrap();
        let x = Triple::repeated(&p);
        let r = optimal_equilateral_alignment(&x);
        assert_eq!(r.y, x);
        assert_eq!(r.objective, 0.0);
        assert!(r.plane_frame.is_none());
        assert!(r.alternate.is_none());
    }

    #[test]
    fn collinear_input_has_two_minimizers() {
        let x = tri([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        let r = optimal_equilateral_alignment(&x);
        assert!(!r.unique);
        let alt = r.alternate.as_ref().unwrap();
        assert!(alt.max_vertex_distance(&r.y) > 0.1);
        assert_abs_diff_eq!(alignment_objective(&x, alt).unwrap(), r.objective, epsilon = 1e-12);
        assert!(equilaterality_residual(alt) < 1e-12);
    }

    #[test]
    fn closed_form_matches_planar_linear_solve() {
        let x = tri([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        let r = optimal_equilateral_alignment(&x);
        let pts = x.vertices().each_ref().map(|p| Vector2::new(p[0], p[1]));
        let y = PlanarParametrization::new(1).solve(&pts).unwrap();
        for (a, b) in r.y.vertices().iter().zip(&y) {
            assert!((Vector2::new(a[0], a[1]) - b).norm() < 1e-14);
        }
        let alt = PlanarParametrization::new(-1).solve(&pts).unwrap();
        let alt_obj: f64 = pts.iter().zip(&alt).map(|(p, q)| (p - q).norm_squared()).sum();
        assert_abs_diff_eq!(alt_obj, r.branch_objectives.negative, epsilon = 1e-14);
        assert!(r.branch_objectives.gap() > 0.0);
    }
}
