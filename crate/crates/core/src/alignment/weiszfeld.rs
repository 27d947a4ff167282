use nalgebra::{DMatrix, DVector};

use crate::error::{GeometryError, Result};
use crate::geometry::{centroid, Point, Triple};

/// Sum of unit vectors from `y` towards the vertices other than those at `y`,
/// together with the number of vertices sitting at `y` and the summed
/// inverse distances to the others.
fn pull(x: &Triple, y: &DVector<f64>, snap: f64) -> (DVector<f64>, usize, f64) {
    let mut dir = DVector::zeros(y.len());
    let mut at = 0;
    let mut inv = 0.0;
    for v in x.vertices() {
        let diff = v.as_vector() - y;
        let dist = diff.norm();
        if dist <= snap {
            at += 1;
        } else {
            dir += diff / dist;
            inv += 1.0 / dist;
        }
    }
    (dir, at, inv)
}

fn total_distance(x: &Triple, y: &DVector<f64>) -> f64 {
    x.vertices().iter().map(|v| (v.as_vector() - y).norm()).sum()
}

/// Newton step for the summed distances at `y`, which must not sit on a
/// vertex. `None` when the Hessian is singular (collinear configurations).
fn newton_step(x: &Triple, y: &DVector<f64>, descent: &DVector<f64>) -> Option<DVector<f64>> {
    let d = y.len();
    let mut h = DMatrix::zeros(d, d);
    for v in x.vertices() {
        let diff = v.as_vector() - y;
        let dist = diff.norm();
        let u = &diff / dist;
        h += (DMatrix::identity(d, d) - &u * u.transpose()) / dist;
    }
    h.cholesky().map(|c| y + c.solve(descent))
}

/// Weiszfeld iteration for the point minimizing the summed distances to the
/// vertices of `x`, seeded at the centroid.
///
/// Each step takes the Weiszfeld update or a Newton update, whichever gives
/// the smaller objective; the Newton step only speeds up the tail when the
/// minimizer sits close to a vertex. When an iterate comes within
/// `tol * scale` of a vertex the vertex is returned if it is optimal (the
/// unit vectors towards the other vertices sum to a norm no larger than the
/// vertex multiplicity); otherwise the iterate is pushed off the vertex along
/// the descent direction. Iteration stops once the unit vectors towards the
/// vertices cancel to within `tol` or the step stalls at rounding level.
pub fn weiszfeld(x: &Triple, tol: f64, max_iters: usize) -> Result<Point> {
    let scale = x.scale();
    if scale == 0.0 {
        return Err(GeometryError::TrivialTriple);
    }
    let snap = tol * scale;
    let stall = 4.0 * f64::EPSILON * scale;
    let mut y = centroid(x).into_vector();
    for _ in 0..max_iters {
        let (dir, at, inv) = pull(x, &y, snap);
        if at > 0 {
            let vertex = x
                .vertices()
                .iter()
                .min_by(|a, b| (a.as_vector() - &y).norm().total_cmp(&(b.as_vector() - &y).norm()))
                .map(|v| v.as_vector().clone())
                .unwrap_or_else(|| y.clone());
            let (dir, at, inv) = pull(x, &vertex, snap);
            let strength = dir.norm();
            if strength <= at as f64 {
                return Ok(Point::from_raw(vertex));
            }
            y = &vertex + &dir * ((strength - at as f64) / (strength * inv));
            continue;
        }
        if dir.norm() <= tol {
            return Ok(Point::from_raw(y));
        }
        let weighted = x.vertices().iter().fold(DVector::zeros(y.len()), |acc, v| {
            acc + v.as_vector() / (v.as_vector() - &y).norm()
        });
        let mut next = weighted / inv;
        if let Some(newton) = newton_step(x, &y, &dir) {
            if newton.iter().all(|c| c.is_finite()) && total_distance(x, &newton) < total_distance(x, &next) {
                next = newton;
            }
        }
        if (&next - &y).norm() <= stall {
            return Ok(Point::from_raw(next));
        }
        y = next;
    }
    Err(GeometryError::NoConvergence { iterations: max_iters })
}
