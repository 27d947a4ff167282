use nalgebra::{DMatrix, DVector};

use crate::error::{GeometryError, Result};
use crate::geometry::{equilaterality_residual, Triple};

/// Equilateral tolerance accepted by [`kkt_residual`].
const EQUILATERAL_TOL: f64 = 1e-8;

/// Multipliers fitted to the stationarity conditions of the Lagrangian
/// `sum |x_i - y_i|^2 + l1 (|y1-y2|^2 - |y1-y3|^2) + l2 (|y1-y2|^2 - |y2-y3|^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagrangeDiagnostics {
    pub lambda1: f64,
    pub lambda2: f64,
    /// Norm of the stationarity residual divided by the scale of `x`.
    pub gradient_residual: f64,
}

/// Least-squares fit of the two multipliers to the `3d` stationarity
/// equations at `y`. A residual near zero certifies that `y` is a KKT point.
pub fn kkt_residual(x: &Triple, y: &Triple) -> Result<LagrangeDiagnostics> {
    x.check_dim(y)?;
    let residual = equilaterality_residual(y);
    if residual > EQUILATERAL_TOL {
        return Err(GeometryError::NotEquilateral { residual });
    }
    let d = x.dim();
    let [y1, y2, y3] = y.vertices().each_ref().map(|p| p.as_vector());

    // gradient / 2 = (y - x) + lambda1 * a1 + lambda2 * a2, block by block
    let a1 = [y3 - y2, y2 - y1, y1 - y3];
    let a2 = [y1 - y2, y3 - y1, y2 - y3];
    let mut a = DMatrix::zeros(3 * d, 2);
    let mut b = DVector::zeros(3 * d);
    for i in 0..3 {
        a.view_mut((i * d, 0), (d, 1)).copy_from(&a1[i]);
        a.view_mut((i * d, 1), (d, 1)).copy_from(&a2[i]);
        b.rows_mut(i * d, d)
            .copy_from(&(x.vertex(i).as_vector() - y.vertex(i).as_vector()));
    }

    let lambda = a
        .clone()
        .svd(true, true)
        .solve(&b, 1e-14 * a.amax().max(f64::MIN_POSITIVE))
        .map_err(|_| GeometryError::SingularSystem)?;
    let norm = (&a * &lambda - &b).norm();
    let scale = x.scale();
    Ok(LagrangeDiagnostics {
        lambda1: lambda[0],
        lambda2: lambda[1],
        gradient_residual: if scale > 0.0 { norm / scale } else { norm },
    })
}
