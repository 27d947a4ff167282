//! Frames, rotation operators and the Torricelli/Napoleon transformations
//! of point triples in `R^d`.

mod fermat;
mod frame;
mod point;
mod transform;

pub use fermat::{fermat_point, internal_angle_cosines, wide_angle_vertex, ANGLE_COS_TOL, WIDE_ANGLE_COS};
pub use frame::{
    collinearity_gap, is_collinear, plane_frame, rotation_operator, PlaneFrame, RotationOperator, DEFAULT_TOL,
};
pub use point::{Point, Triple};
pub(crate) use transform::HALF_SQRT_3;
pub use transform::{
    centroid, double_outer_napoleon, double_outer_napoleon_with_tol, equilaterality_residual,
    equilaterality_residual_with_floor, erected_vertex, napoleon, napoleon_compose, napoleon_iter,
    napoleon_iter_with_tol, napoleon_with_tol, reduced_iterations, regular_planar, stack, torricelli,
    torricelli_with_rotation, torricelli_with_tol, unstack, StructureOperators, TransformKind,
};
