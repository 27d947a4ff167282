//! Torricelli and Napoleon transformations of triangles in `R^d`, and the
//! equilateral triangle closest to a given one in summed squared vertex
//! distance.
//!
//! ```
//! use napoleon::{double_outer_napoleon, equilaterality_residual, Triple};
//!
//! let x = Triple::planar([[0.0, 0.0], [4.0, 0.0], [1.0, 2.0]]).unwrap();
//! let y = double_outer_napoleon(&x);
//! assert!(equilaterality_residual(&y) < 1e-12);
//! ```

pub mod alignment;
pub mod commands;
pub mod error;
pub mod geometry;
pub mod io;
pub mod svg;
pub mod verify;

pub use alignment::{
    alignment_objective, kkt_residual, optimal_equilateral_alignment, oracle_alignment, weiszfeld, AlignmentResult,
    LagrangeDiagnostics, PlanarParametrization,
};
pub use error::GeometryError;
pub use geometry::*;
