//! Brute-force minimizer over equilateral triples, used to check the closed
//! form independently.
//!
//! In the plane frame of `x` an equilateral triple with labelled vertices is
//! `y_i = m + r (cos(theta + k 2 pi i / 3), sin(theta + k 2 pi i / 3))`. For
//! fixed `(theta, k)` the objective is a convex quadratic in `(m, r)`
//! minimized by the centroid and the clamped projection
//! `r = max(0, sum_i q_i . e_i / 3)`. What remains is a one dimensional
//! search over `theta` on each orientation branch.

use std::f64::consts::TAU;

use nalgebra::DVector;

use super::{alignment_objective, AlignmentResult, BranchObjectives};
use crate::geometry::{plane_frame, PlaneFrame, Triple, DEFAULT_TOL};

/// Branches whose objectives differ by less than this (relative to the
/// squared scale) are treated as tied.
const TIE_TOL: f64 = 1e-9;

/// Golden-section search for a minimum of `f` on `[a, b]`.
///
/// Returns `(x_min, f_min)`.
pub fn golden_section_minimize(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

struct PlanarProblem {
    frame: PlaneFrame,
    origin: DVector<f64>,
    center: [f64; 2],
    /// Vertices relative to `center`.
    offsets: [[f64; 2]; 3],
}

impl PlanarProblem {
    fn new(x: &Triple, frame: PlaneFrame) -> Self {
        let origin = x.vertex(0).as_vector().clone();
        let p = x
            .vertices()
            .each_ref()
            .map(|v| frame.project(&(v.as_vector() - &origin)));
        let center = [(p[0][0] + p[1][0] + p[2][0]) / 3.0, (p[0][1] + p[1][1] + p[2][1]) / 3.0];
        let offsets = p.map(|q| [q[0] - center[0], q[1] - center[1]]);
        Self {
            frame,
            origin,
            center,
            offsets,
        }
    }

    fn directions(theta: f64, k: i8) -> [[f64; 2]; 3] {
        std::array::from_fn(|i| {
            let a = theta + f64::from(k) * TAU * i as f64 / 3.0;
            [a.cos(), a.sin()]
        })
    }

    fn radius(&self, theta: f64, k: i8) -> f64 {
        let e = Self::directions(theta, k);
        let s: f64 = self
            .offsets
            .iter()
            .zip(&e)
            .map(|(q, e)| q[0] * e[0] + q[1] * e[1])
            .sum();
        (s / 3.0).max(0.0)
    }

    /// In-plane objective, up to the constant `sum |q_i|^2`.
    fn reduced_objective(&self, theta: f64, k: i8) -> f64 {
        let r = self.radius(theta, k);
        -3.0 * r * r
    }

    fn triple(&self, theta: f64, k: i8) -> Triple {
        let r = self.radius(theta, k);
        let e = Self::directions(theta, k);
        let v = |i: usize| {
            let c = [self.center[0] + r * e[i][0], self.center[1] + r * e[i][1]];
            &self.origin + self.frame.lift(c)
        };
        Triple::from_raw([v(0), v(1), v(2)])
    }

    fn best_angle(&self, k: i8, grid_n: usize, refine_iters: usize, offset: f64) -> f64 {
        let step = TAU / grid_n as f64;
        let (theta, value) = (0..grid_n)
            .map(|j| {
                let theta = offset + step * j as f64;
                (theta, self.reduced_objective(theta, k))
            })
            .fold(
                (offset, f64::INFINITY),
                |best, cand| if cand.1 < best.1 { cand } else { best },
            );
        let (refined, refined_value) = golden_section_minimize(
            |t| self.reduced_objective(t, k),
            theta - step,
            theta + step,
            refine_iters,
        );
        if refined_value <= value {
            refined
        } else {
            theta
        }
    }
}

/// [`oracle_alignment`] with the angular grid shifted by `offset` radians.
pub fn oracle_alignment_with_offset(x: &Triple, grid_n: usize, refine_iters: usize, offset: f64) -> AlignmentResult {
    let frame = match plane_frame(x, DEFAULT_TOL) {
        Ok(frame) => frame,
        Err(_) => {
            return AlignmentResult {
                y: x.clone(),
                objective: 0.0,
                branch_k: 1,
                unique: true,
                plane_frame: None,
                branch_objectives: BranchObjectives {
                    positive: 0.0,
                    negative: 0.0,
                },
                alternate: None,
            }
        }
    };
    let grid_n = grid_n.max(32);
    let problem = PlanarProblem::new(x, frame.clone());
    let solve = |k: i8| {
        let y = problem.triple(problem.best_angle(k, grid_n, refine_iters, offset), k);
        let objective = alignment_objective(x, &y).unwrap_or(f64::NAN);
        (y, objective)
    };
    let (pos, pos_obj) = solve(1);
    let (neg, neg_obj) = solve(-1);
    let branch_objectives = BranchObjectives {
        positive: pos_obj,
        negative: neg_obj,
    };
    let scale = x.scale();
    let unique = (pos_obj - neg_obj).abs() > TIE_TOL * scale * scale;
    let (y, objective, branch_k, other) = if pos_obj <= neg_obj {
        (pos, pos_obj, 1, neg)
    } else {
        (neg, neg_obj, -1, pos)
    };
    AlignmentResult {
        y,
        objective,
        branch_k,
        unique,
        plane_frame: Some(frame),
        branch_objectives,
        alternate: (!unique).then_some(other),
    }
}

/// Minimizes the alignment objective by an angular grid plus golden-section
/// refinement on both orientation branches, without the closed form.
pub fn oracle_alignment(x: &Triple, grid_n: usize, refine_iters: usize) -> AlignmentResult {
    oracle_alignment_with_offset(x, grid_n, refine_iters, 0.0)
}
