//! Randomized invariant suite behind `napoleon verify`.
//!
//! Every instance runs through the same battery of checks; each check keeps
//! a pass count and the largest residual it saw. Residuals are scale-free:
//! lengths are divided by the scale of the instance and objectives by its
//! square.

use std::f64::consts::TAU;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::alignment::{kkt_residual, optimal_equilateral_alignment, oracle_alignment, weiszfeld};
use crate::geometry::{
    centroid, double_outer_napoleon, equilaterality_residual_with_floor, fermat_point, is_collinear, napoleon,
    napoleon_compose, napoleon_iter, plane_frame, torricelli, wide_angle_vertex, Point, TransformKind, Triple,
    DEFAULT_TOL,
};

/// Thresholds shared by the verification report and the acceptance suite.
pub mod tolerances {
    /// Closed-form identities, relative to scale.
    pub const IDENTITY: f64 = 1e-10;
    pub const EQUILATERAL: f64 = 1e-10;
    /// Squared sides below this fraction of the squared input scale are
    /// indistinguishable from a point in double precision.
    pub const EQUILATERAL_FLOOR: f64 = 1e-4;
    pub const ORACLE_GAP_LOW: f64 = -1e-9;
    pub const ORACLE_GAP_HIGH: f64 = 1e-6;
    pub const ORACLE_ARGMIN: f64 = 1e-4;
    pub const KKT: f64 = 1e-8;
    pub const BRANCH_TIE: f64 = 1e-9;
    pub const PLANE_CONTAINMENT: f64 = 1e-10;
    pub const FERMAT: f64 = 1e-8;
    pub const ITERATION_DEPTH: usize = 6;
    pub const ORACLE_GRID: usize = 64;
    pub const ORACLE_REFINE: usize = 100;
    pub const WEISZFELD_TOL: f64 = 1e-12;
    pub const WEISZFELD_ITERS: usize = 2_000_000;
}

use tolerances as tol;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: &'static str,
    pub threshold: f64,
    pub evaluated: usize,
    pub passed: usize,
    pub max_residual: f64,
}

impl CheckSummary {
    fn new(name: &'static str, threshold: f64) -> Self {
        Self {
            name,
            threshold,
            evaluated: 0,
            passed: 0,
            max_residual: 0.0,
        }
    }

    fn record(&mut self, residual: f64, pass: bool) {
        self.evaluated += 1;
        if pass {
            self.passed += 1;
        }
        if residual.is_finite() {
            self.max_residual = self.max_residual.max(residual);
        }
    }

    fn below(&mut self, residual: f64) {
        self.record(residual, residual <= self.threshold);
    }

    pub fn ok(&self) -> bool {
        self.passed == self.evaluated
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub dimension: usize,
    pub instance_count: usize,
    pub random_instances: usize,
    pub injected_instances: usize,
    pub checks: Vec<CheckSummary>,
    pub all_passed: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn gaussian(rng: &mut impl Rng, d: usize) -> DVector<f64> {
    DVector::from_fn(d, |_, _| rng.sample(StandardNormal))
}

pub fn random_triple(rng: &mut impl Rng, d: usize) -> Triple {
    Triple::from_raw([gaussian(rng, d), gaussian(rng, d), gaussian(rng, d)])
}

/// Random orthonormal pair in `R^d`.
fn random_plane(rng: &mut impl Rng, d: usize) -> (DVector<f64>, DVector<f64>) {
    let u = gaussian(rng, d).normalize();
    let w = gaussian(rng, d);
    let v = (&w - &u * u.dot(&w)).normalize();
    (u, v)
}

pub fn random_equilateral(rng: &mut impl Rng, d: usize) -> Triple {
    let (u, v) = random_plane(rng, d);
    let center = gaussian(rng, d);
    let radius = 0.5 + rng.random::<f64>();
    let phase = rng.random::<f64>() * TAU;
    let orient = if rng.random::<bool>() { 1.0 } else { -1.0 };
    let vertex = |i: usize| {
        let a = phase + orient * TAU * i as f64 / 3.0;
        &center + &u * (radius * a.cos()) + &v * (radius * a.sin())
    };
    Triple::from_raw([vertex(0), vertex(1), vertex(2)])
}

/// Three points on a random line, offset by `offset` along a perpendicular.
pub fn random_collinear(rng: &mut impl Rng, d: usize, offset: f64) -> Triple {
    let (u, v) = random_plane(rng, d);
    let base = gaussian(rng, d);
    let ts = [
        rng.random::<f64>() * 2.0 - 1.0,
        rng.random::<f64>() * 2.0 - 1.0,
        rng.random::<f64>() * 2.0 - 1.0,
    ];
    Triple::from_raw([&base + &u * ts[0], &base + &u * ts[1], &base + &u * ts[2] + &v * offset])
}

pub fn random_trivial(rng: &mut impl Rng, d: usize) -> Triple {
    Triple::repeated(&Point::from_raw(gaussian(rng, d)))
}

struct Suite {
    centroid: CheckSummary,
    displacement: CheckSummary,
    equilateral: CheckSummary,
    lemma2: CheckSummary,
    lemma3: CheckSummary,
    lemma4: CheckSummary,
    oracle_gap: CheckSummary,
    oracle_argmin: CheckSummary,
    kkt: CheckSummary,
    branch: CheckSummary,
    plane: CheckSummary,
    fermat: CheckSummary,
}

impl Suite {
    fn new() -> Self {
        Self {
            centroid: CheckSummary::new("centroid_preservation", tol::IDENTITY),
            displacement: CheckSummary::new("equal_displacement", tol::IDENTITY),
            equilateral: CheckSummary::new("napoleon_equilateral", tol::EQUILATERAL),
            lemma2: CheckSummary::new("equilateral_napoleon_identities", tol::IDENTITY),
            lemma3: CheckSummary::new("iteration_shortcuts", tol::IDENTITY),
            lemma4: CheckSummary::new("double_outer_closed_form", tol::IDENTITY),
            oracle_gap: CheckSummary::new("oracle_objective_gap", tol::ORACLE_GAP_HIGH),
            oracle_argmin: CheckSummary::new("oracle_argmin_agreement", tol::ORACLE_ARGMIN),
            kkt: CheckSummary::new("kkt_residual", tol::KKT),
            branch: CheckSummary::new("branch_ordering", tol::BRANCH_TIE),
            plane: CheckSummary::new("plane_containment", tol::PLANE_CONTAINMENT),
            fermat: CheckSummary::new("fermat_vs_weiszfeld", tol::FERMAT),
        }
    }

    fn into_checks(self) -> Vec<CheckSummary> {
        vec![
            self.centroid,
            self.displacement,
            self.equilateral,
            self.lemma2,
            self.lemma3,
            self.lemma4,
            self.oracle_gap,
            self.oracle_argmin,
            self.kkt,
            self.branch,
            self.plane,
            self.fermat,
        ]
    }

    fn run(&mut self, x: &Triple) {
        const KINDS: [TransformKind; 2] = [TransformKind::Inner, TransformKind::Outer];
        let s = x.scale();
        let rel = |v: f64| if s > 0.0 { v / s } else { v };
        let rel2 = |v: f64| if s > 0.0 { v / (s * s) } else { v };
        let c = centroid(x);

        let mut centroid_err: f64 = 0.0;
        let mut displacement_err: f64 = 0.0;
        let mut equilateral_err: f64 = 0.0;
        for kind in KINDS {
            let t = torricelli(x, kind);
            let n = napoleon(x, kind);
            for y in [&t, &n] {
                centroid_err = centroid_err.max(rel(centroid(y).distance(&c)));
            }
            let d = [0, 1, 2].map(|i| t.vertex(i).distance(x.vertex(i)));
            let spread = d.iter().fold(f64::MIN, |a, &b| a.max(b)) - d.iter().fold(f64::MAX, |a, &b| a.min(b));
            displacement_err = displacement_err.max(rel(spread));
            equilateral_err =
                equilateral_err.max(equilaterality_residual_with_floor(&n, tol::EQUILATERAL_FLOOR * s * s));
        }
        self.centroid.below(centroid_err);
        self.displacement.below(displacement_err);
        self.equilateral.below(equilateral_err);

        let e = napoleon(x, TransformKind::Outer);
        let es = e.scale();
        let ce = centroid(&e);
        let collapse = napoleon(&e, TransformKind::Inner).max_vertex_distance(&Triple::repeated(&ce));
        let reflect = napoleon(&e, TransformKind::Outer).max_vertex_distance(&e.map(|v| ce.as_vector() * 2.0 - v));
        let lemma2 = collapse.max(reflect);
        self.lemma2.below(if es > 0.0 { lemma2 / es } else { lemma2 });

        let mut iter_err: f64 = 0.0;
        for kind in KINDS {
            for k in 0..=tol::ITERATION_DEPTH {
                let fast = napoleon_iter(x, kind, k);
                let literal = napoleon_compose(x, kind, k);
                iter_err = iter_err.max(rel(fast.max_vertex_distance(&literal)));
            }
        }
        self.lemma3.below(iter_err);

        let double = double_outer_napoleon(x);
        self.lemma4.below(rel(double.max_vertex_distance(&napoleon_compose(
            x,
            TransformKind::Outer,
            2,
        ))));

        let closed = optimal_equilateral_alignment(x);
        let oracle = oracle_alignment(x, tol::ORACLE_GRID, tol::ORACLE_REFINE);
        let gap = rel2(oracle.objective - closed.objective);
        self.oracle_gap
            .record(gap.abs(), (tol::ORACLE_GAP_LOW..=tol::ORACLE_GAP_HIGH).contains(&gap));
        if closed.unique {
            self.oracle_argmin.below(rel(oracle.y.max_vertex_distance(&closed.y)));
        }

        match kkt_residual(x, &closed.y) {
            Ok(diag) => self.kkt.below(diag.gradient_residual),
            Err(_) => self.kkt.record(f64::NAN, false),
        }

        let collinear = is_collinear(x, DEFAULT_TOL);
        let tie = rel2(closed.branch_objectives.gap());
        if collinear {
            self.branch
                .record(tie.abs(), tie.abs() <= tol::BRANCH_TIE && !closed.unique);
        } else {
            let spread = |kind| {
                let t = torricelli(x, kind);
                (0..3)
                    .map(|i| (t.vertex(i).as_vector() - x.vertex(i).as_vector()).norm_squared())
                    .sum::<f64>()
            };
            self.branch.record(
                0.0,
                spread(TransformKind::Inner) < spread(TransformKind::Outer) && closed.unique,
            );
        }

        if x.dim() >= 3 {
            let off_plane = match plane_frame(x, DEFAULT_TOL) {
                Ok(frame) => closed
                    .y
                    .vertices()
                    .iter()
                    .map(|v| {
                        frame
                            .normal_component(&(v.as_vector() - x.vertex(0).as_vector()))
                            .norm()
                    })
                    .fold(0.0, f64::max),
                Err(_) => closed.y.max_vertex_distance(x),
            };
            self.plane.below(rel(off_plane));
        }

        if s > 0.0 {
            let fermat = fermat_point(x, DEFAULT_TOL);
            let oracle = weiszfeld(x, tol::WEISZFELD_TOL, tol::WEISZFELD_ITERS);
            match (fermat, oracle) {
                (Ok(f), Ok(w)) => {
                    let err = rel(f.distance(&w));
                    let rule = match (collinear, wide_angle_vertex(x)) {
                        (false, Some(i)) => &f == x.vertex(i),
                        _ => true,
                    };
                    self.fermat.record(err, err <= tol::FERMAT && rule);
                }
                _ => self.fermat.record(f64::NAN, false),
            }
        }
    }
}

/// Edge cases appended to every run: collinear, trivial, near-collinear and
/// equilateral.
pub fn injected_cases(rng: &mut impl Rng, d: usize) -> Vec<Triple> {
    vec![
        random_collinear(rng, d, 0.0),
        random_trivial(rng, d),
        random_collinear(rng, d, 1e-12),
        random_equilateral(rng, d),
    ]
}

/// Runs the invariant suite on `n` standard normal triples in `R^d` plus the
/// injected edge cases. Deterministic in `(n, d, seed)`.
pub fn run_verification(n: usize, d: usize, seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances: Vec<Triple> = (0..n).map(|_| random_triple(&mut rng, d)).collect();
    let injected = injected_cases(&mut rng, d);
    let injected_instances = injected.len();
    instances.extend(injected);

    let mut suite = Suite::new();
    for x in &instances {
        suite.run(x);
    }
    let checks = suite.into_checks();
    let all_passed = checks.iter().all(CheckSummary::ok);
    VerificationReport {
        seed,
        dimension: d,
        instance_count: instances.len(),
        random_instances: n,
        injected_instances,
        checks,
        all_passed,
    }
}
