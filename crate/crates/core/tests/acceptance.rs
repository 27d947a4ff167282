//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with a
//! nonzero status if any criterion fails.
//!
//! Quantities that the library also computes (centroids, side lengths, angle
//! cosines, the double outer closed form) are recomputed here from raw
//! coordinates so that a bug in a shared helper cannot hide itself.

use std::process::ExitCode;
use std::time::Instant;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use napoleon::commands::cmd_verify;
use napoleon::io::{parse_triples, to_json_line, TripleRecord};
use napoleon::verify::{random_collinear, random_equilateral, random_triple};
use napoleon::*;

const KINDS: [TransformKind; 2] = [TransformKind::Inner, TransformKind::Outer];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn v(x: &Triple, i: usize) -> &DVector<f64> {
    x.vertex(i).as_vector()
}

fn mean(x: &Triple) -> DVector<f64> {
    (v(x, 0) + v(x, 1) + v(x, 2)) / 3.0
}

fn scale(x: &Triple) -> f64 {
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| (v(x, i) - v(x, j)).norm())
        .fold(0.0, f64::max)
}

fn sides_sq(x: &Triple) -> [f64; 3] {
    [(0, 1), (0, 2), (1, 2)].map(|(i, j)| (v(x, i) - v(x, j)).norm_squared())
}

/// Largest relative deviation of a squared side from the mean squared side.
fn side_spread(x: &Triple) -> f64 {
    let s = sides_sq(x);
    let m = (s[0] + s[1] + s[2]) / 3.0;
    if m == 0.0 {
        return 0.0;
    }
    s.iter().map(|a| (a - m).abs()).fold(0.0, f64::max) / m
}

fn max_dist(a: &Triple, b: &Triple) -> f64 {
    (0..3).map(|i| (v(a, i) - v(b, i)).norm()).fold(0.0, f64::max)
}

fn combine(a: &Triple, wa: f64, b: &Triple, wb: f64) -> Triple {
    let rows: Vec<Vec<f64>> = (0..3)
        .map(|i| (v(a, i) * wa + v(b, i) * wb).as_slice().to_vec())
        .collect();
    Triple::from_rows(&rows).unwrap()
}

fn repeated(p: &DVector<f64>) -> Triple {
    let row = p.as_slice().to_vec();
    Triple::from_rows(&[row.clone(), row.clone(), row]).unwrap()
}

fn sum_sq_displacement(x: &Triple, y: &Triple) -> f64 {
    (0..3).map(|i| (v(y, i) - v(x, i)).norm_squared()).sum()
}

/// Height of the vertex opposite the longest side, relative to that side.
fn relative_height(x: &Triple) -> f64 {
    let (i, j, k) = [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
        .into_iter()
        .max_by(|a, b| {
            (v(x, a.0) - v(x, a.1))
                .norm()
                .total_cmp(&(v(x, b.0) - v(x, b.1)).norm())
        })
        .unwrap();
    let side = v(x, j) - v(x, i);
    let len = side.norm();
    let w = v(x, k) - v(x, i);
    let along = w.dot(&side) / len;
    (w.norm_squared() - along * along).max(0.0).sqrt() / len
}

fn cosines(x: &Triple) -> [f64; 3] {
    std::array::from_fn(|i| {
        let a = v(x, (i + 1) % 3) - v(x, i);
        let b = v(x, (i + 2) % 3) - v(x, i);
        a.dot(&b) / (a.norm() * b.norm())
    })
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// 1. Napoleon triangles are equilateral.
fn napoleon_theorem() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for d in [2, 3, 5] {
        for _ in 0..10_000 {
            let x = random_triple(&mut rng, d);
            for kind in KINDS {
                worst = worst.max(side_spread(&napoleon(&x, kind)));
                count += 1;
            }
        }
    }
    outcome(
        worst <= 1e-10,
        format!("{count} Napoleon triangles, max side spread {worst:.3e} (tol 1e-10)"),
    )
}

/// 2. Centroids coincide; Torricelli displacements are equal.
fn remark_centroids_and_displacements() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let (mut centroid_err, mut disp_err): (f64, f64) = (0.0, 0.0);
    let mut count = 0;
    for d in [2, 3, 5] {
        for _ in 0..10_000 {
            let x = random_triple(&mut rng, d);
            let s = scale(&x);
            let c = mean(&x);
            for kind in KINDS {
                let t = torricelli(&x, kind);
                let n = napoleon(&x, kind);
                centroid_err = centroid_err
                    .max((mean(&t) - &c).norm() / s)
                    .max((mean(&n) - &c).norm() / s);
                let dist: Vec<f64> = (0..3).map(|i| (v(&t, i) - v(&x, i)).norm()).collect();
                let hi = dist.iter().cloned().fold(f64::MIN, f64::max);
                let lo = dist.iter().cloned().fold(f64::MAX, f64::min);
                if hi > 0.0 {
                    disp_err = disp_err.max((hi - lo) / hi);
                }
            }
            count += 1;
        }
    }
    outcome(
        centroid_err <= 1e-10 && disp_err <= 1e-10,
        format!("{count} triples, centroid drift {centroid_err:.3e}/scale, displacement spread {disp_err:.3e} rel (tol 1e-10)"),
    )
}

/// 3. Inner collapse and outer reflection of equilateral input.
fn equilateral_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let (mut collapse, mut reflect): (f64, f64) = (0.0, 0.0);
    for j in 0..1_000 {
        let e = random_equilateral(&mut rng, [2, 3, 5][j % 3]);
        let s = scale(&e);
        let c = mean(&e);
        collapse = collapse.max(max_dist(&napoleon(&e, TransformKind::Inner), &repeated(&c)) / s);
        let reflected = combine(&repeated(&c), 2.0, &e, -1.0);
        reflect = reflect.max(max_dist(&napoleon(&e, TransformKind::Outer), &reflected) / s);
    }
    outcome(
        collapse <= 1e-10 && reflect <= 1e-10,
        format!(
            "1000 equilaterals, N+ to centroid {collapse:.3e}, N- to reflection {reflect:.3e} (x scale, tol 1e-10)"
        ),
    )
}

/// 4. Iteration shortcuts.
fn iteration_shortcuts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let (mut shortcut, mut collapse): (f64, f64) = (0.0, 0.0);
    for j in 0..1_000 {
        let x = random_triple(&mut rng, [2, 3, 5][j % 3]);
        let s = scale(&x);
        for kind in KINDS {
            for k in 0..=6 {
                let mut literal = x.clone();
                for _ in 0..k {
                    literal = napoleon(&literal, kind);
                }
                shortcut = shortcut.max(max_dist(&napoleon_iter(&x, kind, k), &literal) / s);
            }
        }
        let twice = napoleon(&napoleon(&x, TransformKind::Inner), TransformKind::Inner);
        collapse = collapse.max(max_dist(&twice, &repeated(&mean(&x))) / s);
    }
    outcome(
        shortcut <= 1e-10 && collapse <= 1e-10,
        format!("1000 triples, k<=6 shortcut error {shortcut:.3e} rel, N+^2 to centroid {collapse:.3e} (tol 1e-10)"),
    )
}

/// 5. Double outer Napoleon closed form.
fn double_outer_closed_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let (mut composed, mut library): (f64, f64) = (0.0, 0.0);
    for j in 0..10_000 {
        let x = random_triple(&mut rng, [2, 3, 5][j % 3]);
        let s = scale(&x);
        let closed = combine(&x, 2.0 / 3.0, &torricelli(&x, TransformKind::Inner), 1.0 / 3.0);
        let twice = napoleon(&napoleon(&x, TransformKind::Outer), TransformKind::Outer);
        composed = composed.max(max_dist(&twice, &closed) / s);
        library = library.max(max_dist(&double_outer_napoleon(&x), &closed) / s);
    }
    outcome(
        composed <= 1e-10 && library <= 1e-10,
        format!("10000 triples, N-(N-(x)) vs closed form {composed:.3e}, library {library:.3e} rel (tol 1e-10)"),
    )
}

/// 6. Optimal equilateral alignment against the independent oracle.
fn alignment_optimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let (mut lo, mut hi, mut argmin, mut kkt): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    let mut count = 0;
    for d in [2, 3] {
        while count < if d == 2 { 1_000 } else { 2_000 } {
            let x = random_triple(&mut rng, d);
            if relative_height(&x) <= 1e-6 {
                continue;
            }
            let closed = optimal_equilateral_alignment(&x);
            let oracle = oracle_alignment(&x, 64, 100);
            let own_objective = sum_sq_displacement(&x, &closed.y);
            let gap = oracle.objective - own_objective;
            lo = lo.min(gap);
            hi = hi.max(gap);
            argmin = argmin.max(max_dist(&oracle.y, &closed.y) / scale(&x));
            kkt = kkt.max(
                kkt_residual(&x, &closed.y)
                    .map(|k| k.gradient_residual)
                    .unwrap_or(f64::INFINITY),
            );
            count += 1;
        }
    }
    outcome(
        lo >= -1e-9 && hi <= 1e-6 && argmin <= 1e-4 && kkt <= 1e-8,
        format!(
            "{count} triples (d=2,3), oracle gap in [{lo:.3e}, {hi:.3e}] (need [-1e-9, 1e-6]), argmin {argmin:.3e}/scale (tol 1e-4), KKT {kkt:.3e} (tol 1e-8)"
        ),
    )
}

/// 7. Inner branch strictly better except on collinear input.
fn branch_ordering() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut strict = true;
    let mut min_margin = f64::INFINITY;
    let mut proper = 0;
    while proper < 1_000 {
        let x = random_triple(&mut rng, 2 + proper % 2);
        if relative_height(&x) <= 1e-6 {
            continue;
        }
        let inner = sum_sq_displacement(&x, &torricelli(&x, TransformKind::Inner));
        let outer = sum_sq_displacement(&x, &torricelli(&x, TransformKind::Outer));
        strict &= inner < outer;
        min_margin = min_margin.min(outer - inner);
        proper += 1;
    }
    let mut tie: f64 = 0.0;
    let mut flagged = true;
    for j in 0..100 {
        let x = random_collinear(&mut rng, [2, 3, 5][j % 3], 0.0);
        let inner = sum_sq_displacement(&x, &torricelli(&x, TransformKind::Inner));
        let outer = sum_sq_displacement(&x, &torricelli(&x, TransformKind::Outer));
        tie = tie.max((inner - outer).abs());
        flagged &= !optimal_equilateral_alignment(&x).unique;
    }
    outcome(
        strict && tie <= 1e-9 && flagged,
        format!(
            "1000 proper triples inner<outer: {strict} (min margin {min_margin:.3e}); 100 collinear |inner-outer| {tie:.3e} (tol 1e-9), all non-unique: {flagged}"
        ),
    )
}

/// 8. Fermat point against Weiszfeld, and the wide angle rule.
fn fermat_point_rule() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut err: f64 = 0.0;
    let mut rule_ok = true;
    let mut wide = 0;
    for j in 0..1_000 {
        let x = random_triple(&mut rng, [2, 3, 5][j % 3]);
        let f = fermat_point(&x, DEFAULT_TOL).unwrap();
        let w = weiszfeld(&x, 1e-12, 2_000_000).unwrap();
        err = err.max((f.as_vector() - w.as_vector()).norm() / scale(&x));
        let c = cosines(&x);
        let expected = (0..3).find(|&i| c[i] <= -0.5 + 1e-12);
        let fired = wide_angle_vertex(&x);
        rule_ok &= fired == expected;
        if let Some(i) = expected {
            wide += 1;
            rule_ok &= f.as_vector() == v(&x, i);
        }
    }
    outcome(
        err <= 1e-8 && rule_ok,
        format!("1000 triples ({wide} with a >=120 degree angle), Weiszfeld distance {err:.3e}/scale (tol 1e-8), vertex rule exact: {rule_ok}"),
    )
}

/// 9. Deterministic reports and exact record round trip.
fn determinism_and_round_trip() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    cmd_verify(200, 3, 9, &a).unwrap();
    cmd_verify(200, 3, 9, &b).unwrap();
    let identical = std::fs::read(&a).unwrap() == std::fs::read(&b).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let records: Vec<TripleRecord> = (0..1_000)
        .map(|j| {
            let d = 2 + j % 4;
            let rows: Vec<Vec<f64>> = (0..3)
                .map(|_| {
                    (0..d)
                        .map(|_| {
                            let m: f64 = rng.random_range(-1.0..1.0);
                            m * 10f64.powi(rng.random_range(-300..300))
                        })
                        .collect()
                })
                .collect();
            TripleRecord::from_triple(format!("r{j}-☃"), &Triple::from_rows(&rows).unwrap())
        })
        .collect();
    let path = dir.path().join("records.jsonl");
    napoleon::io::write_triples(&path, &records).unwrap();
    let back = napoleon::io::read_triples(&path).unwrap();
    let exact = back.len() == records.len()
        && back.iter().zip(&records).all(|(p, q)| {
            p.id == q.id
                && p.vertices
                    .iter()
                    .flatten()
                    .zip(q.vertices.iter().flatten())
                    .all(|(a, b)| a.to_bits() == b.to_bits())
        });
    let text: String = records.iter().map(|r| to_json_line(r) + "\n").collect();
    let reparsed = parse_triples(&text).map(|r| r == records).unwrap_or(false);
    outcome(
        identical && exact && reparsed,
        format!(
            "verify report byte-identical: {identical}; 1000 records bit-exact after write/read: {}",
            exact && reparsed
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("napoleon triangles equilateral", napoleon_theorem),
        ("centroids and displacements", remark_centroids_and_displacements),
        ("equilateral collapse and reflection", equilateral_identities),
        ("iteration shortcuts", iteration_shortcuts),
        ("double outer closed form", double_outer_closed_form),
        ("alignment optimality", alignment_optimality),
        ("branch ordering", branch_ordering),
        ("fermat point", fermat_point_rule),
        ("determinism and round trip", determinism_and_round_trip),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "{status} [{}] {name}: {} ({:.1}s)",
            i + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
