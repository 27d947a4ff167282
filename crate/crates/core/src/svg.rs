//! SVG drawings of a triangle and its Torricelli/Napoleon constructions.

use std::fmt::Write;
use std::str::FromStr;

use crate::geometry::{
    centroid, double_outer_napoleon_with_tol, fermat_point, is_collinear, napoleon_with_tol, plane_frame,
    torricelli_with_tol, wide_angle_vertex, TransformKind, Triple,
};

/// Which constructions to draw on top of each input triangle.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ShowSet {
    pub torricelli_inner: bool,
    pub torricelli_outer: bool,
    pub napoleon_inner: bool,
    pub napoleon_outer: bool,
    pub double: bool,
    pub fermat: bool,
}

impl FromStr for ShowSet {
    type Err = String;

    /// Comma separated list, e.g. `napoleon+,napoleon-,fermat`. A name
    /// without sign (or with `±`) selects both kinds.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut set = ShowSet::default();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            match item {
                "torricelli+" => set.torricelli_inner = true,
                "torricelli-" => set.torricelli_outer = true,
                "torricelli" | "torricelli±" => {
                    set.torricelli_inner = true;
                    set.torricelli_outer = true;
                }
                "napoleon+" => set.napoleon_inner = true,
                "napoleon-" => set.napoleon_outer = true,
                "napoleon" | "napoleon±" => {
                    set.napoleon_inner = true;
                    set.napoleon_outer = true;
                }
                "double" => set.double = true,
                "fermat" => set.fermat = true,
                "all" => {
                    set = ShowSet {
                        torricelli_inner: true,
                        torricelli_outer: true,
                        napoleon_inner: true,
                        napoleon_outer: true,
                        double: true,
                        fermat: true,
                    }
                }
                other => return Err(format!("unknown construction '{other}'")),
            }
        }
        Ok(set)
    }
}

struct Polygon {
    class: &'static str,
    points: [[f64; 2]; 3],
}

struct Figure {
    id: String,
    polygons: Vec<Polygon>,
    segments: Vec<[[f64; 2]; 2]>,
    centroid: [f64; 2],
    fermat: Option<[f64; 2]>,
    labels: [[f64; 2]; 3],
}

const STYLE: &str = "\
    polygon { fill: none; stroke-width: 1.5; vector-effect: non-scaling-stroke; }\n\
    line { stroke: #888; stroke-width: 0.75; stroke-dasharray: 2 2; vector-effect: non-scaling-stroke; }\n\
    .original { stroke: #000; stroke-width: 2; }\n\
    .torricelli-inner { stroke: #1f77b4; stroke-dasharray: 6 3; }\n\
    .torricelli-outer { stroke: #d62728; stroke-dasharray: 6 3; }\n\
    .napoleon-inner { stroke: #1f77b4; }\n\
    .napoleon-outer { stroke: #d62728; }\n\
    .double { stroke: #2ca02c; stroke-width: 2.5; stroke-dasharray: 1 3; }\n\
    .centroid { fill: #000; }\n\
    .fermat { fill: #ff7f0e; }\n";

/// Planar coordinates of `x`: the coordinates themselves in the plane,
/// otherwise frame coordinates about the centroid.
fn flatten(x: &Triple, all: &[&Triple], tol: f64) -> Option<Vec<[[f64; 2]; 3]>> {
    if x.dim() == 2 {
        return Some(
            all.iter()
                .map(|t| t.vertices().each_ref().map(|p| [p[0], p[1]]))
                .collect(),
        );
    }
    let frame = plane_frame(x, tol).ok()?;
    let origin = centroid(x).into_vector();
    Some(
        all.iter()
            .map(|t| {
                t.vertices()
                    .each_ref()
                    .map(|p| frame.project(&(p.as_vector() - &origin)))
            })
            .collect(),
    )
}

fn figure(id: &str, x: &Triple, show: &ShowSet, tol: f64) -> Option<Figure> {
    if x.is_trivial() {
        return None;
    }
    let mut classes = vec!["original"];
    let mut triples = vec![x.clone()];
    let mut add = |on: bool, class, y: Triple| {
        if on {
            classes.push(class);
            triples.push(y);
        }
    };
    add(
        show.torricelli_inner,
        "torricelli-inner",
        torricelli_with_tol(x, TransformKind::Inner, tol),
    );
    add(
        show.torricelli_outer,
        "torricelli-outer",
        torricelli_with_tol(x, TransformKind::Outer, tol),
    );
    add(
        show.napoleon_inner,
        "napoleon-inner",
        napoleon_with_tol(x, TransformKind::Inner, tol),
    );
    add(
        show.napoleon_outer,
        "napoleon-outer",
        napoleon_with_tol(x, TransformKind::Outer, tol),
    );
    add(show.double, "double", double_outer_napoleon_with_tol(x, tol));

    let fermat = if show.fermat { fermat_point(x, tol).ok() } else { None };
    let outer = torricelli_with_tol(x, TransformKind::Outer, tol);
    let c = Triple::repeated(&centroid(x));
    let mut all: Vec<&Triple> = triples.iter().collect();
    all.push(&c);
    all.push(&outer);
    let fermat_triple = fermat.as_ref().map(Triple::repeated);
    if let Some(f) = &fermat_triple {
        all.push(f);
    }
    let flat = flatten(x, &all, tol)?;
    let n = triples.len();

    let polygons = classes
        .iter()
        .zip(&flat[..n])
        .map(|(&class, &points)| Polygon { class, points })
        .collect();
    let mut segments = Vec::new();
    let concurrent = !is_collinear(x, tol) && wide_angle_vertex(x).is_none();
    if fermat.is_some() && concurrent {
        segments.extend(flat[0].iter().zip(&flat[n + 1]).map(|(&a, &b)| [a, b]));
    }
    Some(Figure {
        id: id.to_string(),
        polygons,
        segments,
        centroid: flat[n][0],
        fermat: fermat_triple.map(|_| flat[n + 2][0]),
        labels: flat[0],
    })
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Renders every non-trivial record into one SVG document. Trivial triples
/// are skipped and their ids returned alongside the document.
pub fn render_svg(records: &[(String, Triple)], show: &ShowSet, tol: f64) -> (String, Vec<String>) {
    let mut skipped = Vec::new();
    let mut figures = Vec::new();
    for (id, x) in records {
        match figure(id, x, show, tol) {
            Some(f) => figures.push(f),
            None => skipped.push(id.clone()),
        }
    }

    // bounding box in screen coordinates (y flipped)
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    let mut grow = |p: [f64; 2]| {
        let q = [p[0], -p[1]];
        for k in 0..2 {
            lo[k] = lo[k].min(q[k]);
            hi[k] = hi[k].max(q[k]);
        }
    };
    for f in &figures {
        f.polygons.iter().flat_map(|p| p.points).for_each(&mut grow);
        f.segments.iter().flatten().copied().for_each(&mut grow);
        grow(f.centroid);
        if let Some(p) = f.fermat {
            grow(p);
        }
    }
    if figures.is_empty() {
        lo = [0.0, 0.0];
        hi = [1.0, 1.0];
    }
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let margin = 0.05 * extent;
    let (w, h) = (hi[0] - lo[0] + 2.0 * margin, hi[1] - lo[1] + 2.0 * margin);
    let marker = 0.01 * extent;
    let font = 0.04 * extent;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="800" height="{}">"#,
        fmt(lo[0] - margin),
        fmt(lo[1] - margin),
        fmt(w),
        fmt(h),
        (800.0 * h / w).round().max(1.0)
    );
    let _ = writeln!(out, "<style>\n{STYLE}</style>");
    for f in &figures {
        let _ = writeln!(out, r#"<g id="{}">"#, escape(&f.id));
        for p in &f.polygons {
            let pts: Vec<String> = p
                .points
                .iter()
                .map(|q| format!("{},{}", fmt(q[0]), fmt(-q[1])))
                .collect();
            let _ = writeln!(out, r#"  <polygon class="{}" points="{}"/>"#, p.class, pts.join(" "));
        }
        for [a, b] in &f.segments {
            let _ = writeln!(
                out,
                r#"  <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                fmt(a[0]),
                fmt(-a[1]),
                fmt(b[0]),
                fmt(-b[1])
            );
        }
        let _ = writeln!(
            out,
            r#"  <circle class="centroid" cx="{}" cy="{}" r="{}"/>"#,
            fmt(f.centroid[0]),
            fmt(-f.centroid[1]),
            fmt(marker)
        );
        if let Some(p) = f.fermat {
            let _ = writeln!(
                out,
                r#"  <circle class="fermat" cx="{}" cy="{}" r="{}"/>"#,
                fmt(p[0]),
                fmt(-p[1]),
                fmt(1.5 * marker)
            );
        }
        for (label, p) in ["A", "B", "C"].iter().zip(&f.labels) {
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" font-size="{}" font-family="sans-serif">{label}</text>"#,
                fmt(p[0] + marker),
                fmt(-p[1] - marker),
                fmt(font)
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    (out, skipped)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
