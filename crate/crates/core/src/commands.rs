//! Batch commands behind the CLI subcommands.
//!
//! Input files are read record by record: a malformed line or an invalid
//! triple is logged, counted in the returned [`BatchSummary`] and skipped.
//! Outputs are written in input order.

use std::fs;
use std::path::Path;

use log::{info, warn};
use serde::Serialize;

use crate::alignment::{optimal_equilateral_alignment_with_tol, oracle_alignment};
use crate::geometry::{
    fermat_point, napoleon_iter_with_tol, napoleon_with_tol, reduced_iterations, torricelli_with_tol,
    wide_angle_vertex, TransformKind, Triple,
};
use crate::io::{parse_lines, read_to_string, write_lines, IoError, TripleRecord};
use crate::svg::{render_svg, ShowSet};
use crate::verify::{run_verification, tolerances, VerificationReport};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BatchSummary {
    pub processed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformOp {
    Torricelli,
    Napoleon,
}

struct Batch {
    items: Vec<(TripleRecord, Triple)>,
    failed: usize,
}

impl Batch {
    fn load(input: &Path) -> Result<Self, IoError> {
        let text = read_to_string(input)?;
        let mut items = Vec::new();
        let mut failed = 0;
        for (line, parsed) in parse_lines(&text) {
            match parsed.and_then(|r| r.triple().map(|x| (r, x)).map_err(IoError::from)) {
                Ok(item) => items.push(item),
                Err(e) => {
                    warn!("{}: skipping line {line}: {e}", input.display());
                    failed += 1;
                }
            }
        }
        Ok(Self { items, failed })
    }

    fn summary(&self) -> BatchSummary {
        BatchSummary {
            processed: self.items.len(),
            failed: self.failed,
        }
    }
}

fn derived(record: &TripleRecord, id: String, y: &Triple) -> TripleRecord {
    TripleRecord {
        id,
        dimension: y.dim(),
        vertices: y.rows(),
        tags: record.tags.clone(),
    }
}

pub fn cmd_transform(
    input: &Path,
    kind: TransformKind,
    op: TransformOp,
    output: &Path,
    tol: f64,
) -> Result<BatchSummary, IoError> {
    let batch = Batch::load(input)?;
    let letter = match op {
        TransformOp::Torricelli => 'T',
        TransformOp::Napoleon => 'N',
    };
    let out: Vec<TripleRecord> = batch
        .items
        .iter()
        .map(|(r, x)| {
            let y = match op {
                TransformOp::Torricelli => torricelli_with_tol(x, kind, tol),
                TransformOp::Napoleon => napoleon_with_tol(x, kind, tol),
            };
            derived(r, format!("{}.{letter}{}", r.id, kind.symbol()), &y)
        })
        .collect();
    write_lines(output, &out)?;
    Ok(batch.summary())
}

/// `k` Napoleon iterations per record; ids are kept.
pub fn cmd_iterate(
    input: &Path,
    kind: TransformKind,
    k: usize,
    output: &Path,
    tol: f64,
) -> Result<BatchSummary, IoError> {
    let batch = Batch::load(input)?;
    let reduced = reduced_iterations(kind, k);
    if reduced != k {
        info!("N{}^{k} evaluated as N{}^{reduced}", kind.symbol(), kind.symbol());
    }
    let out: Vec<TripleRecord> = batch
        .items
        .iter()
        .map(|(r, x)| derived(r, r.id.clone(), &napoleon_iter_with_tol(x, kind, k, tol)))
        .collect();
    write_lines(output, &out)?;
    Ok(batch.summary())
}

#[derive(Debug, Serialize)]
pub struct BranchRecord {
    pub positive: f64,
    pub negative: f64,
}

#[derive(Debug, Serialize)]
pub struct AlignRecord {
    pub id: String,
    pub dimension: usize,
    pub vertices: Vec<Vec<f64>>,
    pub objective: f64,
    pub branch_k: i8,
    pub unique: bool,
    pub branch_objectives: BranchRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternate: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_objective: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
}

pub fn align_record(id: &str, x: &Triple, with_oracle: bool, tol: f64) -> AlignRecord {
    let r = optimal_equilateral_alignment_with_tol(x, tol);
    let oracle = with_oracle.then(|| oracle_alignment(x, tolerances::ORACLE_GRID, tolerances::ORACLE_REFINE));
    AlignRecord {
        id: id.to_string(),
        dimension: x.dim(),
        vertices: r.y.rows(),
        objective: r.objective,
        branch_k: r.branch_k,
        unique: r.unique,
        branch_objectives: BranchRecord {
            positive: r.branch_objectives.positive,
            negative: r.branch_objectives.negative,
        },
        alternate: r.alternate.as_ref().map(Triple::rows),
        oracle_objective: oracle.as_ref().map(|o| o.objective),
        gap: oracle.as_ref().map(|o| o.objective - r.objective),
    }
}

pub fn cmd_align(input: &Path, output: &Path, with_oracle: bool, tol: f64) -> Result<BatchSummary, IoError> {
    let batch = Batch::load(input)?;
    let out: Vec<AlignRecord> = batch
        .items
        .iter()
        .map(|(r, x)| align_record(&r.id, x, with_oracle, tol))
        .collect();
    write_lines(output, &out)?;
    Ok(batch.summary())
}

#[derive(Debug, Serialize)]
pub struct FermatRecord {
    pub id: String,
    pub point: Vec<f64>,
    pub wide_angle_vertex: Option<usize>,
}

pub fn cmd_fermat(input: &Path, output: &Path, tol: f64) -> Result<BatchSummary, IoError> {
    let mut batch = Batch::load(input)?;
    let mut out = Vec::new();
    let mut failed = 0;
    for (r, x) in &batch.items {
        match fermat_point(x, tol) {
            Ok(p) => out.push(FermatRecord {
                id: r.id.clone(),
                point: p.coords().to_vec(),
                wide_angle_vertex: wide_angle_vertex(x),
            }),
            Err(e) => {
                warn!("{}: {e}", r.id);
                failed += 1;
            }
        }
    }
    write_lines(output, &out)?;
    batch.failed += failed;
    Ok(BatchSummary {
        processed: out.len(),
        failed: batch.failed,
    })
}

/// Runs the invariant suite and writes the report. The caller decides the
/// exit status from [`VerificationReport::all_passed`].
pub fn cmd_verify(n: usize, d: usize, seed: u64, report_path: &Path) -> Result<VerificationReport, IoError> {
    let report = run_verification(n, d, seed);
    fs::write(report_path, report.to_json()).map_err(|e| IoError::io(report_path, e))?;
    Ok(report)
}

pub fn cmd_plot(input: &Path, output_svg: &Path, show: &ShowSet, tol: f64) -> Result<BatchSummary, IoError> {
    let batch = Batch::load(input)?;
    let records: Vec<(String, Triple)> = batch.items.iter().map(|(r, x)| (r.id.clone(), x.clone())).collect();
    let (svg, skipped) = render_svg(&records, show, tol);
    for id in &skipped {
        warn!("{id}: trivial triple, not drawn");
    }
    fs::write(output_svg, svg).map_err(|e| IoError::io(output_svg, e))?;
    Ok(BatchSummary {
        processed: records.len() - skipped.len(),
        failed: batch.failed + skipped.len(),
    })
}
