//! Serializable views of solver, oracle and harness results.
//!
//! Row and dimension numbers in reports are 1-based and objective values are
//! in the user's sense (a `min:` problem reports its minimum).

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::geometry::{self, Bodd};
use crate::harness::{ComparisonRecord, Ensemble, Statistics, RESCALE_FACTORS};
use crate::model::{canonicalize, ConstraintClass, Problem};
use crate::oracle::{OracleResult, OracleStatus};
use crate::solver::{SolveOutcome, SolverOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}` (json, csv, text)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodmpReport {
    pub index: usize,
    pub distance: f64,
    pub point: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionReport {
    pub dim: usize,
    pub row: usize,
    pub class: ConstraintClass,
    pub e: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub row: usize,
    pub name: String,
    pub amount: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub residual: Option<f64>,
    pub violations: Vec<ViolationReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimensions: Option<Vec<usize>>,
    pub x: Option<Vec<f64>>,
    pub z: Option<f64>,
    pub active_rows: Vec<usize>,
    pub bodmp: Option<BodmpReport>,
    pub selections: Vec<SelectionReport>,
    pub diagnostics: Diagnostics,
    pub options: SolverOptions,
}

impl SolveReport {
    /// `problem` must be the problem that produced `outcome`.
    pub fn new(problem: &Problem, outcome: &SolveOutcome, options: &SolverOptions) -> Self {
        let mut report = SolveReport {
            status: outcome.status().to_string(),
            dimension: None,
            dimensions: None,
            x: None,
            z: None,
            active_rows: Vec::new(),
            bodmp: None,
            selections: Vec::new(),
            diagnostics: Diagnostics { residual: None, violations: Vec::new() },
            options: *options,
        };
        match outcome {
            SolveOutcome::Solved(s) => {
                report.x = Some(s.x.clone());
                report.z = Some(problem.reported_objective(s.z));
                report.active_rows = s.active.basis_rows.iter().map(|r| r + 1).collect();
                report.bodmp = s.bodmp.as_ref().map(|b| BodmpReport {
                    index: b.row + 1,
                    distance: b.distance,
                    point: b.point.clone(),
                });
                let np = canonicalize(problem).expect("a solved problem is valid");
                let origin = vec![0.0; problem.dimension()];
                let point = s.bodmp.as_ref().map_or(origin.as_slice(), |b| b.point.as_slice());
                report.selections = s
                    .active
                    .basis_rows
                    .iter()
                    .enumerate()
                    .map(|(dim, &row)| {
                        let r = &np.rows[row];
                        SelectionReport {
                            dim: dim + 1,
                            row: row + 1,
                            class: r.class,
                            e: geometry::limiting_distance(&r.coeffs, &r.unit_normal, point),
                        }
                    })
                    .collect();
                report.diagnostics.residual = Some(s.residual);
                if let Some(f) = &s.feasibility {
                    report.diagnostics.violations = f
                        .violations
                        .iter()
                        .map(|v| ViolationReport {
                            row: v.row + 1,
                            name: problem.label(v.row).to_string(),
                            amount: v.amount,
                        })
                        .collect();
                }
            }
            SolveOutcome::Unbounded { dimension } => report.dimension = Some(dimension + 1),
            SolveOutcome::DegenerateSelection { dimensions } => {
                report.dimensions = Some(dimensions.iter().map(|d| d + 1).collect())
            }
            SolveOutcome::SingularBasis { basis_rows } => {
                report.active_rows = basis_rows.iter().map(|r| r + 1).collect()
            }
        }
        report
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub method: String,
    pub status: OracleStatus,
    pub x: Option<Vec<f64>>,
    pub z: Option<f64>,
    pub active_rows: Vec<usize>,
    pub vertex_count: usize,
}

impl OracleReport {
    pub fn new(problem: &Problem, method: &str, result: &OracleResult) -> Self {
        OracleReport {
            method: method.to_string(),
            status: result.status,
            x: result.x.clone(),
            z: result.z.map(|z| problem.reported_objective(z)),
            active_rows: result.active_rows.iter().map(|r| r + 1).collect(),
            vertex_count: result.vertex_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub heuristic: SolveReport,
    pub oracle: Option<OracleReport>,
    pub oracle_error: Option<String>,
    pub z_gap: Option<f64>,
    pub relative_gap: Option<f64>,
    pub active_set_match: bool,
    pub status_consistent: bool,
    pub max_violation: Option<f64>,
    pub direction_flip: bool,
    pub rescale_flips: [bool; 2],
    pub objective_scale_flip: bool,
}

impl CompareReport {
    /// Gaps stay in maximization form so that a positive gap always means
    /// the heuristic fell short.
    pub fn new(problem: &Problem, record: &ComparisonRecord, options: &SolverOptions) -> Self {
        let method = record.oracle_method.short_name();
        CompareReport {
            heuristic: SolveReport::new(problem, &record.heuristic, options),
            oracle: record.oracle.as_ref().map(|o| OracleReport::new(problem, method, o)),
            oracle_error: record.oracle_error.clone(),
            z_gap: record.z_gap,
            relative_gap: record.relative_gap,
            active_set_match: record.active_set_match,
            status_consistent: record.status_consistent,
            max_violation: record.max_violation,
            direction_flip: record.direction_flip,
            rescale_flips: record.rescale_flips,
            objective_scale_flip: record.objective_scale_flip,
        }
    }
}

/// Pretty JSON with keys in declaration order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// One flattened line per ensemble record.
#[derive(Debug, Clone, PartialEq, Serialize)]
struct CsvRecord<'a> {
    id: &'a str,
    heuristic_status: &'a str,
    heuristic_z: Option<f64>,
    basis_rows: String,
    oracle_method: &'a str,
    oracle_status: &'a str,
    oracle_z: Option<f64>,
    z_gap: Option<f64>,
    relative_gap: Option<f64>,
    active_set_match: bool,
    status_consistent: bool,
    max_violation: Option<f64>,
    direction_flip: bool,
    rescale_flip_down: bool,
    rescale_flip_up: bool,
    objective_scale_flip: bool,
    heuristic_micros: u64,
    oracle_micros: u64,
}

pub fn records_to_csv(records: &[ComparisonRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header_written = false;
    for r in records {
        let solution = r.heuristic.solution();
        let row = CsvRecord {
            id: &r.id,
            heuristic_status: r.heuristic.status(),
            heuristic_z: solution.map(|s| s.z),
            basis_rows: solution
                .map(|s| s.active.basis_rows.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join(";"))
                .unwrap_or_default(),
            oracle_method: r.oracle_method.short_name(),
            oracle_status: match r.oracle.as_ref().map(|o| o.status) {
                Some(OracleStatus::Optimal) => "optimal",
                Some(OracleStatus::Infeasible) => "infeasible",
                Some(OracleStatus::Unbounded) => "unbounded",
                None => "error",
            },
            oracle_z: r.oracle.as_ref().and_then(|o| o.z),
            z_gap: r.z_gap,
            relative_gap: r.relative_gap,
            active_set_match: r.active_set_match,
            status_consistent: r.status_consistent,
            max_violation: r.max_violation,
            direction_flip: r.direction_flip,
            rescale_flip_down: r.rescale_flips[0],
            rescale_flip_up: r.rescale_flips[1],
            objective_scale_flip: r.objective_scale_flip,
            heuristic_micros: r.heuristic_micros,
            oracle_micros: r.oracle_micros,
        };
        w.serialize(row).expect("csv into memory");
        header_written = true;
    }
    if !header_written {
        // an empty ensemble still gets a header
        w.write_record([
            "id", "heuristic_status", "heuristic_z", "basis_rows", "oracle_method", "oracle_status",
            "oracle_z", "z_gap", "relative_gap", "active_set_match", "status_consistent",
            "max_violation", "direction_flip", "rescale_flip_down", "rescale_flip_up",
            "objective_scale_flip", "heuristic_micros", "oracle_micros",
        ])
        .expect("csv into memory");
    }
    String::from_utf8(w.into_inner().expect("csv into memory")).expect("csv is utf-8")
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.4}")).collect();
    format!("({})", parts.join(", "))
}

/// The per-row classification table: coefficients, sense, `b`, the BODD
/// `d_j`, the angle to the objective and the class.
pub fn classification_table(problem: &Problem) -> String {
    let mut out = String::new();
    let Ok(np) = canonicalize(problem) else {
        return out;
    };
    let n = problem.dimension();
    let _ = writeln!(out, "v_o = {}", fmt_vec(&np.objective_unit));
    let _ = write!(out, "{:<8}", "row");
    for k in 0..n {
        let _ = write!(out, "{:>9}", format!("x{}", k + 1));
    }
    let _ = writeln!(out, "{:>6}{:>10}{:>11}{:>10}  type", "", "b", "d_j", "alpha");
    let bodds = geometry::bodd_table(&np);
    for (row, bodd) in np.rows.iter().zip(bodds) {
        let _ = write!(out, "{:<8}", problem.label(row.index));
        for a in &row.coeffs {
            let _ = write!(out, "{a:>9.4}");
        }
        let d = match bodd {
            Bodd::Crossing(d) => format!("{d:.3}"),
            Bodd::NotCrossing => "-".to_string(),
        };
        let class = match row.class {
            ConstraintClass::Inward => "inward",
            ConstraintClass::Outward => "outward",
        };
        let _ = writeln!(
            out,
            "{:>6}{:>10.4}{:>11}{:>10.3}  {class}",
            row.stored_sense().symbol(),
            row.rhs,
            d,
            row.angle
        );
    }
    out
}

pub fn solve_text(problem: &Problem, report: &SolveReport) -> String {
    let mut out = classification_table(problem);
    let _ = writeln!(out);
    if let Some(b) = &report.bodmp {
        let _ = writeln!(
            out,
            "BODMP: {} at distance {:.4}, point {}",
            problem.label(b.index - 1),
            b.distance,
            fmt_vec(&b.point)
        );
    } else if report.status == "solved" {
        let _ = writeln!(out, "BODMP: none (limits measured from the origin)");
    }
    for s in &report.selections {
        let _ = writeln!(out, "x{} limited by {} ({:?}, e = {:.4})", s.dim, problem.label(s.row - 1), s.class, s.e);
    }
    let _ = writeln!(out, "status: {}", report.status);
    if let Some(d) = report.dimension {
        let _ = writeln!(out, "no constraint limits x{d}");
    }
    if let Some(ds) = &report.dimensions {
        let _ = writeln!(out, "no distinct limiting rows for dimensions {ds:?}");
    }
    if let (Some(x), Some(z)) = (&report.x, report.z) {
        let _ = writeln!(out, "x = {}", fmt_vec(x));
        let _ = writeln!(out, "z = {z:.4}");
    }
    if let Some(r) = report.diagnostics.residual {
        let _ = writeln!(out, "residual = {r:.3e}");
    }
    for v in &report.diagnostics.violations {
        let _ = writeln!(out, "violates {} by {:.4}", v.name, v.amount);
    }
    out
}

pub fn oracle_text(report: &OracleReport) -> String {
    let mut out = format!("{} oracle: {:?}\n", report.method, report.status);
    if let (Some(x), Some(z)) = (&report.x, report.z) {
        let _ = writeln!(out, "x = {}", fmt_vec(x));
        let _ = writeln!(out, "z = {z:.6}");
        let _ = writeln!(out, "binding rows: {:?}", report.active_rows);
    }
    out
}

pub fn compare_text(problem: &Problem, report: &CompareReport) -> String {
    let mut out = solve_text(problem, &report.heuristic);
    let _ = writeln!(out);
    match (&report.oracle, &report.oracle_error) {
        (Some(o), _) => out.push_str(&oracle_text(o)),
        (None, Some(e)) => {
            let _ = writeln!(out, "oracle error: {e}");
        }
        (None, None) => {}
    }
    let _ = writeln!(out);
    if let (Some(g), Some(rg)) = (report.z_gap, report.relative_gap) {
        let _ = writeln!(out, "gap = {g:.6e} (relative {rg:.3e})");
    }
    let _ = writeln!(out, "active set match: {}", report.active_set_match);
    let _ = writeln!(out, "status consistent: {}", report.status_consistent);
    let _ = writeln!(out, "criterion direction flips selection: {}", report.direction_flip);
    for (f, flip) in RESCALE_FACTORS.iter().zip(report.rescale_flips) {
        let _ = writeln!(out, "row rescale by {f} flips selection: {flip}");
    }
    let _ = writeln!(out, "objective scale 3x flips selection: {}", report.objective_scale_flip);
    out
}

pub fn statistics_text(s: &Statistics) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "trials: {}", s.trials);
    let _ = writeln!(
        out,
        "heuristic: {} solved, {} unbounded, {} degenerate, {} singular",
        s.heuristic_solved, s.heuristic_unbounded, s.heuristic_degenerate, s.heuristic_singular
    );
    let _ = writeln!(
        out,
        "oracle: {} optimal, {} infeasible, {} unbounded, {} errors",
        s.oracle_optimal, s.oracle_infeasible, s.oracle_unbounded, s.oracle_errors
    );
    let _ = write!(out, "active-set match: {}/{} = {:.3}", s.active_set_matches, s.oracle_optimal, s.match_fraction);
    if let Some((lo, hi)) = s.match_interval_95 {
        let _ = write!(out, " (95% CI {lo:.3} to {hi:.3})");
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "relative gap below 1e-6: {} ({:.3})", s.gap_within_bin, s.gap_within_bin_fraction);
    if let Some(q) = &s.relative_gap_quantiles {
        let _ = writeln!(
            out,
            "relative gap quantiles: min {:.2e}, p25 {:.2e}, median {:.2e}, p75 {:.2e}, p90 {:.2e}, max {:.2e}",
            q.min, q.p25, q.median, q.p75, q.p90, q.max
        );
    }
    let _ = writeln!(out, "infeasible heuristic vertices: {} ({:.3})", s.heuristic_infeasible, s.heuristic_infeasible_fraction);
    let _ = writeln!(out, "criterion direction flips: {} ({:.3})", s.direction_flips, s.direction_flip_rate);
    for ((f, k), rate) in RESCALE_FACTORS.iter().zip(s.rescale_flips).zip(s.rescale_flip_rates) {
        let _ = writeln!(out, "row rescale by {f} flips: {k} ({rate:.3})");
    }
    let _ = writeln!(out, "objective scale flips: {}", s.objective_scale_flips);
    let _ = writeln!(out, "unbounded verdicts on bounded instances: {}", s.false_unbounded);
    let _ = writeln!(out, "matching basis with nonzero gap: {}", s.matched_with_gap);
    out
}

/// `json`: statistics and records; `csv`: records only; `text`: statistics only.
pub fn emit_ensemble(ensemble: &Ensemble, format: Format) -> String {
    match format {
        Format::Json => to_json(ensemble),
        Format::Csv => records_to_csv(&ensemble.records),
        Format::Text => statistics_text(&ensemble.statistics),
    }
}
