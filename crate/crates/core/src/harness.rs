//! Seeded problem generation and heuristic-versus-oracle comparison.
//!
//! The harness never corrects the geometric method. Every record carries the
//! raw gap between the method's vertex and the exact optimum, whether the
//! chosen basis matches the optimal active set, and how sensitive the
//! selection is to the criterion direction and to row or objective scaling.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::CriterionDirection;
use crate::linalg::dot;
use crate::model::{Constraint, Problem, ValidationError};
use crate::oracle::{
    self, enumerate_vertices, simplex_solve, EnumerationOptions, OracleError, OracleResult,
    OracleStatus, SimplexOptions,
};
use crate::solver::{self, SolveOutcome, SolverOptions};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const RESAMPLE_BUDGET: usize = 10_000;

/// Row scale factors used for the rescaling sensitivity measurement.
pub const RESCALE_FACTORS: [f64; 2] = [0.1, 10.0];

/// Relative gaps below this count as "matching objective".
pub const GAP_BIN: f64 = 1e-6;

/// Shape and value ranges of a random instance.
///
/// Rows are laid out as `m_inward` random inward rows, then `m_outward`
/// outward rows (the first `min(n, m_outward)` are `x_i ≥ 0`, the rest
/// random), then, with `include_box`, any missing `x_i ≥ 0` and every
/// `x_i ≤ box_upper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub m_inward: usize,
    pub m_outward: usize,
    pub coef_range: (f64, f64),
    pub objective_range: (f64, f64),
    pub resource_range: (f64, f64),
    pub include_box: bool,
    pub box_upper: f64,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            seed: 0,
            n: 3,
            m_inward: 5,
            m_outward: 3,
            coef_range: (-1.0, 3.0),
            objective_range: (0.1, 2.0),
            resource_range: (1.0, 10.0),
            include_box: true,
            box_upper: 10.0,
        }
    }
}

impl GenSpec {
    pub fn with_seed(&self, seed: u64) -> Self {
        GenSpec { seed, ..self.clone() }
    }

    /// Total row count of generated problems.
    pub fn rows(&self) -> usize {
        let boxed = if self.include_box { self.n + self.n.saturating_sub(self.m_outward) } else { 0 };
        self.m_inward + self.m_outward + boxed
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("could not draw row {row} with the required orientation")]
    ResampleBudgetExceeded { row: usize },
}

fn check_range(name: &str, (lo, hi): (f64, f64)) -> Result<(), GenError> {
    if lo.is_finite() && hi.is_finite() && lo <= hi {
        Ok(())
    } else {
        Err(GenError::InvalidSpec(format!("{name} must be a finite range lo <= hi")))
    }
}

fn validate_spec(spec: &GenSpec) -> Result<(), GenError> {
    if spec.n == 0 {
        return Err(GenError::InvalidSpec("n must be at least 1".into()));
    }
    if spec.rows() == 0 {
        return Err(GenError::InvalidSpec("spec produces no rows".into()));
    }
    check_range("coef_range", spec.coef_range)?;
    check_range("objective_range", spec.objective_range)?;
    check_range("resource_range", spec.resource_range)?;
    if spec.objective_range.1 <= 0.0 && spec.objective_range.0 >= 0.0 {
        return Err(GenError::InvalidSpec("objective_range only contains zero".into()));
    }
    if spec.resource_range.0 < 0.0 {
        return Err(GenError::InvalidSpec("resource_range must be non-negative".into()));
    }
    if !(spec.box_upper.is_finite() && spec.box_upper > 0.0) {
        return Err(GenError::InvalidSpec("box_upper must be positive".into()));
    }
    Ok(())
}

fn draw(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    rng.gen_range(lo..=hi)
}

/// Draws coefficients with `a · c > 0` and at least one nonzero entry.
fn draw_row(rng: &mut ChaCha8Rng, spec: &GenSpec, c: &[f64], row: usize) -> Result<Vec<f64>, GenError> {
    for _ in 0..RESAMPLE_BUDGET {
        let a: Vec<f64> = (0..spec.n).map(|_| draw(rng, spec.coef_range)).collect();
        if dot(&a, c) > 0.0 {
            return Ok(a);
        }
    }
    Err(GenError::ResampleBudgetExceeded { row })
}

fn axis(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

/// Builds a random instance whose origin is always feasible.
pub fn generate_problem(spec: &GenSpec) -> Result<Problem, GenError> {
    validate_spec(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let mut c = Vec::with_capacity(n);
    for _ in 0..RESAMPLE_BUDGET {
        c = (0..n).map(|_| draw(&mut rng, spec.objective_range)).collect();
        if c.iter().any(|&v| v != 0.0) {
            break;
        }
    }
    if c.iter().all(|&v| v == 0.0) {
        return Err(GenError::InvalidSpec("objective_range kept drawing zero".into()));
    }

    let mut rows = Vec::with_capacity(spec.rows());
    for _ in 0..spec.m_inward {
        let a = draw_row(&mut rng, spec, &c, rows.len())?;
        let b = draw(&mut rng, spec.resource_range);
        rows.push(Constraint::le(a, b));
    }
    let lower_bounds = spec.m_outward.min(n);
    for i in 0..lower_bounds {
        rows.push(Constraint::ge(axis(n, i), 0.0));
    }
    for _ in lower_bounds..spec.m_outward {
        // as a >= row with a·c > 0 it is outward; b <= 0 keeps the origin inside
        let a = draw_row(&mut rng, spec, &c, rows.len())?;
        let b = -draw(&mut rng, spec.resource_range);
        rows.push(Constraint::ge(a, b));
    }
    if spec.include_box {
        for i in lower_bounds..n {
            rows.push(Constraint::ge(axis(n, i), 0.0));
        }
        for i in 0..n {
            rows.push(Constraint::le(axis(n, i), spec.box_upper));
        }
    }
    Ok(Problem::new(c, rows))
}

/// Seed of trial `index` derived from a base seed.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMethod {
    Enumeration,
    Simplex,
}

impl OracleMethod {
    pub fn short_name(self) -> &'static str {
        match self {
            OracleMethod::Enumeration => "enum",
            OracleMethod::Simplex => "simplex",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub id: String,
    pub heuristic: SolveOutcome,
    pub oracle: Option<OracleResult>,
    pub oracle_method: OracleMethod,
    pub oracle_error: Option<String>,
    /// `z_oracle − z_heuristic`, when both produced a value.
    pub z_gap: Option<f64>,
    /// `z_gap / (1 + |z_oracle|)`
    pub relative_gap: Option<f64>,
    /// The heuristic basis is contained in the oracle's binding set.
    pub active_set_match: bool,
    /// Both sides agree on solved/optimal versus unbounded.
    pub status_consistent: bool,
    /// Largest row violation of the heuristic vertex.
    pub max_violation: Option<f64>,
    /// Selection differs between the two criterion directions.
    pub direction_flip: bool,
    /// Rescaling a single row by each of [`RESCALE_FACTORS`] changed the selection.
    pub rescale_flips: [bool; 2],
    /// Replacing `c` by `3c` changed the selection.
    pub objective_scale_flip: bool,
    pub heuristic_micros: u64,
    pub oracle_micros: u64,
}

fn rescaled_row(problem: &Problem, row: usize, factor: f64) -> Problem {
    let mut p = problem.clone();
    let r = &mut p.constraints[row];
    r.coeffs.iter_mut().for_each(|v| *v *= factor);
    r.rhs *= factor;
    p
}

fn exact_optimum(problem: &Problem) -> (Result<OracleResult, OracleError>, OracleMethod) {
    match enumerate_vertices(problem, &EnumerationOptions::default()) {
        Err(OracleError::BudgetExceeded { .. } | OracleError::NotPointed { .. }) => {
            (simplex_solve(problem, &SimplexOptions::default()), OracleMethod::Simplex)
        }
        other => (other, OracleMethod::Enumeration),
    }
}

/// Runs the geometric method and the exact oracle on one problem.
pub fn compare(problem: &Problem, opts: &SolverOptions) -> Result<ComparisonRecord, ValidationError> {
    let started = Instant::now();
    let heuristic = solver::solve(problem, opts);
    let heuristic_micros = started.elapsed().as_micros() as u64;

    let started = Instant::now();
    let (oracle_result, oracle_method) = exact_optimum(problem);
    let oracle_micros = started.elapsed().as_micros() as u64;

    let heuristic = heuristic?;
    let (oracle, oracle_error) = match oracle_result {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };

    let solution = heuristic.solution();
    let oracle_optimal = oracle.as_ref().filter(|o| o.status == OracleStatus::Optimal);
    let (z_gap, relative_gap) = match (solution, oracle_optimal.and_then(|o| o.z)) {
        (Some(s), Some(zo)) => {
            let gap = zo - s.z;
            (Some(gap), Some(gap / (1.0 + zo.abs())))
        }
        _ => (None, None),
    };
    let active_set_match = match (solution, oracle_optimal) {
        (Some(s), Some(o)) => s.active.basis_rows.iter().all(|r| o.active_rows.contains(r)),
        _ => false,
    };
    let status_consistent = matches!(
        (&heuristic, oracle.as_ref().map(|o| o.status)),
        (SolveOutcome::Solved(_), Some(OracleStatus::Optimal))
            | (SolveOutcome::Unbounded { .. }, Some(OracleStatus::Unbounded))
    );
    let max_violation =
        solution.map(|s| oracle::check_feasibility(problem, &s.x, opts.feasibility_tol).max_violation);

    let signature = |p: &Problem, o: &SolverOptions| solver::basis_signature(p, o).ok();
    let base = signature(problem, opts);
    let flipped_dir = SolverOptions {
        criterion: match opts.criterion {
            CriterionDirection::Printed => CriterionDirection::TableConsistent,
            CriterionDirection::TableConsistent => CriterionDirection::Printed,
        },
        ..*opts
    };
    let direction_flip = signature(problem, &flipped_dir) != base;
    let rescale_flips = RESCALE_FACTORS.map(|factor| {
        (0..problem.num_constraints())
            .any(|row| signature(&rescaled_row(problem, row, factor), opts) != base)
    });
    let mut tripled = problem.clone();
    tripled.objective.iter_mut().for_each(|v| *v *= 3.0);
    let objective_scale_flip = signature(&tripled, opts) != base;

    Ok(ComparisonRecord {
        id: String::new(),
        heuristic,
        oracle,
        oracle_method,
        oracle_error,
        z_gap,
        relative_gap,
        active_set_match,
        status_consistent,
        max_violation,
        direction_flip,
        rescale_flips,
        objective_scale_flip,
        heuristic_micros,
        oracle_micros,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    pub min: f64,
    pub p25: f64,
    pub median: f64,
    pub p75: f64,
    pub p90: f64,
    pub max: f64,
}

impl Quantiles {
    /// Linear-interpolation quantiles; `None` for an empty sample.
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q = |p: f64| {
            let pos = p * (v.len() - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = pos.ceil() as usize;
            v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
        };
        Some(Quantiles { min: v[0], p25: q(0.25), median: q(0.5), p75: q(0.75), p90: q(0.9), max: v[v.len() - 1] })
    }
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(successes: usize, trials: usize) -> Option<(f64, f64)> {
    if trials == 0 {
        return None;
    }
    let z = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    Some(((center - half).max(0.0), (center + half).min(1.0)))
}

fn fraction(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        count as f64 / total as f64
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Statistics {
    pub trials: usize,
    pub heuristic_solved: usize,
    pub heuristic_unbounded: usize,
    pub heuristic_degenerate: usize,
    pub heuristic_singular: usize,
    pub oracle_optimal: usize,
    pub oracle_infeasible: usize,
    pub oracle_unbounded: usize,
    pub oracle_errors: usize,
    pub status_consistent: usize,
    /// Denominator: instances with an optimal oracle answer.
    pub active_set_matches: usize,
    pub match_fraction: f64,
    pub match_interval_95: Option<(f64, f64)>,
    /// Instances with both values and relative gap below [`GAP_BIN`].
    pub gap_within_bin: usize,
    pub gap_within_bin_fraction: f64,
    pub relative_gap_quantiles: Option<Quantiles>,
    /// Solved heuristic vertices violating some row beyond tolerance.
    pub heuristic_infeasible: usize,
    pub heuristic_infeasible_fraction: f64,
    pub direction_flips: usize,
    pub direction_flip_rate: f64,
    /// Per factor in [`RESCALE_FACTORS`].
    pub rescale_flips: [usize; 2],
    pub rescale_flip_rates: [f64; 2],
    pub objective_scale_flips: usize,
    /// Heuristic said unbounded although the oracle found an optimum.
    pub false_unbounded: usize,
    /// Matching basis yet relative gap of at least 1e-8.
    pub matched_with_gap: usize,
}

impl Statistics {
    /// Aggregates records; the result does not depend on record order.
    pub fn from_records(records: &[ComparisonRecord], feasibility_tol: f64) -> Self {
        let mut s = Statistics { trials: records.len(), ..Default::default() };
        let mut gaps = Vec::new();
        for r in records {
            match &r.heuristic {
                SolveOutcome::Solved(_) => s.heuristic_solved += 1,
                SolveOutcome::Unbounded { .. } => s.heuristic_unbounded += 1,
                SolveOutcome::DegenerateSelection { .. } => s.heuristic_degenerate += 1,
                SolveOutcome::SingularBasis { .. } => s.heuristic_singular += 1,
            }
            match r.oracle.as_ref().map(|o| o.status) {
                Some(OracleStatus::Optimal) => s.oracle_optimal += 1,
                Some(OracleStatus::Infeasible) => s.oracle_infeasible += 1,
                Some(OracleStatus::Unbounded) => s.oracle_unbounded += 1,
                None => s.oracle_errors += 1,
            }
            let oracle_optimal = r.oracle.as_ref().is_some_and(|o| o.status == OracleStatus::Optimal);
            s.status_consistent += r.status_consistent as usize;
            s.active_set_matches += r.active_set_match as usize;
            if let Some(g) = r.relative_gap {
                gaps.push(g);
                s.gap_within_bin += (g.abs() < GAP_BIN) as usize;
            }
            if r.active_set_match && r.relative_gap.is_none_or(|g| g.abs() >= 1e-8) {
                s.matched_with_gap += 1;
            }
            if r.max_violation.is_some_and(|v| v > feasibility_tol) {
                s.heuristic_infeasible += 1;
            }
            s.direction_flips += r.direction_flip as usize;
            for k in 0..2 {
                s.rescale_flips[k] += r.rescale_flips[k] as usize;
            }
            s.objective_scale_flips += r.objective_scale_flip as usize;
            if oracle_optimal && matches!(r.heuristic, SolveOutcome::Unbounded { .. }) {
                s.false_unbounded += 1;
            }
        }
        s.match_fraction = fraction(s.active_set_matches, s.oracle_optimal);
        s.match_interval_95 = wilson_interval(s.active_set_matches, s.oracle_optimal);
        s.gap_within_bin_fraction = fraction(s.gap_within_bin, gaps.len());
        s.relative_gap_quantiles = Quantiles::of(&gaps);
        s.heuristic_infeasible_fraction = fraction(s.heuristic_infeasible, s.heuristic_solved);
        s.direction_flip_rate = fraction(s.direction_flips, s.trials);
        s.rescale_flip_rates = s.rescale_flips.map(|k| fraction(k, s.trials));
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    pub records: Vec<ComparisonRecord>,
    pub statistics: Statistics,
}

/// The generator spec and seed used for trial `index`.
pub fn trial_spec(specs: &[GenSpec], index: usize) -> GenSpec {
    let base = &specs[index % specs.len()];
    base.with_seed(trial_seed(base.seed, index as u64))
}

/// Runs `trials` comparisons, cycling through `specs`. Trial `i` uses
/// [`trial_spec`]`(specs, i)`, so any record can be regenerated on its own.
pub fn run_ensemble(specs: &[GenSpec], trials: usize, opts: &SolverOptions) -> Result<Ensemble, GenError> {
    for spec in specs {
        validate_spec(spec)?;
    }
    if specs.is_empty() && trials > 0 {
        return Err(GenError::InvalidSpec("no generator specs given".into()));
    }
    let mut records = Vec::with_capacity(trials);
    for index in 0..trials {
        let spec = trial_spec(specs, index);
        let problem = generate_problem(&spec)?;
        let mut record = compare(&problem, opts).expect("generated problems are valid");
        record.id = format!("{index}:{}", spec.seed);
        records.push(record);
    }
    let statistics = Statistics::from_records(&records, opts.feasibility_tol);
    Ok(Ensemble { records, statistics })
}

/// Boxed specs with `n ∈ {2, 3, 4}` and at most 12 rows.
pub fn default_specs(seed: u64) -> Vec<GenSpec> {
    [(2, 4), (3, 3), (4, 2)]
        .into_iter()
        .enumerate()
        .map(|(k, (n, m_inward))| GenSpec {
            seed: seed.wrapping_add(k as u64),
            n,
            m_inward,
            m_outward: n,
            include_box: true,
            ..GenSpec::default()
        })
        .collect()
}
