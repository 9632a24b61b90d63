//! The non-iterative pipeline:
//!
//! 0. classify rows and compute unit normals ([`canonicalize`]);
//! 1. locate the BODMP, the first inward boundary on the objective ray;
//! 2. choose a limiting constraint for every dimension;
//! 3. assemble the `n × n` basis from those constraints;
//! 4. solve the basis for the vertex.
//!
//! Nothing here checks that the vertex is feasible or optimal. The
//! [`crate::harness`] measures that against the exact oracles.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::geometry::{self, BodmpResult, CriterionDirection, LimiterChoice};
use crate::linalg::{self, dot};
use crate::model::{canonicalize, NormalizedProblem, Problem, ValidationError};
use crate::oracle::{self, FeasibilityReport};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Absolute slack for the limiting criteria comparisons.
    pub epsilon: f64,
    pub criterion: CriterionDirection,
    /// Attach a feasibility report to solved outcomes.
    pub verify: bool,
    /// Row slack tolerance for that report.
    pub feasibility_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            epsilon: 1e-9,
            criterion: CriterionDirection::TableConsistent,
            verify: true,
            feasibility_tol: oracle::DEFAULT_TOL,
        }
    }
}

/// The constraints assumed to meet at the extreme vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActiveSet {
    /// The limiter picked by the criteria for each dimension.
    pub choices: Vec<LimiterChoice>,
    /// One distinct row per dimension, in dimension order.
    pub basis_rows: Vec<usize>,
    /// Dimensions whose limiter duplicated an earlier one and were given
    /// the next-closest unused candidate instead.
    pub repaired: Vec<usize>,
    pub matrix: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
pub enum SelectionFailure {
    /// No row limits this dimension (0-based), so the objective grows without bound.
    #[error("dimension {} has no limiting constraint", dimension + 1)]
    Unbounded { dimension: usize },
    /// These dimensions could not be given distinct rows.
    #[error("could not find distinct limiting rows for dimensions {dimensions:?}")]
    Degenerate { dimensions: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("basis matrix is singular")]
pub struct SingularBasis;

/// Steps 2 and 3. `bodmp = None` measures limiting distances from the origin
/// and skips inward candidates; that path is used when the objective ray
/// crosses no inward row.
pub fn select_active_set(
    np: &NormalizedProblem<'_>,
    bodmp: Option<&BodmpResult>,
    opts: &SolverOptions,
) -> Result<ActiveSet, SelectionFailure> {
    let n = np.dimension();
    let origin = vec![0.0; n];
    let point = bodmp.map_or(origin.as_slice(), |b| b.point.as_slice());

    let mut choices = Vec::with_capacity(n);
    for dim in 0..n {
        let choice = geometry::choose_limiter(
            dim,
            np,
            point,
            opts.criterion,
            opts.epsilon,
            bodmp.is_some(),
        )
        .ok_or(SelectionFailure::Unbounded { dimension: dim })?;
        choices.push(choice);
    }

    let mut used = BTreeSet::new();
    let mut slots: Vec<Option<usize>> = vec![None; n];
    let mut duplicated = Vec::new();
    for choice in &choices {
        if used.insert(choice.row) {
            slots[choice.dimension] = Some(choice.row);
        } else {
            duplicated.push(choice.dimension);
        }
    }

    let mut exhausted = Vec::new();
    for &dim in &duplicated {
        let ranked = geometry::rank_by_limiting_distance(np, &choices[dim].candidates, point);
        match ranked.into_iter().find(|(row, _)| !used.contains(row)) {
            Some((row, _)) => {
                used.insert(row);
                slots[dim] = Some(row);
            }
            None => exhausted.push(dim),
        }
    }
    if !exhausted.is_empty() {
        return Err(SelectionFailure::Degenerate { dimensions: exhausted });
    }

    let basis_rows: Vec<usize> = slots.into_iter().map(|s| s.expect("all slots filled")).collect();
    let matrix = basis_rows.iter().map(|&j| np.rows[j].coeffs.clone()).collect();
    let rhs = basis_rows.iter().map(|&j| np.rows[j].rhs).collect();
    Ok(ActiveSet { choices, basis_rows, repaired: duplicated, matrix, rhs })
}

/// Step 4: the intersection point of the basis boundaries.
pub fn solve_vertex(active: &ActiveSet) -> Result<Vec<f64>, SingularBasis> {
    linalg::solve_square(&active.matrix, &active.rhs).map_err(|_| SingularBasis)
}

pub fn evaluate_objective(c: &[f64], x: &[f64]) -> f64 {
    dot(c, x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub x: Vec<f64>,
    pub z: f64,
    pub active: ActiveSet,
    pub bodmp: Option<BodmpResult>,
    /// `‖B·x − b‖∞`
    pub residual: f64,
    pub feasibility: Option<FeasibilityReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SolveOutcome {
    Solved(Solution),
    Unbounded { dimension: usize },
    DegenerateSelection { dimensions: Vec<usize> },
    SingularBasis { basis_rows: Vec<usize> },
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            SolveOutcome::Solved(_) => "solved",
            SolveOutcome::Unbounded { .. } => "unbounded",
            SolveOutcome::DegenerateSelection { .. } => "degenerate",
            SolveOutcome::SingularBasis { .. } => "singular",
        }
    }
}

/// Steps 1 to 3 on a normalized problem: the BODMP (if any) and the
/// resulting active set.
pub fn select(
    np: &NormalizedProblem<'_>,
    opts: &SolverOptions,
) -> (Option<BodmpResult>, Result<ActiveSet, SelectionFailure>) {
    let bodmp = geometry::bodmp(np).ok();
    let active = select_active_set(np, bodmp.as_ref(), opts);
    (bodmp, active)
}

/// The rows the method would put in its basis, in dimension order.
pub fn basis_signature(
    problem: &Problem,
    opts: &SolverOptions,
) -> Result<Result<Vec<usize>, SelectionFailure>, ValidationError> {
    let np = canonicalize(problem)?;
    Ok(select(&np, opts).1.map(|a| a.basis_rows))
}

pub fn solve(problem: &Problem, opts: &SolverOptions) -> Result<SolveOutcome, ValidationError> {
    let np = canonicalize(problem)?;
    let (bodmp, active) = select(&np, opts);
    let active = match active {
        Ok(a) => a,
        Err(SelectionFailure::Unbounded { dimension }) => {
            return Ok(SolveOutcome::Unbounded { dimension })
        }
        Err(SelectionFailure::Degenerate { dimensions }) => {
            return Ok(SolveOutcome::DegenerateSelection { dimensions })
        }
    };
    let x = match solve_vertex(&active) {
        Ok(x) => x,
        Err(SingularBasis) => {
            return Ok(SolveOutcome::SingularBasis { basis_rows: active.basis_rows })
        }
    };
    let z = evaluate_objective(&problem.objective, &x);
    let residual = linalg::residual_inf(&active.matrix, &x, &active.rhs);
    let feasibility =
        opts.verify.then(|| oracle::check_feasibility(problem, &x, opts.feasibility_tol));
    Ok(SolveOutcome::Solved(Solution { x, z, active, bodmp, residual, feasibility }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{half_open_strip, unit_square, worked_example};
    use crate::model::{ConstraintClass, Constraint};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    fn active_from_rows(rows: Vec<(Vec<f64>, f64)>) -> ActiveSet {
        let (matrix, rhs) = rows.into_iter().unzip();
        ActiveSet { choices: vec![], basis_rows: vec![], repaired: vec![], matrix, rhs }
    }

    #[test]
    fn solve_vertex_identity() {
        let a = active_from_rows(vec![
            (vec![1.0, 0.0, 0.0], 5.0),
            (vec![0.0, 1.0, 0.0], 5.2),
            (vec![0.0, 0.0, 1.0], 5.5),
        ]);
        assert_eq!(solve_vertex(&a).unwrap(), vec![5.0, 5.2, 5.5]);
    }

    #[test]
    fn solve_vertex_reconciled_worked_system() {
        let a = active_from_rows(vec![
            (vec![2.1, 3.0, 1.0], 5.0),
            (vec![1.7, 2.8, 2.1], 5.2),
            (vec![3.0, 1.0, 2.0], 5.5),
        ]);
        let x = solve_vertex(&a).unwrap();
        assert!(close(&x, &[1.1497, 0.6241, 0.7134], 1e-3), "{x:?}");
        let z = evaluate_objective(&[0.5, 1.0, 2.0], &x);
        assert!((z - 2.6257).abs() < 1e-3, "{z}");
    }

    #[test]
    fn solve_vertex_singular() {
        let a = active_from_rows(vec![(vec![1.0, 2.0], 1.0), (vec![1.0, 2.0], 3.0)]);
        assert_eq!(solve_vertex(&a), Err(SingularBasis));
    }

    #[test]
    fn evaluate_objective_examples() {
        assert_eq!(evaluate_objective(&[1.0, 2.0], &[0.0, 0.0]), 0.0);
        assert_eq!(evaluate_objective(&[1.0, 0.0, 0.0], &[3.5, -2.0, 9.0]), 3.5);
    }

    #[test]
    fn box_corner() {
        let outcome = solve(&unit_square(), &SolverOptions::default()).unwrap();
        let s = outcome.solution().expect("solved");
        assert!(close(&s.x, &[1.0, 1.0], 1e-12));
        assert!((s.z - 2.0).abs() < 1e-12);
        assert_eq!(s.active.basis_rows, vec![0, 1]);
        assert!(s.feasibility.as_ref().unwrap().violations.is_empty());
    }

    #[test]
    fn box_corner_without_bounds_below() {
        let p = Problem::new(
            vec![1.0, 1.0],
            vec![Constraint::le(vec![1.0, 0.0], 1.0), Constraint::le(vec![0.0, 1.0], 1.0)],
        );
        let np = canonicalize(&p).unwrap();
        let (_, active) = select(&np, &SolverOptions::default());
        let rows: Vec<usize> = active.unwrap().choices.iter().map(|c| c.row).collect();
        assert_eq!(rows, vec![0, 1]);
    }

    #[test]
    fn strip_is_unbounded_in_second_dimension() {
        let outcome = solve(&half_open_strip(), &SolverOptions::default()).unwrap();
        assert_eq!(outcome, SolveOutcome::Unbounded { dimension: 1 });
    }

    #[test]
    fn worked_example_selection() {
        let p = worked_example();
        let np = canonicalize(&p).unwrap();
        let (bodmp, active) = select(&np, &SolverOptions::default());
        assert_eq!(bodmp.unwrap().row, 1);
        let active = active.unwrap();
        // dimension 3 has no inward candidate and falls to R7
        assert_eq!(active.choices[2].row, 6);
        assert_eq!(active.choices[2].class, ConstraintClass::Outward);
        assert_eq!(active.basis_rows.len(), 3);
        let distinct: BTreeSet<_> = active.basis_rows.iter().collect();
        assert_eq!(distinct.len(), 3);
    }

    #[test]
    fn repair_takes_next_closest_candidate() {
        // the scaled-down diagonal row is closest for both dimensions
        // (e = 0.159 against 0.5 for the axis rows); dimension 2 falls back to y <= 4
        let p = Problem::new(
            vec![1.0, 1.0],
            vec![
                Constraint::le(vec![0.1, 0.1], 0.3),
                Constraint::le(vec![1.0, 0.0], 4.0),
                Constraint::le(vec![0.0, 1.0], 4.0),
            ],
        );
        let np = canonicalize(&p).unwrap();
        let (_, active) = select(&np, &SolverOptions::default());
        let active = active.unwrap();
        assert_eq!(active.choices[0].row, 0);
        assert_eq!(active.choices[1].row, 0);
        assert_eq!(active.repaired, vec![1]);
        assert_eq!(active.basis_rows, vec![0, 2]);
    }

    #[test]
    fn degenerate_when_no_alternative() {
        let p = Problem::new(vec![1.0, 1.0], vec![Constraint::le(vec![1.0, 1.0], 2.0)]);
        let outcome = solve(&p, &SolverOptions::default()).unwrap();
        assert_eq!(outcome, SolveOutcome::DegenerateSelection { dimensions: vec![1] });
    }

    #[test]
    fn outward_only_fallback_from_origin() {
        // the only inward row lies behind the origin, so the ray crosses nothing
        let p = Problem::new(
            vec![1.0, 0.1],
            vec![
                Constraint::le(vec![1.0, 0.0], -1.0),
                Constraint::ge(vec![1.0, -1.0], -10.0),
                Constraint::ge(vec![1.0, -2.0], -20.0),
            ],
        );
        let np = canonicalize(&p).unwrap();
        assert!(geometry::bodmp(&np).is_err());
        let outcome = solve(&p, &SolverOptions::default()).unwrap();
        let s = outcome.solution().expect("solved");
        assert!(s.bodmp.is_none());
        assert_eq!(s.active.basis_rows, vec![1, 2]);
        assert_eq!(s.active.repaired, vec![1]);
        assert!(close(&s.x, &[0.0, 10.0], 1e-12), "{:?}", s.x);
    }

    #[test]
    fn fallback_with_no_outward_limit_is_unbounded() {
        let p = Problem::new(vec![-1.0], vec![Constraint::ge(vec![-1.0], -3.0)]);
        let outcome = solve(&p, &SolverOptions::default()).unwrap();
        assert_eq!(outcome, SolveOutcome::Unbounded { dimension: 0 });
    }

    #[test]
    fn invalid_problem_is_an_error() {
        let p = Problem::new(vec![0.0], vec![Constraint::le(vec![1.0], 1.0)]);
        assert!(solve(&p, &SolverOptions::default()).is_err());
    }
}
