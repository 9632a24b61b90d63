//! Exact reference solvers used to ground-truth the geometric method:
//! exhaustive vertex enumeration, a two-phase dense simplex, and a
//! row-by-row feasibility check.

mod enumerate;
mod simplex;

pub use enumerate::{enumerate_vertices, EnumerationOptions};
pub use simplex::{simplex_solve, SimplexOptions};

use serde::{Deserialize, Serialize};

use crate::model::{Problem, ValidationError};

/// Absolute slack tolerance for feasibility and binding tests.
pub const DEFAULT_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub status: OracleStatus,
    pub x: Option<Vec<f64>>,
    pub z: Option<f64>,
    /// Rows binding at `x` within tolerance, ascending.
    pub active_rows: Vec<usize>,
    /// Feasible vertices examined (enumeration only).
    pub vertex_count: usize,
}

impl OracleResult {
    fn without_point(status: OracleStatus, vertex_count: usize) -> Self {
        OracleResult { status, x: None, z: None, active_rows: Vec::new(), vertex_count }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("enumeration needs {subsets} subsets, budget is {cap}")]
    BudgetExceeded { subsets: u128, cap: u128 },
    #[error("feasible region has no vertices (constraint matrix rank {rank} < {dimension})")]
    NotPointed { rank: usize, dimension: usize },
    #[error("simplex exceeded {0} pivots")]
    IterationCap(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub row: usize,
    /// How far the row is violated (positive).
    pub amount: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    /// Signed slack per row; negative means violated.
    pub slacks: Vec<f64>,
    /// Rows violated by more than the tolerance.
    pub violations: Vec<Violation>,
    pub max_violation: f64,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_feasibility(problem: &Problem, x: &[f64], tol: f64) -> FeasibilityReport {
    let slacks: Vec<f64> = problem.constraints.iter().map(|c| c.slack(x)).collect();
    let violations = slacks
        .iter()
        .enumerate()
        .filter(|(_, &s)| -s > tol)
        .map(|(row, &s)| Violation { row, amount: -s })
        .collect();
    let max_violation = slacks.iter().map(|&s| (-s).max(0.0)).fold(0.0, f64::max);
    FeasibilityReport { slacks, violations, max_violation }
}

pub(crate) fn binding_rows(problem: &Problem, x: &[f64], tol: f64) -> Vec<usize> {
    problem
        .constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| c.slack(x).abs() <= tol)
        .map(|(j, _)| j)
        .collect()
}

pub(crate) fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i + 1) as u128)
}
