//! Linear programs and their inward/outward normal form.
//!
//! A [`Problem`] is always a maximization of `c · x` over free variables
//! subject to inequality rows. Minimization requests are negated at the
//! boundary and remembered in [`ObjectiveSense`] for reporting.
//!
//! [`canonicalize`] classifies every row against the objective:
//!
//! * **inward** rows (`a · c > 0` when written as `a · x ≤ b`) bound the
//!   growth of the objective and are stored in `≤` orientation;
//! * **outward** rows (`a · c ≤ 0` in `≤` orientation) are stored back in
//!   `≥` orientation, so a non-negativity bound reads `x_i ≥ 0`.
//!
//! Rows whose boundary is parallel to the objective direction (`a · c = 0`)
//! are classified outward.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry;
use crate::linalg::dot;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveSense {
    #[default]
    Maximize,
    /// The stored objective is the negation of the user's minimization objective.
    Minimize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub coeffs: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Constraint {
    pub fn le(coeffs: impl Into<Vec<f64>>, rhs: f64) -> Self {
        Constraint { name: String::new(), coeffs: coeffs.into(), sense: Sense::Le, rhs }
    }

    pub fn ge(coeffs: impl Into<Vec<f64>>, rhs: f64) -> Self {
        Constraint { name: String::new(), coeffs: coeffs.into(), sense: Sense::Ge, rhs }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `(a, b)` rewritten as `a · x ≤ b`.
    pub fn le_form(&self) -> (Vec<f64>, f64) {
        match self.sense {
            Sense::Le => (self.coeffs.clone(), self.rhs),
            Sense::Ge => (self.coeffs.iter().map(|v| -v).collect(), -self.rhs),
        }
    }

    /// Signed slack, non-negative when the row is satisfied.
    pub fn slack(&self, x: &[f64]) -> f64 {
        let lhs = dot(&self.coeffs, x);
        match self.sense {
            Sense::Le => self.rhs - lhs,
            Sense::Ge => lhs - self.rhs,
        }
    }
}

/// `max objective · x` subject to `constraints`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Problem {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    #[serde(default)]
    pub sense: ObjectiveSense,
}

impl Problem {
    /// Builds a maximization problem; unnamed rows get labels `R1..Rm` by position.
    pub fn new(objective: impl Into<Vec<f64>>, constraints: Vec<Constraint>) -> Self {
        let mut constraints = constraints;
        for (j, row) in constraints.iter_mut().enumerate() {
            if row.name.is_empty() {
                row.name = default_label(j);
            }
        }
        Problem { objective: objective.into(), constraints, sense: ObjectiveSense::Maximize }
    }

    /// Builds `min objective · x` by storing the negated objective.
    pub fn minimize(objective: impl Into<Vec<f64>>, constraints: Vec<Constraint>) -> Self {
        let objective: Vec<f64> = objective.into().into_iter().map(|v| -v).collect();
        Problem { sense: ObjectiveSense::Minimize, ..Problem::new(objective, constraints) }
    }

    pub fn dimension(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn label(&self, row: usize) -> &str {
        &self.constraints[row].name
    }

    /// Objective value in the user's sense (undoes the minimization negation).
    pub fn reported_objective(&self, z: f64) -> f64 {
        match self.sense {
            ObjectiveSense::Maximize => z,
            ObjectiveSense::Minimize => -z,
        }
    }
}

pub fn default_label(row: usize) -> String {
    format!("R{}", row + 1)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Issue {
    EmptyObjective,
    NoConstraints,
    ZeroObjective,
    DimensionMismatch { row: usize, expected: usize, found: usize },
    NonFiniteObjective { index: usize },
    NonFiniteEntry { row: usize, index: usize },
    NonFiniteRhs { row: usize },
    ZeroRow { row: usize },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::EmptyObjective => write!(f, "objective has no coefficients"),
            Issue::NoConstraints => write!(f, "problem has no constraints"),
            Issue::ZeroObjective => write!(f, "objective vector is zero"),
            Issue::DimensionMismatch { row, expected, found } => write!(
                f,
                "row {} has {found} coefficients, expected {expected}",
                row + 1
            ),
            Issue::NonFiniteObjective { index } => {
                write!(f, "objective coefficient {} is not finite", index + 1)
            }
            Issue::NonFiniteEntry { row, index } => {
                write!(f, "row {} coefficient {} is not finite", row + 1, index + 1)
            }
            Issue::NonFiniteRhs { row } => write!(f, "row {} resource is not finite", row + 1),
            Issue::ZeroRow { row } => write!(f, "row {} has only zero coefficients", row + 1),
        }
    }
}

/// Every invariant violation found in a problem.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct ValidationError {
    pub issues: Vec<Issue>,
}

impl ValidationError {
    pub fn has(&self, pred: impl Fn(&Issue) -> bool) -> bool {
        self.issues.iter().any(pred)
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid problem: ")?;
        for (k, issue) in self.issues.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

pub fn validate(problem: &Problem) -> Result<(), ValidationError> {
    let n = problem.dimension();
    let mut issues = Vec::new();
    if n == 0 {
        issues.push(Issue::EmptyObjective);
    }
    if problem.constraints.is_empty() {
        issues.push(Issue::NoConstraints);
    }
    for (index, v) in problem.objective.iter().enumerate() {
        if !v.is_finite() {
            issues.push(Issue::NonFiniteObjective { index });
        }
    }
    if n > 0 && problem.objective.iter().all(|&v| v == 0.0) {
        issues.push(Issue::ZeroObjective);
    }
    for (row, c) in problem.constraints.iter().enumerate() {
        if c.coeffs.len() != n {
            issues.push(Issue::DimensionMismatch { row, expected: n, found: c.coeffs.len() });
        }
        for (index, v) in c.coeffs.iter().enumerate() {
            if !v.is_finite() {
                issues.push(Issue::NonFiniteEntry { row, index });
            }
        }
        if !c.rhs.is_finite() {
            issues.push(Issue::NonFiniteRhs { row });
        }
        if c.coeffs.iter().all(|&v| v == 0.0) {
            issues.push(Issue::ZeroRow { row });
        }
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(ValidationError { issues })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintClass {
    Inward,
    Outward,
}

impl fmt::Display for ConstraintClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstraintClass::Inward => "Inward",
            ConstraintClass::Outward => "Outward",
        })
    }
}

/// A constraint in its stored orientation: `≤` for inward, `≥` for outward.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientedRow {
    /// Position in the original problem.
    pub index: usize,
    pub class: ConstraintClass,
    pub coeffs: Vec<f64>,
    pub rhs: f64,
    pub unit_normal: Vec<f64>,
    /// Cosine of the angle between `unit_normal` and the objective unit vector.
    pub cos_angle: f64,
    /// That angle, radians.
    pub angle: f64,
}

impl OrientedRow {
    pub fn stored_sense(&self) -> Sense {
        match self.class {
            ConstraintClass::Inward => Sense::Le,
            ConstraintClass::Outward => Sense::Ge,
        }
    }

    /// The row as `a · x ≤ b`.
    pub fn le_form(&self) -> (Vec<f64>, f64) {
        match self.class {
            ConstraintClass::Inward => (self.coeffs.clone(), self.rhs),
            ConstraintClass::Outward => (self.coeffs.iter().map(|v| -v).collect(), -self.rhs),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NormalizedProblem<'p> {
    pub base: &'p Problem,
    pub objective_unit: Vec<f64>,
    /// One entry per original constraint, in input order.
    pub rows: Vec<OrientedRow>,
}

impl<'p> NormalizedProblem<'p> {
    pub fn dimension(&self) -> usize {
        self.objective_unit.len()
    }

    pub fn inward(&self) -> impl Iterator<Item = &OrientedRow> {
        self.rows.iter().filter(|r| r.class == ConstraintClass::Inward)
    }

    pub fn outward(&self) -> impl Iterator<Item = &OrientedRow> {
        self.rows.iter().filter(|r| r.class == ConstraintClass::Outward)
    }

    pub fn classes(&self) -> Vec<ConstraintClass> {
        self.rows.iter().map(|r| r.class).collect()
    }
}

/// Classifies a row given in `≤` orientation against objective `c`.
pub fn classify(le_coeffs: &[f64], c: &[f64]) -> ConstraintClass {
    if dot(le_coeffs, c) > 0.0 {
        ConstraintClass::Inward
    } else {
        ConstraintClass::Outward
    }
}

pub fn canonicalize(problem: &Problem) -> Result<NormalizedProblem<'_>, ValidationError> {
    validate(problem)?;
    let c = &problem.objective;
    let objective_unit = geometry::unit_normal(c).expect("validated objective is nonzero");
    let rows = problem
        .constraints
        .iter()
        .enumerate()
        .map(|(index, row)| {
            let (le_coeffs, le_rhs) = row.le_form();
            let class = classify(&le_coeffs, c);
            let (coeffs, rhs) = match class {
                ConstraintClass::Inward => (le_coeffs, le_rhs),
                ConstraintClass::Outward => (le_coeffs.iter().map(|v| -v).collect(), -le_rhs),
            };
            let unit_normal = geometry::unit_normal(&coeffs).expect("validated row is nonzero");
            let cos_angle = geometry::cos_angle(&unit_normal, &objective_unit);
            OrientedRow {
                index,
                class,
                coeffs,
                rhs,
                unit_normal,
                cos_angle,
                angle: cos_angle.acos(),
            }
        })
        .collect();
    Ok(NormalizedProblem { base: problem, objective_unit, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::worked_example;

    #[test]
    fn worked_example_is_valid() {
        assert!(validate(&worked_example()).is_ok());
    }

    #[test]
    fn zero_objective_rejected() {
        let p = Problem::new(vec![0.0, 0.0, 0.0], vec![Constraint::le(vec![1.0, 0.0, 0.0], 1.0)]);
        let err = validate(&p).unwrap_err();
        assert_eq!(err.issues, vec![Issue::ZeroObjective]);
    }

    #[test]
    fn zero_row_rejected() {
        let p = Problem::new(vec![1.0, 0.0, 0.0], vec![Constraint::le(vec![0.0, 0.0, 0.0], 1.0)]);
        assert!(validate(&p).unwrap_err().has(|i| matches!(i, Issue::ZeroRow { row: 0 })));
    }

    #[test]
    fn every_violation_is_listed() {
        let p = Problem::new(
            vec![0.0, 0.0],
            vec![
                Constraint::le(vec![1.0], 1.0),
                Constraint::le(vec![f64::NAN, 1.0], f64::INFINITY),
                Constraint::ge(vec![0.0, 0.0], 0.0),
            ],
        );
        let err = validate(&p).unwrap_err();
        assert_eq!(
            err.issues,
            vec![
                Issue::ZeroObjective,
                Issue::DimensionMismatch { row: 0, expected: 2, found: 1 },
                Issue::NonFiniteEntry { row: 1, index: 0 },
                Issue::NonFiniteRhs { row: 1 },
                Issue::ZeroRow { row: 2 },
            ]
        );
        assert!(err.to_string().contains("row 3 has only zero coefficients"));
    }

    #[test]
    fn empty_problem_rejected() {
        let p = Problem::new(Vec::<f64>::new(), vec![]);
        let err = validate(&p).unwrap_err();
        assert!(err.has(|i| *i == Issue::EmptyObjective));
        assert!(err.has(|i| *i == Issue::NoConstraints));
    }

    #[test]
    fn default_labels() {
        let p = worked_example();
        let labels: Vec<&str> = (0..8).map(|j| p.label(j)).collect();
        assert_eq!(labels, ["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8"]);
    }

    #[test]
    fn worked_example_classes() {
        let p = worked_example();
        let np = canonicalize(&p).unwrap();
        use ConstraintClass::*;
        assert_eq!(
            np.classes(),
            vec![Inward, Inward, Inward, Inward, Inward, Outward, Outward, Outward]
        );
        // outward rows keep their >= orientation
        assert_eq!(np.rows[6].coeffs, vec![0.0, 1.0, 0.0]);
        assert_eq!(np.rows[6].rhs, 0.0);
        assert_eq!(np.rows[7].coeffs, vec![0.0, 0.2, 1.0]);
        assert_eq!(np.rows[7].rhs, -1.0);
    }

    #[test]
    fn non_negativity_is_outward() {
        let p = Problem::new(vec![1.0], vec![Constraint::le(vec![-1.0], 0.0)]);
        let np = canonicalize(&p).unwrap();
        assert_eq!(np.rows[0].class, ConstraintClass::Outward);
        assert_eq!(np.rows[0].coeffs, vec![1.0]);
        assert_eq!(np.rows[0].rhs, 0.0);
        assert_eq!(np.rows[0].stored_sense(), Sense::Ge);
    }

    #[test]
    fn parallel_boundary_is_outward() {
        let p = Problem::new(vec![1.0, 1.0], vec![Constraint::le(vec![1.0, -1.0], 1.0)]);
        let np = canonicalize(&p).unwrap();
        assert_eq!(np.rows[0].class, ConstraintClass::Outward);
    }

    #[test]
    fn worked_example_angle_of_r2() {
        let p = worked_example();
        let np = canonicalize(&p).unwrap();
        assert!((np.rows[1].angle - 0.494).abs() < 2e-3, "{}", np.rows[1].angle);
        for row in np.inward() {
            assert!(row.cos_angle > 0.0);
        }
    }

    #[test]
    fn minimize_negates_objective() {
        let p = Problem::minimize(vec![1.0, -2.0], vec![Constraint::ge(vec![1.0, 0.0], 0.0)]);
        assert_eq!(p.objective, vec![-1.0, 2.0]);
        assert_eq!(p.reported_objective(3.0), -3.0);
    }
}
