//! Non-iterative geometric linear maximization.
//!
//! The method classifies every constraint as inward or outward with respect
//! to the objective, walks the objective ray from the origin to the first
//! inward boundary (the BODMP), picks one limiting constraint per dimension,
//! and solves the resulting `n × n` system once. It never pivots, so the
//! vertex it returns is not guaranteed to be optimal or even feasible; the
//! [`oracle`] and [`harness`] modules exist to measure how often it is.
//!
//! ```
//! use geolp::{instances, solver};
//!
//! let outcome = solver::solve(&instances::unit_square(), &Default::default()).unwrap();
//! let solution = outcome.solution().unwrap();
//! assert_eq!(solution.x, vec![1.0, 1.0]);
//! ```
//!
//! Runnable walkthroughs live in the crate's `examples/` directory
//! (`cargo run -p geolp --example <name>`).

pub mod geometry;
pub mod harness;
pub mod instances;
pub mod io;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod solver;

pub use geometry::{BodmpResult, CriterionDirection, LimiterChoice};
pub use model::{canonicalize, validate, Constraint, ConstraintClass, NormalizedProblem, Problem, Sense};
pub use oracle::{OracleResult, OracleStatus};
pub use solver::{solve, SolveOutcome, SolverOptions};
