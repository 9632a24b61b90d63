//! Problem files, result reports and process exit codes.

mod report;
mod text;

pub use report::{
    classification_table, compare_text, emit_ensemble, oracle_text, records_to_csv, solve_text, statistics_text,
    to_json, BodmpReport, CompareReport, Diagnostics, Format, OracleReport, SelectionReport, SolveReport,
    ViolationReport,
};
pub use text::{emit_problem, parse_problem_text, ParseError, ParseErrorKind};

use crate::oracle::OracleStatus;
use crate::solver::SolveOutcome;

/// Process exit codes of the command-line tool.
pub mod exit {
    pub const OK: i32 = 0;
    pub const ORACLE_ERROR: i32 = 1;
    pub const UNBOUNDED: i32 = 2;
    pub const INFEASIBLE: i32 = 3;
    pub const DEGENERATE: i32 = 4;
    pub const USAGE: i32 = 64;
    pub const DATA: i32 = 65;
    pub const NO_INPUT: i32 = 66;
}

pub fn outcome_exit_code(outcome: &SolveOutcome) -> i32 {
    match outcome {
        SolveOutcome::Solved(_) => exit::OK,
        SolveOutcome::Unbounded { .. } => exit::UNBOUNDED,
        SolveOutcome::DegenerateSelection { .. } | SolveOutcome::SingularBasis { .. } => exit::DEGENERATE,
    }
}

pub fn oracle_exit_code(status: OracleStatus) -> i32 {
    match status {
        OracleStatus::Optimal => exit::OK,
        OracleStatus::Unbounded => exit::UNBOUNDED,
        OracleStatus::Infeasible => exit::INFEASIBLE,
    }
}
