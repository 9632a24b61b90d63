//! Heuristic vertex against the exact optimum for one problem.
//!
//! cargo run -p geolp --example compare_heuristic [problem.lp]

use geolp::{harness, instances, io, SolverOptions};

fn main() {
    let problem = match std::env::args().nth(1) {
        Some(path) => io::parse_problem_text(&std::fs::read_to_string(path).unwrap()).unwrap(),
        None => instances::worked_example(),
    };
    let opts = SolverOptions::default();
    let record = harness::compare(&problem, &opts).unwrap();
    print!("{}", io::compare_text(&problem, &io::CompareReport::new(&problem, &record, &opts)));
}
