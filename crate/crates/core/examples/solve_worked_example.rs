//! One-shot solve of the eight-row example, printed step by step.

use geolp::{instances, io, solve, SolverOptions};

fn main() {
    let problem = instances::worked_example();
    let opts = SolverOptions::default();
    let outcome = solve(&problem, &opts).unwrap();
    let report = io::SolveReport::new(&problem, &outcome, &opts);
    print!("{}", io::solve_text(&problem, &report));

    // the method never checks its vertex against the other rows
    let s = outcome.solution().unwrap();
    if let Some(f) = &s.feasibility {
        println!("largest violation {:.4}", f.max_violation);
    }
}
