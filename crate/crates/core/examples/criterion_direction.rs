//! The two readings of the limiting criteria, side by side.

use geolp::geometry::{choose_limiter, inward_candidates, outward_candidates};
use geolp::{canonicalize, instances, solve, CriterionDirection, SolverOptions};

fn main() {
    let problem = instances::worked_example();
    let np = canonicalize(&problem).unwrap();
    let names = |rows: Vec<usize>| rows.iter().map(|&j| problem.label(j).to_string()).collect::<Vec<_>>().join(" ");

    for dir in [CriterionDirection::TableConsistent, CriterionDirection::Printed] {
        println!("{dir:?}");
        let opts = SolverOptions { criterion: dir, ..Default::default() };
        let point = geolp::geometry::bodmp(&np).unwrap().point;
        for dim in 0..np.dimension() {
            let choice = choose_limiter(dim, &np, &point, dir, opts.epsilon, true);
            println!(
                "  x{}: inward [{}] outward [{}] -> {}",
                dim + 1,
                names(inward_candidates(dim, &np, dir, opts.epsilon)),
                names(outward_candidates(dim, &np, dir, opts.epsilon)),
                choice.map_or("none".to_string(), |c| problem.label(c.row).to_string())
            );
        }
        match solve(&problem, &opts).unwrap().solution() {
            Some(s) => {
                println!("  basis after repair: {}", names(s.active.basis_rows.clone()));
                println!("  x = {:.4?}, z = {:.4}\n", s.x, s.z)
            }
            None => println!("  no vertex\n"),
        }
    }
}
