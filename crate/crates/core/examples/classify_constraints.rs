//! Orient every row against the objective and print the classification table.
//!
//! cargo run -p geolp --example classify_constraints [problem.lp]

use geolp::{canonicalize, instances, io, ConstraintClass};

fn main() {
    let problem = match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).expect("readable problem file");
            io::parse_problem_text(&text).expect("valid problem file")
        }
        None => instances::worked_example(),
    };
    print!("{}", io::classification_table(&problem));

    let np = canonicalize(&problem).expect("valid problem");
    let inward: Vec<&str> = np.inward().map(|r| problem.label(r.index)).collect();
    let outward: Vec<&str> = np
        .rows
        .iter()
        .filter(|r| r.class == ConstraintClass::Outward)
        .map(|r| problem.label(r.index))
        .collect();
    println!("\ninward:  {}", inward.join(" "));
    println!("outward: {}", outward.join(" "));
}
