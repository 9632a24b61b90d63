//! Write a generated problem to text and read it back bit for bit.

use geolp::harness::{generate_problem, GenSpec};
use geolp::io::{emit_problem, parse_problem_text};

fn main() {
    let spec = GenSpec { seed: 11, n: 3, m_inward: 3, m_outward: 4, include_box: false, ..Default::default() };
    let problem = generate_problem(&spec).unwrap();
    let text = emit_problem(&problem);
    print!("{text}");

    let back = parse_problem_text(&text).unwrap();
    assert_eq!(back, problem);
    println!("# parsed back identically");

    let padded = parse_problem_text("max: x1\nr1: x4 <= 1\n").unwrap();
    println!("\n# `max: x1` with `r1: x4 <= 1` becomes\n{}", emit_problem(&padded));
}
