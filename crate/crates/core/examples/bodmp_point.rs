//! Walk the objective ray until it hits the first inward boundary.

use geolp::geometry::{bodd_table, bodmp, Bodd};
use geolp::{canonicalize, instances};

fn main() {
    let problem = instances::worked_example();
    let np = canonicalize(&problem).unwrap();
    println!("unit objective {:.4?}", np.objective_unit);

    for (row, d) in np.rows.iter().zip(bodd_table(&np)) {
        match d {
            Bodd::Crossing(d) => println!("{:<3} crosses the ray at {d:.4}", problem.label(row.index)),
            Bodd::NotCrossing => println!("{:<3} never crosses", problem.label(row.index)),
        }
    }

    let hit = bodmp(&np).expect("some inward row crosses");
    println!(
        "\nfirst boundary: {} at distance {:.4}, point {:.4?}",
        problem.label(hit.row),
        hit.distance,
        hit.point
    );
}
