//! Small reference instances used by the examples, fixtures and tests.

use crate::model::{Constraint, Problem};

/// The three-variable, eight-row worked example: five inward rows `R1..R5`
/// and three outward rows `R6..R8`.
pub fn worked_example() -> Problem {
    Problem::new(
        vec![0.5, 1.0, 2.0],
        vec![
            Constraint::le(vec![2.1, 3.0, 1.0], 5.2),
            Constraint::le(vec![1.7, 2.8, 2.1], 5.0),
            Constraint::le(vec![3.0, 1.0, 2.0], 5.5),
            Constraint::le(vec![1.1, 2.3, -1.0], 5.3),
            Constraint::le(vec![2.1, 3.0, 1.1], 5.8),
            Constraint::ge(vec![1.0, 0.0, 0.0], 0.0),
            Constraint::ge(vec![0.0, 1.0, 0.0], 0.0),
            Constraint::ge(vec![0.0, 0.2, 1.0], -1.0),
        ],
    )
}

/// Vertex reported for the worked example in its original write-up.
/// It violates `R2` by about 0.2.
pub const WORKED_EXAMPLE_PRINTED_VERTEX: [f64; 3] = [1.1497, 0.6241, 0.7134];

/// BODMP coordinates printed alongside the worked example (they are not
/// reproducible from its data; the recomputed point is `(0.318, 0.637, 1.274)`).
pub const WORKED_EXAMPLE_PRINTED_BODMP: [f64; 3] = [0.331, 0.662, 1.325];

/// `max x + y` over the unit box `0 ≤ x, y ≤ 1`.
pub fn unit_square() -> Problem {
    Problem::new(
        vec![1.0, 1.0],
        vec![
            Constraint::le(vec![1.0, 0.0], 1.0),
            Constraint::le(vec![0.0, 1.0], 1.0),
            Constraint::ge(vec![1.0, 0.0], 0.0),
            Constraint::ge(vec![0.0, 1.0], 0.0),
        ],
    )
}

/// `max x1 + x2` with the single row `x1 ≤ 1`; unbounded along `x2`.
pub fn half_open_strip() -> Problem {
    Problem::new(vec![1.0, 1.0], vec![Constraint::le(vec![1.0, 0.0], 1.0)])
}

/// `max x + 2y` over the triangle `x, y ≥ 0`, `x + y ≤ 1`.
pub fn triangle() -> Problem {
    Problem::new(
        vec![1.0, 2.0],
        vec![
            Constraint::ge(vec![1.0, 0.0], 0.0),
            Constraint::ge(vec![0.0, 1.0], 0.0),
            Constraint::le(vec![1.0, 1.0], 1.0),
        ],
    )
}

/// `max x1 + x2 + x3` over the unit cube.
pub fn unit_cube() -> Problem {
    let mut rows = Vec::new();
    for i in 0..3 {
        let mut e = vec![0.0; 3];
        e[i] = 1.0;
        rows.push(Constraint::le(e.clone(), 1.0));
        rows.push(Constraint::ge(e, 0.0));
    }
    Problem::new(vec![1.0, 1.0, 1.0], rows)
}

/// `max x` with `x ≤ 0` and `x ≥ 1`.
pub fn infeasible_interval() -> Problem {
    Problem::new(vec![1.0], vec![Constraint::le(vec![1.0], 0.0), Constraint::ge(vec![1.0], 1.0)])
}

/// `max x` with only `x ≥ 0`.
pub fn open_ray() -> Problem {
    Problem::new(vec![1.0], vec![Constraint::ge(vec![1.0], 0.0)])
}
