//! Two-phase dense tableau simplex with Bland's smallest-index rule.
//!
//! Free variables are split as `x = x⁺ − x⁻`. Every row becomes
//! `a x⁺ − a x⁻ + s = b`; rows with `b < 0` are negated and receive an
//! artificial variable for phase one.

use crate::model::{validate, Problem};
use crate::solver::evaluate_objective;

use super::{binding_rows, OracleError, OracleResult, OracleStatus, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Row slack tolerance for the returned binding set.
    pub tol: f64,
    pub max_pivots: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions { tol: DEFAULT_TOL, max_pivots: 50_000 }
    }
}

const PIVOT_EPS: f64 = 1e-9;

struct Tableau {
    /// `rows × (cols + 1)`, last column is the right-hand side.
    t: Vec<Vec<f64>>,
    /// Reduced costs `c_B B⁻¹ A_j − c_j`; last entry is the objective value.
    cost: Vec<f64>,
    basis: Vec<usize>,
    cols: usize,
    pivots: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col];
        for v in self.t[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f != 0.0 {
                for (v, pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        let f = self.cost[col];
        if f != 0.0 {
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Sets the reduced-cost row for maximizing `c` over the current basis.
    fn price(&mut self, c: &[f64]) {
        let mut cost: Vec<f64> = (0..=self.cols).map(|j| if j < self.cols { -c[j] } else { 0.0 }).collect();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = c[b];
            if cb != 0.0 {
                for (v, tv) in cost.iter_mut().zip(&self.t[i]) {
                    *v += cb * tv;
                }
            }
        }
        self.cost = cost;
    }

    fn run(&mut self, allowed: usize, max_pivots: usize) -> Result<PhaseEnd, OracleError> {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.cost[j] < -PIVOT_EPS) else {
                return Ok(PhaseEnd::Optimal);
            };
            let rhs = self.cols;
            let mut leave: Option<(usize, f64)> = None;
            for (i, r) in self.t.iter().enumerate() {
                if r[enter] > PIVOT_EPS {
                    let ratio = r[rhs] / r[enter];
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - 1e-12
                                || (ratio <= lr + 1e-12 && self.basis[i] < self.basis[li])
                            {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((row, _)) = leave else {
                return Ok(PhaseEnd::Unbounded);
            };
            if self.pivots >= max_pivots {
                return Err(OracleError::IterationCap(max_pivots));
            }
            self.pivot(row, enter);
        }
    }
}

pub fn simplex_solve(problem: &Problem, opts: &SimplexOptions) -> Result<OracleResult, OracleError> {
    validate(problem)?;
    let n = problem.dimension();
    let m = problem.num_constraints();
    let le: Vec<(Vec<f64>, f64)> = problem.constraints.iter().map(|c| c.le_form()).collect();
    let artificial_rows: Vec<usize> = (0..m).filter(|&i| le[i].1 < 0.0).collect();
    let structural = 2 * n + m;
    let cols = structural + artificial_rows.len();

    let mut t = vec![vec![0.0; cols + 1]; m];
    let mut basis = vec![0; m];
    for (i, (a, b)) in le.iter().enumerate() {
        let sign = if *b < 0.0 { -1.0 } else { 1.0 };
        for k in 0..n {
            t[i][k] = sign * a[k];
            t[i][n + k] = -sign * a[k];
        }
        t[i][2 * n + i] = sign;
        t[i][cols] = sign * b;
        basis[i] = 2 * n + i;
    }
    for (k, &i) in artificial_rows.iter().enumerate() {
        t[i][structural + k] = 1.0;
        basis[i] = structural + k;
    }
    let mut tab = Tableau { t, cost: Vec::new(), basis, cols, pivots: 0 };

    if !artificial_rows.is_empty() {
        let phase_one: Vec<f64> = (0..cols).map(|j| if j >= structural { -1.0 } else { 0.0 }).collect();
        tab.price(&phase_one);
        tab.run(cols, opts.max_pivots)?;
        if tab.cost[cols] < -opts.tol {
            return Ok(OracleResult::without_point(OracleStatus::Infeasible, 0));
        }
        // drive remaining artificials out of the basis; drop rows that are redundant
        let mut i = 0;
        while i < tab.t.len() {
            if tab.basis[i] >= structural {
                match (0..structural).find(|&j| tab.t[i][j].abs() > PIVOT_EPS) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.t.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut phase_two = vec![0.0; cols];
    for k in 0..n {
        phase_two[k] = problem.objective[k];
        phase_two[n + k] = -problem.objective[k];
    }
    tab.price(&phase_two);
    if let PhaseEnd::Unbounded = tab.run(structural, opts.max_pivots)? {
        return Ok(OracleResult::without_point(OracleStatus::Unbounded, 0));
    }

    let mut split = vec![0.0; cols];
    for (i, &b) in tab.basis.iter().enumerate() {
        split[b] = tab.t[i][cols];
    }
    let x: Vec<f64> = (0..n).map(|k| split[k] - split[n + k]).collect();
    let z = evaluate_objective(&problem.objective, &x);
    let active_rows = binding_rows(problem, &x, opts.tol);
    Ok(OracleResult { status: OracleStatus::Optimal, x: Some(x), z: Some(z), active_rows, vertex_count: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{half_open_strip, infeasible_interval, open_ray, triangle, unit_cube, worked_example};
    use crate::model::Constraint;

    fn run(p: &Problem) -> OracleResult {
        simplex_solve(p, &SimplexOptions::default()).unwrap()
    }

    #[test]
    fn triangle_optimum() {
        let r = run(&triangle());
        assert_eq!(r.status, OracleStatus::Optimal);
        assert!((r.z.unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cube_optimum() {
        assert!((run(&unit_cube()).z.unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn worked_example_optimum() {
        let r = run(&worked_example());
        assert!((r.z.unwrap() - 100.0 / 21.0).abs() < 1e-9);
        assert_eq!(r.active_rows, vec![1, 5, 6]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(run(&infeasible_interval()).status, OracleStatus::Infeasible);
        assert_eq!(run(&open_ray()).status, OracleStatus::Unbounded);
        assert_eq!(run(&half_open_strip()).status, OracleStatus::Unbounded);
    }

    #[test]
    fn free_variables_reach_negative_optimum() {
        // max -x - y with x >= -2, y >= -3  →  (-2, -3)
        let p = Problem::new(
            vec![-1.0, -1.0],
            vec![Constraint::ge(vec![1.0, 0.0], -2.0), Constraint::ge(vec![0.0, 1.0], -3.0)],
        );
        let r = run(&p);
        let x = r.x.unwrap();
        assert!((x[0] + 2.0).abs() < 1e-12 && (x[1] + 3.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_cycling_instance_terminates() {
        // Beale's classic cycling example (max form), needs anti-cycling
        let p = Problem::new(
            vec![0.75, -150.0, 0.02, -6.0],
            vec![
                Constraint::le(vec![0.25, -60.0, -0.04, 9.0], 0.0),
                Constraint::le(vec![0.5, -90.0, -0.02, 3.0], 0.0),
                Constraint::le(vec![0.0, 0.0, 1.0, 0.0], 1.0),
                Constraint::ge(vec![1.0, 0.0, 0.0, 0.0], 0.0),
                Constraint::ge(vec![0.0, 1.0, 0.0, 0.0], 0.0),
                Constraint::ge(vec![0.0, 0.0, 1.0, 0.0], 0.0),
                Constraint::ge(vec![0.0, 0.0, 0.0, 1.0], 0.0),
            ],
        );
        let r = run(&p);
        assert_eq!(r.status, OracleStatus::Optimal);
        assert!((r.z.unwrap() - 0.05).abs() < 1e-9, "{:?}", r.z);
    }

    #[test]
    fn pivot_cap_reports_error() {
        let opts = SimplexOptions { max_pivots: 0, ..Default::default() };
        assert_eq!(simplex_solve(&unit_cube(), &opts), Err(OracleError::IterationCap(0)));
    }
}
