use crate::linalg::{self, dot};
use crate::model::{validate, Problem};

use super::{binding_rows, binomial, OracleError, OracleResult, OracleStatus, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerationOptions {
    /// Absolute row slack tolerance.
    pub tol: f64,
    /// Maximum number of `n`-row subsets to try.
    pub max_subsets: u128,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { tol: DEFAULT_TOL, max_subsets: 200_000 }
    }
}

/// Advances `idx` to the next `k`-combination of `0..m` in lexicographic order.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct BestVertex {
    x: Vec<f64>,
    z: f64,
    feasible_count: usize,
}

/// Best feasible intersection of `n` rows of `a · x ≤ b`. The first maximizer
/// in lexicographic subset order wins ties.
fn best_vertex(rows: &[(Vec<f64>, f64)], c: &[f64], tol: f64) -> Option<BestVertex> {
    let n = c.len();
    let m = rows.len();
    if m < n {
        return None;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut best: Option<BestVertex> = None;
    let mut feasible_count = 0;
    loop {
        let a: Vec<Vec<f64>> = idx.iter().map(|&j| rows[j].0.clone()).collect();
        let b: Vec<f64> = idx.iter().map(|&j| rows[j].1).collect();
        if let Ok(x) = linalg::solve_square(&a, &b) {
            if rows.iter().all(|(a, b)| dot(a, &x) - b <= tol) {
                feasible_count += 1;
                let z = dot(c, &x);
                if best.as_ref().is_none_or(|bv| z > bv.z) {
                    best = Some(BestVertex { x, z, feasible_count: 0 });
                }
            }
        }
        if !next_combination(&mut idx, m) {
            break;
        }
    }
    best.map(|bv| BestVertex { feasible_count, ..bv })
}

const RECESSION_TOL: f64 = 1e-9;

/// `max c · d` over `A_≤ d ≤ 0`, `‖d‖∞ ≤ 1`. Exact by enumeration when the
/// subset count fits the budget, otherwise only the `2^n` box corners are
/// checked (which can miss an improving direction).
fn recession_gain(le_rows: &[(Vec<f64>, f64)], c: &[f64], cap: u128) -> f64 {
    let n = c.len();
    let mut rows: Vec<(Vec<f64>, f64)> = le_rows.iter().map(|(a, _)| (a.clone(), 0.0)).collect();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        rows.push((e.clone(), 1.0));
        e[i] = -1.0;
        rows.push((e, 1.0));
    }
    if binomial(rows.len(), n) <= cap {
        return best_vertex(&rows, c, RECESSION_TOL).map_or(0.0, |bv| bv.z);
    }
    let mut gain: f64 = 0.0;
    for mask in 0u64..(1u64 << n.min(63)) {
        let d: Vec<f64> = (0..n).map(|i| if mask >> i & 1 == 1 { 1.0 } else { -1.0 }).collect();
        if le_rows.iter().all(|(a, _)| dot(a, &d) <= RECESSION_TOL) {
            gain = gain.max(dot(c, &d));
        }
    }
    gain
}

/// Brute-force optimum over every intersection of `n` constraint boundaries.
pub fn enumerate_vertices(
    problem: &Problem,
    opts: &EnumerationOptions,
) -> Result<OracleResult, OracleError> {
    validate(problem)?;
    let n = problem.dimension();
    let m = problem.num_constraints();
    let subsets = binomial(m, n);
    if subsets > opts.max_subsets {
        return Err(OracleError::BudgetExceeded { subsets, cap: opts.max_subsets });
    }
    let le_rows: Vec<(Vec<f64>, f64)> = problem.constraints.iter().map(|c| c.le_form()).collect();
    let c = &problem.objective;

    let best = best_vertex(&le_rows, c, opts.tol);
    let Some(best) = best else {
        let coeffs: Vec<Vec<f64>> = le_rows.iter().map(|(a, _)| a.clone()).collect();
        let rank = linalg::rank(&coeffs);
        if rank < n {
            return Err(OracleError::NotPointed { rank, dimension: n });
        }
        return Ok(OracleResult::without_point(OracleStatus::Infeasible, 0));
    };

    let scale: f64 = c.iter().map(|v| v.abs()).sum();
    if recession_gain(&le_rows, c, opts.max_subsets) > 1e-6 * scale {
        return Ok(OracleResult::without_point(OracleStatus::Unbounded, best.feasible_count));
    }
    let active_rows = binding_rows(problem, &best.x, opts.tol);
    Ok(OracleResult {
        status: OracleStatus::Optimal,
        z: Some(best.z),
        x: Some(best.x),
        active_rows,
        vertex_count: best.feasible_count,
    })
}
