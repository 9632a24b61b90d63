//! Small dense linear algebra: square solves and rank by Gaussian
//! elimination with partial pivoting. Matrices are row-major `Vec<Vec<f64>>`.

/// Relative pivot threshold: a pivot is treated as zero when its magnitude
/// falls below `PIVOT_TOLERANCE * max initial row norm`.
pub const PIVOT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("matrix is singular to working precision")]
pub struct Singular;

fn max_row_norm(rows: &[Vec<f64>]) -> f64 {
    rows.iter()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}

/// Solves `a · x = b` for square `a`. No inverse is formed.
pub fn solve_square(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>, Singular> {
    let n = b.len();
    assert_eq!(a.len(), n, "matrix/rhs length mismatch");
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = max_row_norm(a);
    if scale == 0.0 {
        return Err(Singular);
    }
    let threshold = PIVOT_TOLERANCE * scale;

    // augmented copy
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            assert_eq!(row.len(), n, "matrix is not square");
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()).then(j.cmp(&i)))
            .expect("non-empty range");
        if m[pivot_row][col].abs() < threshold {
            return Err(Singular);
        }
        m.swap(col, pivot_row);
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..=n {
                m[row][k] -= factor * m[col][k];
            }
        }
    }

    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| m[row][k] * x[k]).sum();
        x[row] = (m[row][n] - tail) / m[row][row];
    }
    Ok(x)
}

/// Numerical rank of a (possibly rectangular) matrix.
pub fn rank(a: &[Vec<f64>]) -> usize {
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let threshold = PIVOT_TOLERANCE * max_row_norm(a);
    let mut m = a.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        if rank == m.len() {
            break;
        }
        let pivot_row = (rank..m.len())
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .expect("non-empty range");
        if m[pivot_row][col].abs() <= threshold {
            continue;
        }
        m.swap(rank, pivot_row);
        for row in rank + 1..m.len() {
            let factor = m[row][col] / m[rank][col];
            for k in col..cols {
                m[row][k] -= factor * m[rank][k];
            }
        }
        rank += 1;
    }
    rank
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `‖a · x − b‖∞`
pub fn residual_inf(a: &[Vec<f64>], x: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(row, &rhs)| (dot(row, x) - rhs).abs())
        .fold(0.0, f64::max)
}
