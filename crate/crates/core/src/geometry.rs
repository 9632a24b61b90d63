//! Vector geometry of the method: unit normals, angles, the distance from
//! the origin to each boundary along the objective ray (BODD), the first
//! boundary that ray meets (BODMP), and the per-dimension limiting criteria.

use serde::{Deserialize, Serialize};

use crate::linalg::{dot, norm};
use crate::model::{ConstraintClass, NormalizedProblem, OrientedRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("cannot normalize a zero vector")]
pub struct ZeroVector;

pub fn unit_normal(v: &[f64]) -> Result<Vec<f64>, ZeroVector> {
    let len = norm(v);
    if len == 0.0 || !len.is_finite() {
        return Err(ZeroVector);
    }
    Ok(v.iter().map(|x| x / len).collect())
}

/// Cosine of the angle between two unit vectors, clamped to `[-1, 1]`.
pub fn cos_angle(u: &[f64], w: &[f64]) -> f64 {
    dot(u, w).clamp(-1.0, 1.0)
}

pub fn angle(u: &[f64], w: &[f64]) -> f64 {
    cos_angle(u, w).acos()
}

/// Distance from the origin to a boundary, measured along the objective ray.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Bodd {
    Crossing(f64),
    /// The ray is parallel to the boundary, points away from it, or the
    /// boundary lies behind the origin.
    NotCrossing,
}

impl Bodd {
    pub fn distance(self) -> Option<f64> {
        match self {
            Bodd::Crossing(d) => Some(d),
            Bodd::NotCrossing => None,
        }
    }
}

/// BODD of the row `a · x ≤ b` for objective unit vector `v_o`.
///
/// The ray `t · v_o` meets the boundary at `t = b / (a · v_o)`. This agrees
/// with the `c_1`-normalized closed form whenever `c_1 ≠ 0` and also covers
/// objectives with a zero first coefficient.
pub fn bodd(le_coeffs: &[f64], le_rhs: f64, objective_unit: &[f64]) -> Bodd {
    let rate = dot(le_coeffs, objective_unit);
    if rate <= 0.0 {
        return Bodd::NotCrossing;
    }
    let d = le_rhs / rate;
    if d > 0.0 && d.is_finite() {
        Bodd::Crossing(d)
    } else {
        Bodd::NotCrossing
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodmpResult {
    /// Constraint index (original order) of the closest inward boundary.
    pub row: usize,
    pub distance: f64,
    pub point: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("the objective ray crosses no inward constraint")]
pub struct NoInwardCrossing;

/// Per-row BODD in original order; outward rows are always `NotCrossing`.
pub fn bodd_table(np: &NormalizedProblem<'_>) -> Vec<Bodd> {
    np.rows
        .iter()
        .map(|row| match row.class {
            ConstraintClass::Inward => bodd(&row.coeffs, row.rhs, &np.objective_unit),
            ConstraintClass::Outward => Bodd::NotCrossing,
        })
        .collect()
}

/// The point where the objective ray first meets an inward boundary.
/// Ties break to the lowest constraint index.
pub fn bodmp(np: &NormalizedProblem<'_>) -> Result<BodmpResult, NoInwardCrossing> {
    let mut best: Option<(usize, f64)> = None;
    for row in np.inward() {
        if let Bodd::Crossing(d) = bodd(&row.coeffs, row.rhs, &np.objective_unit) {
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((row.index, d));
            }
        }
    }
    let (row, distance) = best.ok_or(NoInwardCrossing)?;
    let point = np.objective_unit.iter().map(|v| distance * v).collect();
    Ok(BodmpResult { row, distance, point })
}

/// `|Σ_i a_i (v_i − p_i)|` for a row with raw coefficients `a`, unit normal
/// `v` and reference point `p`. Used to rank competing limiters of a dimension.
///
/// The value depends on the row's scale through `a`.
pub fn limiting_distance(coeffs: &[f64], unit_normal: &[f64], point: &[f64]) -> f64 {
    coeffs
        .iter()
        .zip(unit_normal)
        .zip(point)
        .map(|((a, v), p)| a * (v - p))
        .sum::<f64>()
        .abs()
}

/// Standard point-to-hyperplane distance `|a · x − b| / ‖a‖`.
pub fn plane_distance(coeffs: &[f64], rhs: f64, point: &[f64]) -> f64 {
    (dot(coeffs, point) - rhs).abs() / norm(coeffs)
}

/// Which way the per-dimension limiting comparisons face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionDirection {
    /// Inward row `j` limits dimension `i` when `v_oi ≥ v_ji`; outward when
    /// `v_oi ≤ v_ji`.
    Printed,
    /// Inward row `j` limits dimension `i` when `v_ji ≥ v_oi`, i.e. the row
    /// rises in dimension `i` at least as fast as the objective does; outward
    /// when `v_ji < v_oi`.
    #[default]
    TableConsistent,
}

impl std::str::FromStr for CriterionDirection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "printed" => Ok(CriterionDirection::Printed),
            "table" | "table-consistent" => Ok(CriterionDirection::TableConsistent),
            other => Err(format!("unknown criterion direction `{other}` (printed, table)")),
        }
    }
}

fn inward_limits(dir: CriterionDirection, v_row: f64, v_obj: f64, eps: f64) -> bool {
    match dir {
        CriterionDirection::Printed => v_obj >= v_row - eps,
        CriterionDirection::TableConsistent => v_row >= v_obj - eps,
    }
}

fn outward_limits(dir: CriterionDirection, v_row: f64, v_obj: f64, eps: f64) -> bool {
    match dir {
        CriterionDirection::Printed => v_obj <= v_row + eps,
        CriterionDirection::TableConsistent => v_row < v_obj - eps,
    }
}

fn candidates<'a>(
    rows: impl Iterator<Item = &'a OrientedRow>,
    dim: usize,
    objective_unit: &[f64],
    test: impl Fn(f64, f64) -> bool,
) -> Vec<usize> {
    rows.filter(|row| test(row.unit_normal[dim], objective_unit[dim]))
        .map(|row| row.index)
        .collect()
}

/// Inward rows that may limit growth along dimension `dim` (0-based).
pub fn inward_candidates(
    dim: usize,
    np: &NormalizedProblem<'_>,
    dir: CriterionDirection,
    eps: f64,
) -> Vec<usize> {
    candidates(np.inward(), dim, &np.objective_unit, |vr, vo| inward_limits(dir, vr, vo, eps))
}

/// Outward rows that may limit growth along dimension `dim` (0-based).
pub fn outward_candidates(
    dim: usize,
    np: &NormalizedProblem<'_>,
    dir: CriterionDirection,
    eps: f64,
) -> Vec<usize> {
    candidates(np.outward(), dim, &np.objective_unit, |vr, vo| outward_limits(dir, vr, vo, eps))
}

/// The constraint chosen to limit one dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimiterChoice {
    pub dimension: usize,
    pub row: usize,
    pub class: ConstraintClass,
    pub distance: f64,
    /// All rows that passed the criterion for this dimension, ascending.
    pub candidates: Vec<usize>,
}

/// Candidates ordered by `limiting_distance` to `point`, ties by index.
pub fn rank_by_limiting_distance(
    np: &NormalizedProblem<'_>,
    candidates: &[usize],
    point: &[f64],
) -> Vec<(usize, f64)> {
    let mut ranked: Vec<(usize, f64)> = candidates
        .iter()
        .map(|&j| {
            let row = &np.rows[j];
            (j, limiting_distance(&row.coeffs, &row.unit_normal, point))
        })
        .collect();
    ranked.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    ranked
}

/// Picks the limiter for `dim`: the closest inward candidate, else the
/// closest outward candidate, else `None` (the dimension is unbounded).
pub fn choose_limiter(
    dim: usize,
    np: &NormalizedProblem<'_>,
    point: &[f64],
    dir: CriterionDirection,
    eps: f64,
    use_inward: bool,
) -> Option<LimiterChoice> {
    let inward = if use_inward { inward_candidates(dim, np, dir, eps) } else { Vec::new() };
    let (class, candidates) = if !inward.is_empty() {
        (ConstraintClass::Inward, inward)
    } else {
        (ConstraintClass::Outward, outward_candidates(dim, np, dir, eps))
    };
    let &(row, distance) = rank_by_limiting_distance(np, &candidates, point).first()?;
    Some(LimiterChoice { dimension: dim, row, class, distance, candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{worked_example, WORKED_EXAMPLE_PRINTED_BODMP};
    use crate::model::{canonicalize, Constraint, Problem};

    const DIR: CriterionDirection = CriterionDirection::TableConsistent;
    const EPS: f64 = 1e-9;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn unit_normal_examples() {
        let v = unit_normal(&[0.5, 1.0, 2.0]).unwrap();
        assert!(close(&v, &[0.218, 0.436, 0.873], 1e-3), "{v:?}");
        assert_eq!(unit_normal(&[1.0, 0.0, 0.0]).unwrap(), vec![1.0, 0.0, 0.0]);
        let r3 = unit_normal(&[3.0, 1.0, 2.0]).unwrap();
        assert!(close(&r3, &[0.802, 0.267, 0.535], 1e-3), "{r3:?}");
        assert_eq!(unit_normal(&[0.0, 0.0]), Err(ZeroVector));
    }

    #[test]
    fn cos_angle_examples() {
        let u = unit_normal(&[1.0, 2.0, 3.0]).unwrap();
        assert!((cos_angle(&u, &u) - 1.0).abs() < 1e-15);
        assert_eq!(cos_angle(&[1.0, 0.0], &[0.0, 1.0]), 0.0);
        let vo = unit_normal(&[0.5, 1.0, 2.0]).unwrap();
        let v2 = unit_normal(&[1.7, 2.8, 2.1]).unwrap();
        assert!((cos_angle(&v2, &vo) - 0.880).abs() < 2e-3);
        assert!((angle(&v2, &vo) - 0.494).abs() < 2e-3);
        // clamped even when rounding pushes the dot product past 1
        assert!(cos_angle(&[1.0 + 1e-15, 0.0], &[1.0, 0.0]) <= 1.0);
    }

    #[test]
    fn bodd_examples() {
        let vo = unit_normal(&[0.5, 1.0, 2.0]).unwrap();
        let d3 = bodd(&[3.0, 1.0, 2.0], 5.5, &vo).distance().unwrap();
        assert!((d3 - 1.939).abs() < 1e-3, "{d3}");
        let d4 = bodd(&[1.1, 2.3, -1.0], 5.3, &vo).distance().unwrap();
        assert!((d4 - 14.287).abs() < 1e-3, "{d4}");
        let axis = unit_normal(&[0.0, 1.0]).unwrap();
        assert_eq!(bodd(&[0.0, 1.0], 2.0, &axis), Bodd::Crossing(2.0));
        assert_eq!(bodd(&[1.0, 0.0], 2.0, &axis), Bodd::NotCrossing);
        // boundary behind the origin
        assert_eq!(bodd(&[0.0, 1.0], -2.0, &axis), Bodd::NotCrossing);
    }

    #[test]
    fn bodmp_of_worked_example() {
        let p = worked_example();
        let np = canonicalize(&p).unwrap();
        let b = bodmp(&np).unwrap();
        assert_eq!(b.row, 1);
        assert!((b.distance - 1.459).abs() < 1e-3, "{}", b.distance);
        assert!(close(&b.point, &[0.318, 0.637, 1.274], 2e-3), "{:?}", b.point);
    }

    #[test]
    fn bodmp_single_row() {
        let p = Problem::new(vec![1.0], vec![Constraint::le(vec![1.0], 1.0)]);
        let np = canonicalize(&p).unwrap();
        let b = bodmp(&np).unwrap();
        assert_eq!((b.row, b.point.clone()), (0, vec![1.0]));
    }

    #[test]
    fn bodmp_without_inward_crossing() {
        let p = Problem::new(vec![1.0], vec![Constraint::ge(vec![1.0], 0.0)]);
        let np = canonicalize(&p).unwrap();
        assert_eq!(bodmp(&np), Err(NoInwardCrossing));
    }

    #[test]
    fn limiting_distance_examples() {
        let p = worked_example();
        let np = canonicalize(&p).unwrap();
        let pt = WORKED_EXAMPLE_PRINTED_BODMP;
        let r3 = &np.rows[2];
        let e3 = limiting_distance(&r3.coeffs, &r3.unit_normal, &pt);
        assert!((e3 - 0.562).abs() < 5e-3, "{e3}");
        let r6 = &np.rows[5];
        let e6 = limiting_distance(&r6.coeffs, &r6.unit_normal, &pt);
        assert!((e6 - 0.669).abs() < 1e-3, "{e6}");
        // normal equal to the point gives zero
        let v = unit_normal(&[1.0, 1.0]).unwrap();
        assert_eq!(limiting_distance(&[1.0, 1.0], &v, &v), 0.0);
    }

    #[test]
    fn plane_distance_examples() {
        assert_eq!(plane_distance(&[1.0, 0.0], 1.0, &[0.0, 0.0]), 1.0);
        assert_eq!(plane_distance(&[1.0, 1.0], 2.0, &[1.0, 1.0]), 0.0);
        let d = plane_distance(&[3.0, 1.0, 2.0], 5.5, &WORKED_EXAMPLE_PRINTED_BODMP);
        assert!((d - 0.319).abs() < 2e-3, "{d}");
    }

    #[test]
    fn worked_example_candidates() {
        let p = worked_example();
        let np = canonicalize(&p).unwrap();
        assert_eq!(inward_candidates(0, &np, DIR, EPS), vec![0, 1, 2, 3, 4]);
        assert_eq!(inward_candidates(1, &np, DIR, EPS), vec![0, 1, 3, 4]);
        assert!(inward_candidates(2, &np, DIR, EPS).is_empty());
        assert_eq!(outward_candidates(2, &np, DIR, EPS), vec![5, 6]);
        assert!(!outward_candidates(0, &np, DIR, EPS).contains(&5));
        // the printed outward rule only admits R8 for dimension 3
        assert_eq!(outward_candidates(2, &np, CriterionDirection::Printed, EPS), vec![7]);
    }

    #[test]
    fn lower_bound_never_limits_upward_growth() {
        let p = Problem::new(vec![1.0], vec![Constraint::ge(vec![1.0], 0.0)]);
        let np = canonicalize(&p).unwrap();
        assert!(outward_candidates(0, &np, DIR, EPS).is_empty());
    }

    #[test]
    fn candidate_sets_respect_classes() {
        let p = worked_example();
        let np = canonicalize(&p).unwrap();
        for dir in [CriterionDirection::Printed, CriterionDirection::TableConsistent] {
            for dim in 0..3 {
                for j in inward_candidates(dim, &np, dir, EPS) {
                    assert_eq!(np.rows[j].class, ConstraintClass::Inward);
                }
                for j in outward_candidates(dim, &np, dir, EPS) {
                    assert_eq!(np.rows[j].class, ConstraintClass::Outward);
                }
            }
        }
    }

    #[test]
    fn choose_limiter_uses_closest_candidate() {
        let p = worked_example();
        let np = canonicalize(&p).unwrap();
        let b = bodmp(&np).unwrap();
        let dim3 = choose_limiter(2, &np, &b.point, DIR, EPS, true).unwrap();
        assert_eq!((dim3.row, dim3.class), (6, ConstraintClass::Outward));
        assert_eq!(dim3.candidates, vec![5, 6]);
    }
}
