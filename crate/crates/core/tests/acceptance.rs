//! Acceptance gate. Runs every criterion at its stated tolerance, prints one
//! PASS/FAIL line each and exits non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use geolp::geometry::{bodd_table, bodmp, limiting_distance, Bodd};
use geolp::harness::{default_specs, generate_problem, run_ensemble, trial_spec, GenSpec, Statistics};
use geolp::instances::{
    half_open_strip, unit_cube, unit_square, worked_example, WORKED_EXAMPLE_PRINTED_BODMP,
    WORKED_EXAMPLE_PRINTED_VERTEX,
};
use geolp::io::{emit_problem, parse_problem_text};
use geolp::linalg::solve_square;
use geolp::oracle::{
    check_feasibility, enumerate_vertices, simplex_solve, EnumerationOptions, SimplexOptions,
};
use geolp::solver::{evaluate_objective, SolveOutcome};
use geolp::{canonicalize, solve, CriterionDirection, SolverOptions};

type Verdict = Result<String, String>;

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn step_one() -> Verdict {
    let p = worked_example();
    let started = Instant::now();
    let np = canonicalize(&p).map_err(|e| e.to_string())?;
    let hit = bodmp(&np).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    let table = bodd_table(&np);
    let d = |j: usize| match table[j] {
        Bodd::Crossing(d) => d,
        Bodd::NotCrossing => f64::NAN,
    };
    let vo = &np.objective_unit;
    let vo_ok = [0.218, 0.436, 0.873].iter().zip(vo).all(|(e, v)| near(*v, *e, 1e-3));
    let bodd_ok = near(d(2), 1.939, 1e-3) && near(d(3), 14.287, 1e-3) && near(d(4), 2.126, 1e-3);
    check(
        vo_ok && bodd_ok && hit.row == 1 && elapsed < Duration::from_millis(1),
        format!(
            "v_o = {vo:.4?}, d(R3, R4, R5) = ({:.3}, {:.3}, {:.3}), BODMP = {}, {elapsed:?}",
            d(2),
            d(3),
            d(4),
            p.label(hit.row)
        ),
    )
}

fn angle() -> Verdict {
    let p = worked_example();
    let np = canonicalize(&p).map_err(|e| e.to_string())?;
    let a = np.rows[1].angle;
    check(near(a, 0.494, 2e-3), format!("angle(R2, c) = {a:.4} rad"))
}

fn step_four() -> Verdict {
    let b = vec![vec![2.1, 3.0, 1.0], vec![1.7, 2.8, 2.1], vec![3.0, 1.0, 2.0]];
    let x = solve_square(&b, &[5.0, 5.2, 5.5]).map_err(|e| e.to_string())?;
    let z = evaluate_objective(&[0.5, 1.0, 2.0], &x);
    let x_ok = x.iter().zip(WORKED_EXAMPLE_PRINTED_VERTEX).all(|(a, e)| near(*a, e, 1e-3));

    // the printed basis and its printed inverse do not multiply to I
    let printed_b = [[3.0, 1.0, 2.0], [1.1, 2.3, -1.0], [0.0, 1.0, 0.0]];
    let printed_inv = [
        [0.3743, -0.5348, 0.3743],
        [0.3102, 0.1283, -0.0298],
        [-0.7166, 0.7380, 0.0834],
    ];
    let mut err: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let v: f64 = (0..3).map(|k| printed_b[i][k] * printed_inv[k][j]).sum();
            err = err.max((v - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    check(
        x_ok && near(z, 2.6257, 1e-3) && err >= 0.01,
        format!("x* = {x:.4?}, z* = {z:.4}, printed ‖B·B⁻¹ − I‖∞ = {err:.3} (identity fails as pinned)"),
    )
}

fn limiting_distance_fidelity() -> Verdict {
    let p = worked_example();
    let np = canonicalize(&p).map_err(|e| e.to_string())?;
    let e = |j: usize| limiting_distance(&np.rows[j].coeffs, &np.rows[j].unit_normal, &WORKED_EXAMPLE_PRINTED_BODMP);
    let (e3, e6) = (e(2), e(5));
    check(near(e3, 0.564, 5e-3) && near(e6, 0.669, 1e-3), format!("e(R3) = {e3:.4}, e(R6) = {e6:.4}"))
}

fn step_two_selection() -> Verdict {
    let p = worked_example();
    let opts = SolverOptions { criterion: CriterionDirection::TableConsistent, ..Default::default() };
    let outcome = solve(&p, &opts).map_err(|e| e.to_string())?;
    let Some(s) = outcome.solution() else {
        return Err(format!("no vertex: {}", outcome.status()));
    };
    let picked: Vec<&str> = s.active.basis_rows.iter().map(|&j| p.label(j)).collect();
    let expected = ["R3", "R4", "R7"];
    check(picked == expected, format!("selected {picked:?}, expected {expected:?}"))
}

fn oracle_agreement() -> Verdict {
    let started = Instant::now();
    let specs = default_specs(6);
    let mut disagreements = Vec::new();
    let mut worst: f64 = 0.0;
    let mut max_rows = 0;
    for index in 0..200 {
        let spec = trial_spec(&specs, index);
        let p = generate_problem(&spec).map_err(|e| e.to_string())?;
        max_rows = max_rows.max(p.num_constraints());
        let a = enumerate_vertices(&p, &EnumerationOptions::default()).map_err(|e| e.to_string())?;
        let b = simplex_solve(&p, &SimplexOptions::default()).map_err(|e| e.to_string())?;
        let z_ok = match (a.z, b.z) {
            (Some(za), Some(zb)) => {
                let rel = (za - zb).abs() / za.abs().max(zb.abs()).max(1e-300);
                worst = worst.max(rel);
                rel <= 1e-8
            }
            (None, None) => true,
            _ => false,
        };
        if a.status != b.status || !z_ok {
            disagreements.push(index);
        }
    }
    let elapsed = started.elapsed();
    check(
        disagreements.is_empty() && max_rows <= 12 && elapsed < Duration::from_secs(60),
        format!(
            "200 instances, m ≤ {max_rows}, disagreements {disagreements:?}, worst relative z gap {worst:.1e}, {elapsed:?}"
        ),
    )
}

fn feasibility_audit() -> Verdict {
    let p = worked_example();
    let report = check_feasibility(&p, &WORKED_EXAMPLE_PRINTED_VERTEX, 1e-7);
    let v: Vec<(String, f64)> = report.violations.iter().map(|v| (p.label(v.row).to_string(), v.amount)).collect();
    check(
        v.len() == 1 && v[0].0 == "R2" && near(v[0].1, 0.200, 1e-3),
        format!("violations {v:?}"),
    )
}

fn heuristic_properties() -> Verdict {
    let opts = SolverOptions::default();
    let specs = default_specs(8);
    let first = run_ensemble(&specs, 500, &opts).map_err(|e| e.to_string())?;
    let second = run_ensemble(&specs, 500, &opts).map_err(|e| e.to_string())?;
    let s = &first.statistics;

    // (a) over the ensemble plus small instances where the basis does match
    let mut matched = s.active_set_matches;
    let mut gap_violations = s.matched_with_gap;
    for p in [unit_square(), unit_cube()] {
        let r = geolp::harness::compare(&p, &opts).map_err(|e| e.to_string())?;
        if r.active_set_match {
            matched += 1;
            gap_violations += r.relative_gap.is_none_or(|g| g.abs() >= 1e-8) as usize;
        }
    }
    let a = gap_violations == 0;
    // (b)
    let b = s == &second.statistics
        && s.trials == 500
        && s.match_interval_95.is_some()
        && Statistics::from_records(&first.records, opts.feasibility_tol) == *s;
    // (c)
    let c = s.objective_scale_flips == 0;
    // (d)
    let d = s.heuristic_unbounded == 0;
    let (lo, hi) = s.match_interval_95.unwrap_or((f64::NAN, f64::NAN));
    check(
        a && b && c && d,
        format!(
            "(a) {gap_violations} gap violations over {matched} matches; (b) deterministic = {b}, match {}/{} = {:.3} (95% CI {lo:.3} to {hi:.3}); (c) objective-scale flips {}; (d) unbounded verdicts {}",
            s.active_set_matches, s.oracle_optimal, s.match_fraction, s.objective_scale_flips, s.heuristic_unbounded
        ),
    )
}

fn unboundedness() -> Verdict {
    let outcome = solve(&half_open_strip(), &SolverOptions::default()).map_err(|e| e.to_string())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = dir.path().join("strip.lp");
    std::fs::write(&file, emit_problem(&half_open_strip())).map_err(|e| e.to_string())?;
    let status = Command::new(env!("CARGO_BIN_EXE_geolp"))
        .arg("solve")
        .arg(&file)
        .output()
        .map_err(|e| e.to_string())?
        .status
        .code();
    check(
        outcome == SolveOutcome::Unbounded { dimension: 1 } && status == Some(2),
        format!("outcome {outcome:?} (dimension 0-based), CLI exit {status:?}"),
    )
}

fn round_trip() -> Verdict {
    let mut failures = Vec::new();
    for index in 0..100u64 {
        let spec = GenSpec {
            seed: 1000 + index,
            n: 1 + (index % 5) as usize,
            m_inward: 1 + (index % 4) as usize,
            m_outward: (index % 6) as usize,
            include_box: index % 2 == 0,
            ..Default::default()
        };
        let p = generate_problem(&spec).map_err(|e| e.to_string())?;
        let back = parse_problem_text(&emit_problem(&p)).map_err(|e| e.to_string())?;
        let exact = back == p
            && back
                .objective
                .iter()
                .chain(back.constraints.iter().flat_map(|r| r.coeffs.iter().chain([&r.rhs])))
                .zip(p.objective.iter().chain(p.constraints.iter().flat_map(|r| r.coeffs.iter().chain([&r.rhs]))))
                .all(|(a, b)| a.to_bits() == b.to_bits());
        if !exact {
            failures.push(index);
        }
    }
    check(failures.is_empty(), format!("100 problems, bit-exact failures {failures:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("1 step-one reproduction", step_one),
        ("2 angle reproduction", angle),
        ("3 step-four reproduction", step_four),
        ("4 limiting distance fidelity", limiting_distance_fidelity),
        ("5 step-two selection", step_two_selection),
        ("6 oracle cross-validation", oracle_agreement),
        ("7 feasibility audit", feasibility_audit),
        ("8 heuristic properties", heuristic_properties),
        ("9 unboundedness", unboundedness),
        ("10 round trip", round_trip),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
