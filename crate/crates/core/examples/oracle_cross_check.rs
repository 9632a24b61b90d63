//! The two exact oracles on seeded boxed instances.

use geolp::harness::{default_specs, generate_problem, trial_spec};
use geolp::oracle::{enumerate_vertices, simplex_solve, EnumerationOptions, SimplexOptions};

fn main() {
    let specs = default_specs(2024);
    let mut worst: f64 = 0.0;
    for index in 0..50 {
        let problem = generate_problem(&trial_spec(&specs, index)).unwrap();
        let a = enumerate_vertices(&problem, &EnumerationOptions::default()).unwrap();
        let b = simplex_solve(&problem, &SimplexOptions::default()).unwrap();
        assert_eq!(a.status, b.status);
        if let (Some(za), Some(zb)) = (a.z, b.z) {
            worst = worst.max((za - zb).abs() / za.abs().max(1.0));
        }
        if index < 5 {
            println!(
                "instance {index}: n = {}, m = {}, {} vertices, z = {:.6}",
                problem.dimension(),
                problem.num_constraints(),
                a.vertex_count,
                a.z.unwrap()
            );
        }
    }
    println!("largest relative disagreement over 50 instances: {worst:.2e}");
}
