//! Seeded ensemble statistics; pass `csv` to dump the records instead.
//!
//! cargo run --release -p geolp --example ensemble_report [trials] [csv]

use geolp::harness::{default_specs, run_ensemble};
use geolp::io::{emit_ensemble, Format};
use geolp::SolverOptions;

fn main() {
    let mut args = std::env::args().skip(1);
    let trials = args.next().map_or(200, |t| t.parse().expect("trial count"));
    let format = if args.next().as_deref() == Some("csv") { Format::Csv } else { Format::Text };
    let ensemble = run_ensemble(&default_specs(7), trials, &SolverOptions::default()).unwrap();
    print!("{}", emit_ensemble(&ensemble, format));
}
