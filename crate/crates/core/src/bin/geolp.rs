use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use geolp::harness::{self, GenSpec};
use geolp::io::{self, exit, CompareReport, Format, OracleReport, SolveReport};
use geolp::oracle::{enumerate_vertices, simplex_solve, EnumerationOptions, SimplexOptions};
use geolp::{CriterionDirection, Problem, SolverOptions};

#[derive(Parser)]
#[command(name = "geolp", version, about = "Geometric one-shot LP vertex estimates, checked against exact solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct MethodArgs {
    /// Slack used in the limiting criteria comparisons
    #[arg(long, default_value_t = 1e-9)]
    epsilon: f64,
    /// Direction of the limiting criteria: printed or table
    #[arg(long, default_value = "table")]
    criterion: CriterionDirection,
}

impl MethodArgs {
    fn options(&self, verify: bool) -> SolverOptions {
        SolverOptions { epsilon: self.epsilon, criterion: self.criterion, verify, ..Default::default() }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the geometric method on a problem file
    Solve {
        file: PathBuf,
        #[command(flatten)]
        method: MethodArgs,
        /// Skip the feasibility check of the returned vertex
        #[arg(long)]
        no_verify: bool,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Solve a problem file exactly
    Oracle {
        file: PathBuf,
        /// enum (vertex enumeration) or simplex
        #[arg(long, default_value = "enum")]
        method: String,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Compare the geometric method with the exact optimum
    Compare {
        file: PathBuf,
        #[command(flatten)]
        method: MethodArgs,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Write a random problem file
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long = "m-in", default_value_t = 5)]
        m_in: usize,
        #[arg(long = "m-out", default_value_t = 3)]
        m_out: usize,
        /// Add 0 <= x_i <= 10 bounds
        #[arg(long = "box")]
        boxed: bool,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded ensemble of comparisons
    Bench {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON list of generator specs (defaults to boxed n = 2, 3, 4)
        #[arg(long)]
        spec_file: Option<PathBuf>,
        #[command(flatten)]
        method: MethodArgs,
        #[arg(long, default_value = "text")]
        format: Format,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl std::fmt::Display) -> Failure {
    Failure { code, message: message.to_string() }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(exit::NO_INPUT, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Problem, Failure> {
    let problem = io::parse_problem_text(&read(path)?)
        .map_err(|e| fail(exit::DATA, format!("{}: {e}", path.display())))?;
    geolp::validate(&problem).map_err(|e| fail(exit::DATA, format!("{}: {e}", path.display())))?;
    Ok(problem)
}

fn solve_csv(report: &SolveReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let x = report.x.clone().unwrap_or_default();
    let mut header = vec!["status".to_string(), "z".to_string()];
    header.extend((1..=x.len()).map(|k| format!("x{k}")));
    let mut row = vec![report.status.clone(), report.z.map(|z| z.to_string()).unwrap_or_default()];
    row.extend(x.iter().map(f64::to_string));
    w.write_record(&header).and_then(|_| w.write_record(&row)).expect("csv into memory");
    String::from_utf8(w.into_inner().expect("csv into memory")).expect("csv is utf-8")
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Solve { file, method, no_verify, format } => {
            let problem = load(&file)?;
            let opts = method.options(!no_verify);
            let outcome = geolp::solve(&problem, &opts).map_err(|e| fail(exit::DATA, e))?;
            let report = SolveReport::new(&problem, &outcome, &opts);
            print!(
                "{}",
                match format {
                    Format::Json => io::to_json(&report),
                    Format::Text => io::solve_text(&problem, &report),
                    Format::Csv => solve_csv(&report),
                }
            );
            Ok(io::outcome_exit_code(&outcome))
        }
        Command::Oracle { file, method, format } => {
            let problem = load(&file)?;
            let result = match method.as_str() {
                "enum" => enumerate_vertices(&problem, &EnumerationOptions::default()),
                "simplex" => simplex_solve(&problem, &SimplexOptions::default()),
                other => return Err(fail(exit::USAGE, format!("unknown oracle method `{other}` (enum, simplex)"))),
            }
            .map_err(|e| fail(exit::ORACLE_ERROR, e))?;
            let report = OracleReport::new(&problem, &method, &result);
            print!(
                "{}",
                match format {
                    Format::Text => io::oracle_text(&report),
                    _ => io::to_json(&report),
                }
            );
            Ok(io::oracle_exit_code(result.status))
        }
        Command::Compare { file, method, format } => {
            let problem = load(&file)?;
            let opts = method.options(true);
            let record = harness::compare(&problem, &opts).map_err(|e| fail(exit::DATA, e))?;
            let report = CompareReport::new(&problem, &record, &opts);
            print!(
                "{}",
                match format {
                    Format::Text => io::compare_text(&problem, &report),
                    Format::Csv => io::records_to_csv(std::slice::from_ref(&record)),
                    Format::Json => io::to_json(&report),
                }
            );
            Ok(exit::OK)
        }
        Command::Gen { seed, n, m_in, m_out, boxed, out } => {
            let spec = GenSpec { seed, n, m_inward: m_in, m_outward: m_out, include_box: boxed, ..Default::default() };
            let problem = harness::generate_problem(&spec).map_err(|e| fail(exit::USAGE, e))?;
            let text = io::emit_problem(&problem);
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| fail(exit::NO_INPUT, format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(exit::OK)
        }
        Command::Bench { trials, seed, spec_file, method, format } => {
            let specs: Vec<GenSpec> = match spec_file {
                Some(path) => {
                    let specs: Vec<GenSpec> = serde_json::from_str(&read(&path)?)
                        .map_err(|e| fail(exit::DATA, format!("{}: {e}", path.display())))?;
                    // --seed shifts every spec's own seed
                    specs.into_iter().map(|s| s.with_seed(s.seed ^ seed)).collect()
                }
                None => harness::default_specs(seed),
            };
            let ensemble =
                harness::run_ensemble(&specs, trials, &method.options(true)).map_err(|e| fail(exit::DATA, e))?;
            print!("{}", io::emit_ensemble(&ensemble, format));
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("geolp: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
