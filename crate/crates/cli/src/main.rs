use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cadom::io::{describe, parse_model, parse_solution, parse_weights, write_model, write_solution, write_weights};
use cadom::testkit::{differential_run, generate, Family, GenSpec, WeightDist, WeightSpec, ORACLE_LIMIT};
use cadom::{solve, solve_checked, verify, CircularArcModel, Error, Graph, Problem, WeightKind, WeightMap};
use clap::{Parser, Subcommand, ValueEnum};

const INFEASIBLE: u8 = 1;
const INPUT: u8 = 3;
const INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "cadom", version, about = "Exact perfect and efficient domination on circular-arc graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print the solution block.
    Solve {
        #[arg(long, value_parser = parse_problem)]
        problem: Problem,
        #[arg(long)]
        model: PathBuf,
        /// Weight file; unit weights when absent.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Re-verify the answer before printing it.
        #[arg(long)]
        check: bool,
    },
    /// Check a solution file against an instance.
    Verify {
        #[arg(long, value_parser = parse_problem)]
        problem: Problem,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "unit", value_parser = parse_dist)]
        weights: WeightDist,
        /// Whether weights sit on vertices or on edges.
        #[arg(long, value_enum, default_value_t = Kind::Vertex)]
        kind: Kind,
        /// Write `<out>.ca` and `<out>.w` instead of printing both.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print structural facts about a model.
    Info {
        #[arg(long)]
        model: PathBuf,
    },
    /// Compare the solver against exhaustive search on random instances.
    Fuzz {
        #[arg(long, value_parser = parse_problem)]
        problem: Problem,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to nonneg; signed is only accepted for mwpvd and mwped.
        #[arg(long, default_value = "nonneg", value_parser = parse_dist)]
        weights: WeightDist,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Vertex,
    Edge,
}

fn parse_problem(s: &str) -> Result<Problem, String> {
    s.parse()
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_dist(s: &str) -> Result<WeightDist, String> {
    s.parse()
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_)
            | Error::MappingViolated(_)
            | Error::InconsistentMapping(_)
            | Error::PlacementConflict(_)
            | Error::PreconditionViolated(_) => INTERNAL,
            _ => INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

/// Wraps parse errors with the file they came from.
fn in_file<T>(path: &Path, r: cadom::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn load(problem: Problem, model: &Path, weights: Option<&Path>) -> Result<(CircularArcModel, Graph, WeightMap), Failure> {
    let m = in_file(model, parse_model(&read(model)?))?;
    let g = Graph::from_model(&m);
    let w = match weights {
        Some(p) => in_file(p, parse_weights(&read(p)?, &g, problem.kind()))?,
        None => WeightMap::unit(problem.kind()),
    };
    Ok((m, g, w))
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    match cli.command {
        Command::Solve {
            problem,
            model,
            weights,
            check,
        } => {
            let (m, _, w) = load(problem, &model, weights.as_deref())?;
            let sol = if check {
                solve_checked(problem, &m, &w)?
            } else {
                solve(problem, &m, &w)?
            };
            let code = if sol.feasible { 0 } else { INFEASIBLE };
            Ok((write_solution(&sol), code))
        }
        Command::Verify {
            problem,
            model,
            weights,
            solution,
        } => {
            let (_, g, w) = load(problem, &model, weights.as_deref())?;
            let members = in_file(&solution, parse_solution(&read(&solution)?, problem.kind()))?;
            let Some(members) = members else {
                return Ok(("INFEASIBLE solution file reports no solution\n".into(), 0));
            };
            let v = verify(problem, &g, &w, &members)?;
            let text = if v.feasible {
                format!("FEASIBLE {}\n", v.value)
            } else {
                format!("INFEASIBLE {}\n", v.violation.unwrap_or_default())
            };
            Ok((text, 0))
        }
        Command::Gen {
            family,
            n,
            seed,
            weights,
            kind,
            out,
        } => {
            let kind = match kind {
                Kind::Vertex => WeightKind::Vertex,
                Kind::Edge => WeightKind::Edge,
            };
            let spec = GenSpec {
                seed,
                n,
                family,
                weights: WeightSpec::new(kind, weights),
            };
            let (m, w) = generate(&spec)?;
            let header = format!("c format 1\nc gen {} n={n} seed={seed}\n", family.name());
            let model_text = format!("{header}{}", write_model(&m));
            let weight_text = format!("{header}{}", write_weights(&w));
            match out {
                Some(prefix) => {
                    for (ext, text) in [("ca", &model_text), ("w", &weight_text)] {
                        let path = prefix.with_extension(ext);
                        fs::write(&path, text).map_err(|e| Failure {
                            code: INPUT,
                            message: format!("{}: {e}", path.display()),
                        })?;
                    }
                    Ok((String::new(), 0))
                }
                None => Ok((format!("{model_text}{weight_text}"), 0)),
            }
        }
        Command::Info { model } => {
            let m = in_file(&model, parse_model(&read(&model)?))?;
            Ok((describe(&m)?, 0))
        }
        Command::Fuzz {
            problem,
            trials,
            n_max,
            seed,
            weights,
        } => {
            if !(2..=ORACLE_LIMIT).contains(&n_max) {
                return Err(Failure {
                    code: INPUT,
                    message: format!("--n-max must lie in 2..={ORACLE_LIMIT}"),
                });
            }
            if weights == WeightDist::Signed && matches!(problem, Problem::Mwevd | Problem::Mweed) {
                return Err(Error::WeightSignViolation(problem.to_string()).into());
            }
            let report = differential_run(problem, trials, 2..=n_max, weights, seed)?;
            let mut text = report.to_string();
            writeln!(
                text,
                "c fuzz {problem} trials={} seed={seed} mismatches={}",
                report.trials,
                report.mismatches.len()
            )
            .unwrap();
            Ok((text, if report.passed() { 0 } else { INTERNAL }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
