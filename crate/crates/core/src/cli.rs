//! Command-line front end.
//!
//! Commands return an [`Outcome`] rather than printing, so the binary is a
//! thin wrapper and tests can drive every command in-process.
//!
//! Exit codes:
//!
//! | code | meaning                                   |
//! |------|-------------------------------------------|
//! | 0    | success (feasible / solved / all agree)   |
//! | 1    | output file could not be written          |
//! | 2    | target infeasible                         |
//! | 3    | characteristic polynomial of A not split  |
//! | 4    | unreadable or invalid input               |
//! | 5    | internal verification failed              |
//! | 6    | oracle disagreement                       |
//! | 7    | enumeration budget exceeded               |

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::assign::{construct_with_basis, feasibility};
use crate::error::Error;
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::jordan::{eigen_structure, jordan_basis};
use crate::matrix::Mat;
use crate::oracle::{certify_theorem, verify_assignment, DEFAULT_BUDGET};
use crate::poly::Poly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_NOT_SPLIT: i32 = 3;
pub const EXIT_INPUT: i32 = 4;
pub const EXIT_VERIFICATION: i32 = 5;
pub const EXIT_DISAGREE: i32 = 6;
pub const EXIT_BUDGET: i32 = 7;

/// Input document: field, square matrix and monic target (ascending).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub field: FieldSpec,
    pub matrix: Vec<Vec<String>>,
    pub target: Vec<String>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid problem file: {e}"))
    }
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: stderr.into(),
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::NotSplit(_) => EXIT_NOT_SPLIT,
        Error::Infeasible { .. } => EXIT_INFEASIBLE,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::AssertionFailure(_) => EXIT_VERIFICATION,
        Error::MalformedScalar(_)
        | Error::DivisionByZero
        | Error::InvalidField(_)
        | Error::NotMonic
        | Error::WrongDegree { .. }
        | Error::DimensionMismatch(_)
        | Error::InfiniteField => EXIT_INPUT,
        _ => EXIT_VERIFICATION,
    }
}

fn from_error(e: Error) -> Outcome {
    Outcome::fail(error_code(&e), format!("error: {e}"))
}

#[derive(Debug, Parser)]
#[command(
    name = "rankone",
    version,
    about = "Rank-one characteristic polynomial assignment"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the target is reachable and print the per-eigenvalue table.
    Check { file: PathBuf },
    /// Construct and verify a rank-one witness.
    Solve {
        file: PathBuf,
        /// Include the Jordan decomposition of A in the output.
        #[arg(long)]
        dump_jordan: bool,
        /// Write the result here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively compare reachable targets with the feasibility test over F_p.
    Certify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

/// Parse arguments and run; clap usage errors map to the input exit code.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_OK
                }
                _ => EXIT_INPUT,
            };
            return Outcome {
                code,
                stdout: if code == EXIT_OK {
                    e.to_string()
                } else {
                    String::new()
                },
                stderr: if code == EXIT_OK {
                    String::new()
                } else {
                    e.to_string()
                },
            };
        }
    };
    match cli.command {
        Command::Check { file } => match read_problem(&file) {
            Ok(p) => cmd_check(&p),
            Err(o) => o,
        },
        Command::Solve {
            file,
            dump_jordan,
            out,
        } => {
            let outcome = match read_problem(&file) {
                Ok(p) => cmd_solve(&p, dump_jordan),
                Err(o) => return o,
            };
            match out {
                Some(path) if outcome.code == EXIT_OK => {
                    match std::fs::write(&path, &outcome.stdout) {
                        Ok(()) => Outcome {
                            stdout: String::new(),
                            ..outcome
                        },
                        Err(e) => Outcome::fail(
                            EXIT_IO,
                            format!("error: writing {}: {e}", path.display()),
                        ),
                    }
                }
                _ => outcome,
            }
        }
        Command::Certify { n, p, budget } => cmd_certify(n, p, budget),
    }
}

fn read_problem(path: &PathBuf) -> Result<ProblemFile, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Outcome::fail(
            EXIT_INPUT,
            format!("error: reading {}: {e}", path.display()),
        )
    })?;
    ProblemFile::from_json(&text).map_err(|e| Outcome::fail(EXIT_INPUT, format!("error: {e}")))
}

/// Parsed problem over a concrete field.
struct Instance<F: Field> {
    a: Mat<F>,
    q: Poly<F>,
}

fn parse_instance<F: Field>(field: F, problem: &ProblemFile) -> Result<Instance<F>, Error> {
    let n = problem.matrix.len();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    if problem.matrix.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    if problem.target.len() != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "target has {} coefficients, expected {}",
            problem.target.len(),
            n + 1
        )));
    }
    let a = Mat::parse_rows(field, &problem.matrix)?;
    let coeffs = problem
        .target
        .iter()
        .map(|c| field.parse(c))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.last() != Some(&field.one()) {
        return Err(Error::NotMonic);
    }
    Ok(Instance {
        a,
        q: Poly::new(field, coeffs),
    })
}

macro_rules! dispatch {
    ($spec:expr, $f:ident ( $($arg:expr),* )) => {
        match $spec {
            FieldSpec::Rationals => $f(Rationals, $($arg),*),
            FieldSpec::PrimeField { p } => match PrimeField::new(p) {
                Ok(field) => $f(field, $($arg),*),
                Err(e) => from_error(e),
            },
        }
    };
}

pub fn cmd_check(problem: &ProblemFile) -> Outcome {
    dispatch!(problem.field, check_in(problem))
}

fn check_in<F: Field>(field: F, problem: &ProblemFile) -> Outcome {
    let inst = match parse_instance(field, problem) {
        Ok(i) => i,
        Err(e) => return from_error(e),
    };
    let report = match eigen_structure(&inst.a).and_then(|s| feasibility(&s, &inst.q)) {
        Ok(r) => r,
        Err(e) => return from_error(e),
    };
    let body = serde_json::to_string(&report.to_json(field)).expect("serializable");
    Outcome {
        code: if report.verdict {
            EXIT_OK
        } else {
            EXIT_INFEASIBLE
        },
        stdout: body + "\n",
        stderr: String::new(),
    }
}

pub fn cmd_solve(problem: &ProblemFile, dump_jordan: bool) -> Outcome {
    dispatch!(problem.field, solve_in(problem, dump_jordan))
}

fn solve_in<F: Field>(field: F, problem: &ProblemFile, dump_jordan: bool) -> Outcome {
    let inst = match parse_instance(field, problem) {
        Ok(i) => i,
        Err(e) => return from_error(e),
    };
    let decomposition = match jordan_basis(&inst.a) {
        Ok(d) => d,
        Err(e) => return from_error(e),
    };
    let pert = match construct_with_basis(&inst.a, &inst.q, &decomposition) {
        Ok(p) => p,
        Err(e @ Error::Infeasible { .. }) => {
            let report = eigen_structure(&inst.a)
                .and_then(|s| feasibility(&s, &inst.q))
                .expect("structure already computed");
            let mut o = from_error(e);
            o.stdout = serde_json::to_string(&report.to_json(field)).expect("serializable") + "\n";
            return o;
        }
        Err(e) => return from_error(e),
    };
    let check = verify_assignment(&inst.a, &pert, &inst.q);
    if !check.pass {
        return Outcome::fail(
            EXIT_VERIFICATION,
            format!(
                "error: verification failed: {}",
                check.discrepancy.unwrap_or_default()
            ),
        );
    }
    let render = |v: &[F::Elem]| v.iter().map(|x| field.render(x)).collect::<Vec<_>>();
    let mut doc = json!({
        "field": field.spec(),
        "v": render(&pert.v),
        "w": render(&pert.w),
        "B": pert.b.render_rows(),
        "rank": check.rank,
        "verification": "pass",
    });
    if dump_jordan {
        doc["jordan"] = serde_json::to_value(decomposition.to_json()).expect("serializable");
    }
    Outcome::ok(doc.to_string() + "\n")
}

pub fn cmd_certify(n: usize, p: u64, budget: u128) -> Outcome {
    let field = match PrimeField::new(p) {
        Ok(f) => f,
        Err(e) => return from_error(e),
    };
    if n == 0 {
        return Outcome::fail(EXIT_INPUT, "error: n must be positive");
    }
    let reports = match certify_theorem(field, n, budget) {
        Ok(r) => r,
        Err(e) => return from_error(e),
    };
    let mut stdout = String::new();
    for r in &reports {
        stdout.push_str(&serde_json::to_string(&r.to_json()).expect("serializable"));
        stdout.push('\n');
    }
    let all_agree = reports.iter().all(|r| r.agree);
    Outcome {
        code: if all_agree { EXIT_OK } else { EXIT_DISAGREE },
        stdout,
        stderr: if all_agree {
            String::new()
        } else {
            "error: enumeration disagrees with the feasibility test".into()
        },
    }
}
