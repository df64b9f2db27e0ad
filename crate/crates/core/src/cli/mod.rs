//! Command-line driver. All work happens in [`run`], which returns the text
//! to print and the exit code, so the binary is a thin wrapper.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 the
//! system violates a mathematical precondition at some node.

mod format;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

pub use format::{encode_poly, Mode, NodeText, ProblemFile, TermText};

use crate::error::{Error, Result};
use crate::interpolation::{
    hermite_interpolate_with, lagrange_interpolate, verify_interpolation, HermiteOptions,
    InterpProblem, VerifyReport,
};
use crate::numeric::{Backend, Field, GaussianRational};
use crate::oracle::{brute_force_interpolant, default_basis_box, separable_residue};
use crate::poly::{jacobian_det, MPoly, MultiIndex};
use crate::residue::{check_zero_order, local_residue, power_decomposition, TieBreak};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "algebraic-interp",
    version,
    about = "Hermite interpolation on zeros of polynomial systems"
)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the order conditions at every node.
    Check {
        /// Problem file, or `-` for stdin.
        file: PathBuf,
    },
    /// Print the power decomposition matrix of one node and its determinant.
    Hmatrix {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        node: usize,
        #[arg(long, value_enum, default_value_t = TieBreakArg::Min)]
        tie_break: TieBreakArg,
    },
    /// Local residue of `(z-w)^a / p^I` at one node.
    Residue {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        node: usize,
        /// Exponent vector `a`, comma separated.
        #[arg(long)]
        numerator: String,
        /// Also compute the residue by factorization (separable systems only).
        #[arg(long)]
        oracle: bool,
    },
    /// Build the interpolant and verify every condition.
    Interpolate {
        file: PathBuf,
        /// Also solve the dense linear system and verify its solution.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = TieBreakArg::Min)]
        tie_break: TieBreakArg,
        /// Include each node's term of the sum in the output.
        #[arg(long)]
        debug_contributions: bool,
        /// Override the file's `mode`.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TieBreakArg {
    Min,
    Max,
}

impl From<TieBreakArg> for TieBreak {
    fn from(t: TieBreakArg) -> Self {
        match t {
            TieBreakArg::Min => TieBreak::Min,
            TieBreakArg::Max => TieBreak::Max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(err: &Error) -> Self {
        let code = if err.is_precondition_failure() {
            EXIT_PRECONDITION
        } else if matches!(err, Error::OracleUnsolvable(_)) {
            EXIT_VERIFY
        } else {
            EXIT_INPUT
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

pub fn run(args: &Args) -> Outcome {
    let file = match &args.command {
        Command::Check { file }
        | Command::Hmatrix { file, .. }
        | Command::Residue { file, .. }
        | Command::Interpolate { file, .. } => file,
    };
    let text = match read_input(file) {
        Ok(t) => t,
        Err(e) => return Outcome::error(&e),
    };
    run_on_text(&args.command, &text)
}

/// As [`run`], with the problem document already in memory.
pub fn run_on_text(command: &Command, text: &str) -> Outcome {
    let result = ProblemFile::from_json(text).and_then(|file| match file.backend {
        Backend::Exact => dispatch::<GaussianRational>(command, &file),
        Backend::Float => dispatch::<Complex64>(command, &file),
    });
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn read_input(path: &PathBuf) -> Result<String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn dispatch<F: Field>(command: &Command, file: &ProblemFile) -> Result<Outcome> {
    let problem = file.decode::<F>()?;
    match command {
        Command::Check { .. } => cmd_check(&problem),
        Command::Hmatrix {
            node, tie_break, ..
        } => cmd_hmatrix(file, &problem, *node, (*tie_break).into()),
        Command::Residue {
            node,
            numerator,
            oracle,
            ..
        } => cmd_residue(&problem, *node, numerator, *oracle),
        Command::Interpolate {
            oracle,
            tie_break,
            debug_contributions,
            mode,
            ..
        } => {
            let mode = mode.or(file.mode).unwrap_or_default();
            let options = HermiteOptions {
                tie_break: (*tie_break).into(),
                keep_contributions: *debug_contributions,
            };
            cmd_interpolate(&problem, mode, &options, *oracle)
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn render_all<F: Field>(xs: &[F]) -> Vec<String> {
    xs.iter().map(Field::render).collect()
}

fn node_at<F: Field>(
    problem: &InterpProblem<F>,
    index: usize,
) -> Result<&crate::interpolation::NodeData<F>> {
    problem.nodes().get(index).ok_or_else(|| {
        Error::DataShape(format!(
            "node index {index} out of range ({} nodes)",
            problem.nodes().len()
        ))
    })
}

fn cmd_check<F: Field>(problem: &InterpProblem<F>) -> Result<Outcome> {
    let mut nodes = Vec::new();
    let mut all = true;
    for (j, node) in problem.nodes().iter().enumerate() {
        let report = check_zero_order(
            problem.system(),
            &node.point,
            &node.order,
            problem.tolerance(),
        )?;
        all &= report.passed();
        nodes.push(json!({
            "node": j,
            "point": render_all(&node.point),
            "order": node.order.as_index().as_slice(),
            "vanishing": {
                "passed": report.vanishing_holds,
                "violations": report.violations.iter().map(|v| json!({
                    "polynomial": v.polynomial,
                    "index": v.index.to_key(),
                })).collect::<Vec<_>>(),
            },
            "leading": {
                "passed": report.leading_holds,
                "matrix": report.leading_matrix.iter().map(|r| render_all(r)).collect::<Vec<_>>(),
                "det": report.leading_det.render(),
            },
            "passed": report.passed(),
        }));
    }
    let out = pretty(&json!({ "passed": all, "nodes": nodes }));
    Ok(Outcome {
        code: if all { EXIT_OK } else { EXIT_PRECONDITION },
        stdout: out,
        stderr: String::new(),
    })
}

fn cmd_hmatrix<F: Field>(
    file: &ProblemFile,
    problem: &InterpProblem<F>,
    index: usize,
    tie: TieBreak,
) -> Result<Outcome> {
    let data = node_at(problem, index)?;
    let node = power_decomposition(
        problem.system(),
        &data.point,
        &data.order,
        problem.tolerance(),
        tie,
    )?;
    let names = &file.variables;
    let matrix: Vec<Vec<String>> = node
        .matrix()
        .iter()
        .map(|row| {
            row.iter()
                .map(|h| h.render_centered(names, &data.point))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let jacobian = jacobian_det(problem.system(), &data.point)?;
    let out = json!({
        "node": index,
        "point": render_all(&data.point),
        "order": data.order.as_index().as_slice(),
        "tie_break": match tie { TieBreak::Min => "min", TieBreak::Max => "max" },
        "matrix": matrix,
        "det": node.det().render_centered(names, &data.point)?,
        "det_terms": encode_poly(node.det()),
        "det_at_point": node.det_at_point().render(),
        "jacobian": jacobian.render(),
    });
    Ok(Outcome::ok(pretty(&out)))
}

fn cmd_residue<F: Field>(
    problem: &InterpProblem<F>,
    index: usize,
    numerator: &str,
    oracle: bool,
) -> Result<Outcome> {
    let data = node_at(problem, index)?;
    let a: MultiIndex = numerator.parse()?;
    if a.len() != problem.nvars() {
        return Err(Error::Arity {
            expected: problem.nvars(),
            got: a.len(),
        });
    }
    let node = power_decomposition(
        problem.system(),
        &data.point,
        &data.order,
        problem.tolerance(),
        TieBreak::Min,
    )?;
    let value = local_residue(&MPoly::centered_monomial(&data.point, &a), &node)?;
    let mut out = format!("{}\n", value.render());
    if oracle {
        let check = separable_residue(problem.system(), &data.point, data.order.as_index(), &a)?;
        out.push_str(&format!("oracle: {}\n", check.render()));
    }
    Ok(Outcome::ok(out))
}

fn report_json<F: Field>(report: &VerifyReport<F>) -> Value {
    json!({
        "passed": report.passed,
        "max_deviation": report.max_deviation,
        "entries": report.entries.iter().map(|e| json!({
            "node": e.node,
            "index": e.index.to_key(),
            "target": e.target.render(),
            "achieved": e.achieved.render(),
            "deviation": e.deviation,
            "passed": e.passed,
        })).collect::<Vec<_>>(),
    })
}

fn cmd_interpolate<F: Field>(
    problem: &InterpProblem<F>,
    mode: Mode,
    options: &HermiteOptions,
    oracle: bool,
) -> Result<Outcome> {
    let (poly, contributions, cap) = match mode {
        Mode::Hermite => {
            let out = hermite_interpolate_with(problem, options)?;
            (out.poly, out.contributions, out.degree_cap)
        }
        Mode::Lagrange => {
            let f = lagrange_interpolate(problem)?;
            let cap = f.total_degree().unwrap_or(0);
            (f, Vec::new(), cap)
        }
    };
    let report = verify_interpolation(&poly, problem);
    let mut passed = report.passed;
    let mut doc = json!({
        "backend": F::BACKEND,
        "mode": mode,
        "degree": poly.total_degree(),
        "degree_cap": cap,
        "terms": encode_poly(&poly),
        "verification": report_json(&report),
    });
    if options.keep_contributions {
        doc["contributions"] = Value::from(
            contributions
                .iter()
                .map(|c| json!(encode_poly(c)))
                .collect::<Vec<_>>(),
        );
    }
    if oracle {
        let basis = default_basis_box(problem.nvars(), cap);
        let section = match brute_force_interpolant(problem, &basis) {
            Ok(g) => {
                let other = verify_interpolation(&g, problem);
                let same_targets =
                    other.entries.iter().zip(&report.entries).all(|(a, b)| {
                        a.node == b.node && a.index == b.index && a.target == b.target
                    });
                passed &= other.passed && same_targets;
                json!({
                    "basis_box": basis.to_key(),
                    "terms": encode_poly(&g),
                    "targets_agree": same_targets,
                    "verification": report_json(&other),
                })
            }
            Err(e) => {
                passed = false;
                json!({ "basis_box": basis.to_key(), "error": e.to_string() })
            }
        };
        doc["oracle"] = section;
    }
    Ok(Outcome {
        code: if passed { EXIT_OK } else { EXIT_VERIFY },
        stdout: pretty(&doc),
        stderr: String::new(),
    })
}
