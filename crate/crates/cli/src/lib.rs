//! `gensolve` command-line front end.
//!
//! Exit codes: 0 on success (or a consistent system), 2 when the system is
//! inconsistent, 1 for usage, parse and shape errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gensolve_core::json::{parse_matrix, MatrixJson, ParamMatrixJson};
use gensolve_core::oracle::gauss_solve_axb;
use gensolve_core::sample::Sampler;
use gensolve_core::{
    affine_sets_equal, decompose, general_solution_row, general_solution_vec, rohde_inverse,
    short_form_solution, solution_to_affine_set, solve_ax_c, solve_axb_c, solve_xb_d, Matrix,
    AffineExpr, ParamMatrix, Solution,
};
use num_traits::{One, Signed, Zero};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

/// Seed for the random spot checks of `check`; never affects output bytes.
pub const SEED_VAR: &str = "GENSOLVE_SEED";

#[derive(Parser, Debug)]
#[command(name = "gensolve", version, about = "Exact {1}-inverses and general solutions of linear matrix equations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutputMode::Json)]
    pub output: OutputMode,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Json,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank normal form Q·A·P = E_a.
    Rnf { matrix: PathBuf },
    /// General {1}-inverse P·[[I, U], [V, W]]·Q.
    Ginverse { matrix: PathBuf },
    /// Decide consistency and print the general solution.
    Solve {
        #[arg(long, value_enum)]
        system: SystemKind,
        /// For `axc`: print x = A⁽¹⁾c with the V entries as parameters.
        #[arg(long)]
        short_form: bool,
        /// Matrix files in equation order (A c, B d, A C, B D, A B C).
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Compare the solver against plain Gaussian elimination.
    Check {
        #[arg(long, required = true)]
        against_oracle: bool,
        #[arg(long, value_enum)]
        system: SystemKind,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemKind {
    /// A x = c
    Axc,
    /// x B = d
    Xbd,
    /// A X = C
    #[value(name = "ax-c")]
    AxC,
    /// X B = D
    #[value(name = "xb-d")]
    XbD,
    /// A X B = C
    #[value(name = "axb-c")]
    AxbC,
}

impl SystemKind {
    fn operand_names(self) -> &'static [&'static str] {
        match self {
            SystemKind::Axc => &["A", "c"],
            SystemKind::Xbd => &["B", "d"],
            SystemKind::AxC => &["A", "C"],
            SystemKind::XbD => &["B", "D"],
            SystemKind::AxbC => &["A", "B", "C"],
        }
    }

    fn equation(self) -> &'static str {
        match self {
            SystemKind::Axc => "A x = c",
            SystemKind::Xbd => "x B = d",
            SystemKind::AxC => "A X = C",
            SystemKind::XbD => "X B = D",
            SystemKind::AxbC => "A X B = C",
        }
    }

    fn unknown(self) -> &'static str {
        match self {
            SystemKind::Axc | SystemKind::Xbd => "x",
            _ => "X",
        }
    }
}

/// Reads and parses a matrix file.
pub fn parse_matrix_file(path: &Path) -> Result<Matrix> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_matrix(&text).with_context(|| format!("{}", path.display()))
}

fn load(kind: SystemKind, files: &[PathBuf]) -> Result<Vec<Matrix>> {
    let names = kind.operand_names();
    if files.len() != names.len() {
        bail!(
            "{} expects {} matrix files ({}), got {}",
            kind.equation(),
            names.len(),
            names.join(", "),
            files.len()
        );
    }
    let mats = files
        .iter()
        .map(|p| parse_matrix_file(p))
        .collect::<Result<Vec<_>>>()?;
    check_shapes(kind, &mats)?;
    Ok(mats)
}

fn check_shapes(kind: SystemKind, mats: &[Matrix]) -> Result<()> {
    let names = kind.operand_names();
    let shape = |i: usize| format!("{} is {}x{}", names[i], mats[i].rows(), mats[i].cols());
    let mismatch = |i: usize, j: usize, what: &str| -> Result<()> {
        bail!("shape mismatch in {}: {}, {} ({what})", kind.equation(), shape(i), shape(j))
    };
    match kind {
        SystemKind::Axc | SystemKind::AxC => {
            if mats[1].rows() != mats[0].rows() {
                return mismatch(0, 1, "row counts differ");
            }
            if kind == SystemKind::Axc && mats[1].cols() != 1 {
                return mismatch(0, 1, "right-hand side must be a column");
            }
        }
        SystemKind::Xbd | SystemKind::XbD => {
            if mats[1].cols() != mats[0].cols() {
                return mismatch(0, 1, "column counts differ");
            }
            if kind == SystemKind::Xbd && mats[1].rows() != 1 {
                return mismatch(0, 1, "right-hand side must be a row");
            }
        }
        SystemKind::AxbC => {
            if mats[2].rows() != mats[0].rows() {
                return mismatch(0, 2, "row counts differ");
            }
            if mats[2].cols() != mats[1].cols() {
                return mismatch(1, 2, "column counts differ");
            }
        }
    }
    Ok(())
}

fn solve(kind: SystemKind, mats: &[Matrix], short_form: bool) -> Result<Solution> {
    let sol = match kind {
        SystemKind::Axc if short_form => short_form_solution(&mats[0], &mats[1])?,
        SystemKind::Axc => general_solution_vec(&mats[0], &mats[1])?,
        SystemKind::AxC => solve_ax_c(&mats[0], &mats[1])?,
        SystemKind::Xbd => general_solution_row(&mats[0], &mats[1])?,
        SystemKind::XbD => solve_xb_d(&mats[0], &mats[1])?,
        SystemKind::AxbC => solve_axb_c(&mats[0], &mats[1], &mats[2])?,
    };
    Ok(sol)
}

#[derive(Serialize)]
struct RnfOutput {
    rank: usize,
    #[serde(rename = "Q")]
    q: MatrixJson,
    #[serde(rename = "P")]
    p: MatrixJson,
    #[serde(rename = "Qinv")]
    q_inv: MatrixJson,
    #[serde(rename = "Pinv")]
    p_inv: MatrixJson,
}

#[derive(Serialize)]
struct BlockShapes {
    #[serde(rename = "U")]
    u: [usize; 2],
    #[serde(rename = "V")]
    v: [usize; 2],
    #[serde(rename = "W")]
    w: [usize; 2],
}

#[derive(Serialize)]
struct GinverseOutput {
    rank: usize,
    inverse: ParamMatrixJson,
    blocks: BlockShapes,
}

#[derive(Serialize)]
struct WitnessJson {
    row: usize,
    col: usize,
    value: String,
}

#[derive(Serialize)]
struct SolveOutput {
    status: &'static str,
    witness: Option<WitnessJson>,
    particular: Option<MatrixJson>,
    general: Option<ParamMatrixJson>,
    params: Vec<String>,
}

impl From<&Solution> for SolveOutput {
    fn from(sol: &Solution) -> Self {
        match sol {
            Solution::Consistent(g) => SolveOutput {
                status: "consistent",
                witness: None,
                particular: Some(MatrixJson::from(&g.particular)),
                general: Some(ParamMatrixJson::from(&g.general)),
                params: g.params.iter().map(|p| p.name().to_owned()).collect(),
            },
            Solution::Inconsistent(w) => SolveOutput {
                status: "inconsistent",
                witness: Some(WitnessJson {
                    row: w.row,
                    col: w.col,
                    value: w.value.to_string(),
                }),
                particular: None,
                general: None,
                params: Vec::new(),
            },
        }
    }
}

#[derive(Serialize)]
struct CheckOutput {
    system: String,
    solver: &'static str,
    oracle: &'static str,
    params: usize,
    oracle_dimension: Option<usize>,
    spot_checks: usize,
    agree: bool,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Renders a matrix of strings as bracketed, column-aligned rows.
fn bracketed(cells: &[Vec<String>]) -> String {
    let cols = cells.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in cells {
        out.push('[');
        for (cell, w) in row.iter().zip(&widths) {
            let _ = write!(out, "  {cell:<w$}");
        }
        out.push_str("  ]\n");
    }
    if cells.is_empty() {
        out.push_str("[ ]\n");
    }
    out
}

fn matrix_cells(m: &Matrix) -> Vec<Vec<String>> {
    MatrixJson::from(m).data
}

/// Like the JSON entry text but with unit coefficients left implicit.
fn compact(e: &AffineExpr) -> String {
    let mut out = String::new();
    if !e.constant_term().is_zero() || e.is_constant() {
        out.push_str(&e.constant_term().to_string());
    }
    for (p, c) in e.terms() {
        let negative = c.is_negative();
        let magnitude = c.abs();
        let sign = match (out.is_empty(), negative) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        out.push_str(sign);
        if !magnitude.is_one() {
            let _ = write!(out, "{magnitude}*");
        }
        out.push_str(p.name());
    }
    out
}

fn param_cells(pm: &ParamMatrix) -> Vec<Vec<String>> {
    (0..pm.rows())
        .map(|i| (0..pm.cols()).map(|j| compact(&pm[(i, j)])).collect())
        .collect()
}

fn pretty_solution(kind: SystemKind, sol: &Solution) -> String {
    let mut out = format!("system: {}\n", kind.equation());
    match sol {
        Solution::Consistent(g) => {
            out.push_str("status: consistent\n");
            let names: Vec<&str> = g.params.iter().map(|p| p.name()).collect();
            let _ = writeln!(
                out,
                "free parameters ({}): {}",
                names.len(),
                if names.is_empty() { "none".to_owned() } else { names.join(", ") }
            );
            let _ = writeln!(out, "{} =", kind.unknown());
            out.push_str(&bracketed(&param_cells(&g.general)));
        }
        Solution::Inconsistent(w) => {
            let _ = writeln!(
                out,
                "status: inconsistent\nwitness: transformed right-hand side entry ({}, {}) = {} must vanish",
                w.row, w.col, w.value
            );
        }
    }
    out
}

fn run_command(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Rnf { matrix } => {
            let a = parse_matrix_file(matrix)?;
            let dec = decompose(&a);
            let text = match cli.output {
                OutputMode::Json => to_json(&RnfOutput {
                    rank: dec.rank,
                    q: (&dec.q).into(),
                    p: (&dec.p).into(),
                    q_inv: (&dec.q_inv).into(),
                    p_inv: (&dec.p_inv).into(),
                }),
                OutputMode::Pretty => {
                    let mut s = format!("rank: {}\n", dec.rank);
                    for (name, m) in [("Q", &dec.q), ("P", &dec.p), ("Qinv", &dec.q_inv), ("Pinv", &dec.p_inv)] {
                        let _ = writeln!(s, "{name} =");
                        s.push_str(&bracketed(&matrix_cells(m)));
                    }
                    s
                }
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Ginverse { matrix } => {
            let a = parse_matrix_file(matrix)?;
            let g = rohde_inverse(&decompose(&a));
            let [u, v, w] = g.block_shapes();
            let text = match cli.output {
                OutputMode::Json => to_json(&GinverseOutput {
                    rank: g.decomposition.rank,
                    inverse: (&g.pm).into(),
                    blocks: BlockShapes {
                        u: [u.0, u.1],
                        v: [v.0, v.1],
                        w: [w.0, w.1],
                    },
                }),
                OutputMode::Pretty => {
                    let mut s = format!(
                        "rank: {}\nblocks: U {}x{}, V {}x{}, W {}x{}\nA(1) =\n",
                        g.decomposition.rank, u.0, u.1, v.0, v.1, w.0, w.1
                    );
                    s.push_str(&bracketed(&param_cells(&g.pm)));
                    s
                }
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Solve {
            system,
            short_form,
            files,
        } => {
            if *short_form && *system != SystemKind::Axc {
                bail!("--short-form applies only to --system axc");
            }
            let mats = load(*system, files)?;
            let sol = solve(*system, &mats, *short_form)?;
            let text = match cli.output {
                OutputMode::Json => to_json(&SolveOutput::from(&sol)),
                OutputMode::Pretty => pretty_solution(*system, &sol),
            };
            out.write_all(text.as_bytes())?;
            Ok(if sol.is_consistent() { EXIT_OK } else { EXIT_INCONSISTENT })
        }
        Command::Check { system, files, .. } => {
            let mats = load(*system, files)?;
            let report = check_against_oracle(*system, &mats)?;
            let agree = report.agree;
            let text = match cli.output {
                OutputMode::Json => to_json(&report),
                OutputMode::Pretty => format!(
                    "system: {}\nsolver: {}\noracle: {}\nparameters: {} (oracle dimension {})\nspot checks: {}\nagree: {}\n",
                    report.system,
                    report.solver,
                    report.oracle,
                    report.params,
                    report.oracle_dimension.map_or("-".to_owned(), |d| d.to_string()),
                    report.spot_checks,
                    report.agree
                ),
            };
            out.write_all(text.as_bytes())?;
            if !agree {
                bail!("solver and oracle disagree");
            }
            Ok(EXIT_OK)
        }
    }
}

const SPOT_CHECKS: usize = 5;

fn check_against_oracle(kind: SystemKind, mats: &[Matrix]) -> Result<CheckOutput> {
    let sol = solve(kind, mats, false)?;
    let (a, b, c) = match kind {
        SystemKind::Axc | SystemKind::AxC => {
            (mats[0].clone(), Matrix::identity(mats[1].cols()), mats[1].clone())
        }
        SystemKind::Xbd | SystemKind::XbD => {
            (Matrix::identity(mats[1].rows()), mats[0].clone(), mats[1].clone())
        }
        SystemKind::AxbC => (mats[0].clone(), mats[1].clone(), mats[2].clone()),
    };
    let expected = gauss_solve_axb(&a, &b, &c)?;
    let seed = std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .unwrap_or(0);
    let mut sampler = Sampler::new(seed);

    let agree = match (sol.general(), &expected) {
        (Some(g), Some(set)) => {
            let sets_match = affine_sets_equal(&solution_to_affine_set(g), set);
            let members_ok = (0..SPOT_CHECKS).all(|_| {
                let assign = g
                    .params
                    .iter()
                    .map(|p| (p.clone(), sampler.rational()))
                    .collect();
                let x = g.general.instantiate(&assign).expect("all parameters bound");
                a.mul(&x).and_then(|ax| ax.mul(&b)).map(|v| v == c).unwrap_or(false)
            });
            sets_match && members_ok && g.params.len() == set.dim()
        }
        (None, None) => true,
        _ => false,
    };
    let status = |consistent: bool| if consistent { "consistent" } else { "inconsistent" };
    Ok(CheckOutput {
        system: kind.equation().to_owned(),
        solver: status(sol.is_consistent()),
        oracle: status(expected.is_some()),
        params: sol.param_count(),
        oracle_dimension: expected.as_ref().map(|s| s.dim()),
        spot_checks: if sol.is_consistent() { SPOT_CHECKS } else { 0 },
        agree,
    })
}

/// Parses `argv` (including the program name) and executes the command,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_ERROR;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match run_command(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}
