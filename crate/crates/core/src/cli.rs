//! Command-line front end.
//!
//! Exit codes: 0 success; 1 verification verdict failed (`verify`); 2 usage,
//! I/O or input-file errors; 3 precondition failures of a construction;
//! 4 a construction's output failed its own check.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::json;
use crate::liealg::{heuristic_cartan, is_nilpotent, is_solvable, solvable_split_basis, LieAlgebra};
use crate::realize::{
    nowicki_commuting_basis, peel_to_factored_automorphism, realize_general, realize_nilpotent, realize_solvable,
    Realization, SignConvention,
};
use crate::verify::{Report, DEFAULT_SEED};

pub const SEED_VAR: &str = "LIEBASIS_SEED";

#[derive(Parser, Debug)]
#[command(name = "liebasis", version, about = "Realize Lie algebras as basic subalgebras of polynomial vector fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Nilpotent,
    Solvable,
    General,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Signs {
    Proof,
    Normalized,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a realization and verify it.
    Realize {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
        /// Split file: {"solvable": {"k", "m"}} and/or {"levi": {"m", "solvable_dim"}}.
        #[arg(long)]
        split: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Sign convention of the worked examples (same as `--signs normalized`).
        #[arg(long, conflicts_with = "signs")]
        paper_signs: bool,
        #[arg(long, value_enum)]
        signs: Option<Signs>,
    },
    /// Check a family of fields against an algebra.
    Verify {
        #[arg(long)]
        algebra: PathBuf,
        /// Fields document, or a realization document.
        #[arg(long)]
        fields: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Factor the automorphism behind a transition matrix B.
    Peel {
        #[arg(long)]
        algebra: PathBuf,
        /// Matrix document, or a realization document.
        #[arg(long)]
        bmatrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Commuting module basis from polynomials with constant Jacobian.
    Commute {
        #[arg(long)]
        polys: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure of a command with its exit code.
struct Exit(i32, String);

fn input(e: Error) -> Exit {
    Exit(2, e.to_string())
}

fn precondition(e: Error) -> Exit {
    Exit(3, e.to_string())
}

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| Exit(2, format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Exit> {
    fs::write(path, text).map_err(|e| Exit(2, format!("cannot write {}: {e}", path.display())))
}

fn seed() -> Result<u64, Exit> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Exit(2, format!("{SEED_VAR} must be a decimal integer, got '{s}'"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Realize { algebra, mode, split, out, report, paper_signs, signs } => {
            let convention = match (paper_signs, signs) {
                (_, Some(Signs::Proof)) => SignConvention::Proof,
                _ => SignConvention::Normalized,
            };
            cmd_realize(&algebra, mode, split.as_deref(), &out, report.as_deref(), convention)
        }
        Command::Verify { algebra, fields, report } => cmd_verify(&algebra, &fields, report.as_deref()),
        Command::Peel { algebra, bmatrix, out } => cmd_peel(&algebra, &bmatrix, out.as_deref()),
        Command::Commute { polys, out } => cmd_commute(&polys, out.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn realize_auto(alg: &LieAlgebra, split: &json::SplitFile, convention: SignConvention, seed: u64) -> Result<Realization, Exit> {
    if is_nilpotent(alg) {
        return realize_nilpotent(alg, convention).map_err(precondition);
    }
    if is_solvable(alg) {
        if let Some(s) = &split.solvable {
            return realize_solvable(alg, s, convention).map_err(precondition);
        }
        let h = heuristic_cartan(alg, seed).map_err(precondition)?;
        let (change, adapted, s) = solvable_split_basis(alg, &h).map_err(precondition)?;
        let real = realize_solvable(&adapted, &s, convention).map_err(precondition)?;
        let note = format!("basis adapted to a heuristic Cartan subalgebra (k={}, m={})", s.k, s.m);
        return Ok(real.with_basis_change(change, note));
    }
    match (&split.levi, &split.solvable) {
        (Some(levi), Some(s)) => realize_general(alg, levi, s, convention).map_err(precondition),
        _ => Err(Exit(
            3,
            "algebra is neither nilpotent nor solvable; pass --mode general with a split file \
             giving {\"levi\": {\"m\": ..}, \"solvable\": {\"k\": .., \"m\": ..}}"
                .into(),
        )),
    }
}

fn cmd_realize(
    algebra: &Path,
    mode: Mode,
    split: Option<&Path>,
    out: &Path,
    report: Option<&Path>,
    convention: SignConvention,
) -> Result<i32, Exit> {
    let alg = json::algebra_from_json(&read(algebra)?).map_err(input)?;
    let split = match split {
        Some(p) => json::split_from_json(&read(p)?).map_err(input)?,
        None => json::SplitFile::default(),
    };
    let seed = seed()?;
    let missing = |what: &str| Exit(2, format!("--mode {mode:?} needs a split file with {what}").to_lowercase());
    let real = match mode {
        Mode::Nilpotent => realize_nilpotent(&alg, convention).map_err(precondition)?,
        Mode::Solvable => {
            let s = split.solvable.ok_or_else(|| missing("\"solvable\""))?;
            realize_solvable(&alg, &s, convention).map_err(precondition)?
        }
        Mode::General => {
            let (Some(levi), Some(s)) = (split.levi, split.solvable) else {
                return Err(missing("\"levi\" and \"solvable\""));
            };
            realize_general(&alg, &levi, &s, convention).map_err(precondition)?
        }
        Mode::Auto => realize_auto(&alg, &split, convention, seed)?,
    };
    write(out, &json::realization_to_json(&real))?;

    let mut rep = Report::run(real.algebra(), real.fields(), Some(real.b()), seed);
    rep.notes = real.witness().notes.clone();
    if let Some(p) = report {
        write(p, &json::report_to_json(&rep))?;
    }
    print!("{}", real.fields());
    print!("{rep}");
    Ok(if rep.verdict() { 0 } else { 4 })
}

fn cmd_verify(algebra: &Path, fields: &Path, report: Option<&Path>) -> Result<i32, Exit> {
    let alg = json::algebra_from_json(&read(algebra)?).map_err(input)?;
    let text = read(fields)?;
    let fam = json::fields_from_json(&text).map_err(input)?;
    let b = json::bmatrix_from_json(&text).ok();
    let rep = Report::run(&alg, &fam, b.as_ref(), seed()?);
    if let Some(p) = report {
        write(p, &json::report_to_json(&rep))?;
    }
    print!("{rep}");
    Ok(if rep.verdict() { 0 } else { 1 })
}

fn cmd_peel(algebra: &Path, bmatrix: &Path, out: Option<&Path>) -> Result<i32, Exit> {
    let alg = json::algebra_from_json(&read(algebra)?).map_err(input)?;
    let b = json::bmatrix_from_json(&read(bmatrix)?).map_err(input)?;
    let fa = peel_to_factored_automorphism(&alg, &b).map_err(|e| match e {
        Error::DimensionMismatch { .. } | Error::VariableMismatch { .. } => input(e),
        _ => precondition(e),
    })?;
    if let Some(p) = out {
        write(p, &json::factors_to_json(&fa))?;
    }
    println!("{} factor(s)", fa.len());
    for (col, h) in fa.factors() {
        println!("  exp ad (({h}) (x) l{})", col + 1);
    }
    let ok = fa.straightens(&alg, &b).map_err(precondition)?;
    println!("round trip: {}", if ok { "PASS" } else { "FAIL" });
    Ok(if ok { 0 } else { 4 })
}

fn cmd_commute(polys: &Path, out: Option<&Path>) -> Result<i32, Exit> {
    let fs = json::polys_from_json(&read(polys)?).map_err(input)?;
    let fam = nowicki_commuting_basis(&fs).map_err(|e| match e {
        Error::NonConstantJacobian { .. } => precondition(e),
        _ => input(e),
    })?;
    if let Some(p) = out {
        write(p, &json::fields_to_json(&fam))?;
    }
    print!("{fam}");
    let mut commute = true;
    for (i, a) in fam.fields().iter().enumerate() {
        for b in &fam.fields()[i + 1..] {
            commute &= a.bracket(b).map_err(precondition)?.is_zero();
        }
    }
    let det = fam.determinant();
    let unit = det.as_ref().is_some_and(|d| d.is_unit());
    println!("pairwise brackets vanish: {}", if commute { "yes" } else { "no" });
    match det {
        Some(d) => println!("det: {d}"),
        None => println!("det: undefined"),
    }
    Ok(if commute && unit { 0 } else { 4 })
}
