//! `alphacert`: certify reality of solutions of polynomial systems and count
//! real tritangents of space sextics.
//!
//! Exit codes: 0 success; 1 input error; 2 some point unresolved, singular
//! or not an approximate solution (`certify`, `refine`), or validation
//! failed (`validate`); 3 partial tritangent counts (`tritangent`).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use alphacert::arith::CVector;
use alphacert::cert::{certify_in_v, refine, CertOptions, Certifier, InvariantSetSpec, Outcome};
use alphacert::poly::{
    infer_block_structure, parse_points, parse_system, serialize_points, validate_block_structure,
    BlockStructure, PolynomialSystem,
};
use alphacert::report::{classification_lines, PointRecord};
use alphacert::tritangent::{
    classify_tritangents, multistart_solve_with, parse_curve, ClassifyOptions, MultistartOptions,
    SexticCurve, DIM,
};
use alphacert::Error;

#[derive(Parser)]
#[command(name = "alphacert", version, about)]
struct Cli {
    /// Worker threads; defaults to ALPHACERT_JOBS, then to the core count.
    #[arg(long, global = true, env = "ALPHACERT_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify whether the solutions associated with points lie in an
    /// invariant set (or, with no set, that the points are approximate
    /// solutions).
    Certify {
        system: PathBuf,
        points: PathBuf,
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        cert: CertArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a system against a block structure.
    Validate {
        system: PathBuf,
        /// `m,k,l,q`; the number of leading `g` polynomials is inferred.
        #[arg(long, value_parser = parse_structure)]
        structure: [usize; 4],
    },
    /// Apply Newton steps to points and write the refined points.
    Refine {
        system: PathBuf,
        points: PathBuf,
        #[arg(long, default_value_t = 1)]
        iters: usize,
        #[arg(long)]
        round_bits: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count distinct, real and totally real tritangent planes.
    Tritangent {
        curve: PathBuf,
        /// Points file of 18-dimensional candidates.
        #[arg(required_unless_present = "solve", conflicts_with = "solve")]
        candidates: Option<PathBuf>,
        /// Generate candidates with the multistart solver instead.
        #[arg(long)]
        solve: bool,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value_t = 8)]
        max_iters: usize,
        /// Dyadic rounding in the certification loop (doubling per step).
        #[arg(long, default_value_t = 128)]
        round_bits: u32,
        /// Exact Newton passes on each candidate before certification.
        #[arg(long, default_value_t = 0)]
        refine: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the multistart solver and write candidates as a points file.
    Solve {
        curve: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct SetArgs {
    /// Certify membership in the real points.
    #[arg(long)]
    real: bool,
    /// Certify membership in the conjugate-pair set of structure `m,k,l,q`.
    #[arg(long, value_parser = parse_structure)]
    structure: Option<[usize; 4]>,
}

#[derive(Args)]
struct CertArgs {
    #[arg(long, default_value_t = 8)]
    max_iters: usize,
    /// Dyadic rounding of Newton iterates, doubling per step.
    #[arg(long)]
    round_bits: Option<u32>,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 20_000)]
    starts: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl SolverArgs {
    fn options(&self) -> MultistartOptions {
        MultistartOptions {
            n_starts: self.starts,
            seed: self.seed,
            ..MultistartOptions::default()
        }
    }
}

fn parse_structure(s: &str) -> Result<[usize; 4], String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad count `{t}`"))
        })
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|_| "expected four comma-separated counts m,k,l,q".to_string())
}

/// An input error, reported as `path: message`.
struct Failure(String);

impl Failure {
    fn at(path: &Path, e: impl std::fmt::Display) -> Self {
        Failure(format!("{}: {e}", path.display()))
    }
}

type Run<T> = Result<T, Failure>;

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path).map_err(|e| Failure::at(path, e))
}

fn load_system(path: &Path) -> Run<PolynomialSystem> {
    let f = parse_system(&read(path)?).map_err(|e| Failure::at(path, e))?;
    if !f.is_square() {
        return Err(Failure::at(
            path,
            format!(
                "{} polynomials in {} variables; the system must be square",
                f.len(),
                f.nvars()
            ),
        ));
    }
    Ok(f)
}

fn load_points(path: &Path, dim: usize) -> Run<Vec<CVector>> {
    let points = parse_points(&read(path)?).map_err(|e| Failure::at(path, e))?;
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(Failure::at(
            path,
            Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            },
        ));
    }
    Ok(points)
}

fn load_curve(path: &Path) -> Run<SexticCurve> {
    parse_curve(&read(path)?).map_err(|e| Failure::at(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> Run<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::at(p, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure(format!("stdout: {e}"))),
    }
}

fn structure_for(f: &PolynomialSystem, path: &Path, s: [usize; 4]) -> Run<BlockStructure> {
    let [m, k, l, q] = s;
    let bs = infer_block_structure(f, m, k, l, q).map_err(|e| Failure::at(path, e))?;
    let report = validate_block_structure(f, &bs);
    if !report.passed() {
        return Err(Failure::at(path, report));
    }
    Ok(bs)
}

fn certify_one(
    f: &PolynomialSystem,
    index: usize,
    x: &CVector,
    set: Option<&InvariantSetSpec>,
    opts: &CertOptions,
) -> Run<PointRecord> {
    let not_approx = || {
        let bounds = Certifier::new(f).and_then(|c| c.bounds(x)).ok();
        PointRecord::not_approximate(index, bounds.as_ref())
    };
    let Some(set) = set else {
        let cert = Certifier::new(f).map_err(|e| Failure(format!("point {index}: {e}")))?;
        return Ok(match cert.bounds(x) {
            Ok(b) if b.approx_solution() => PointRecord {
                index,
                outcome: Outcome::ApproxSolutionOnly.as_str().into(),
                iterations: 1,
                bounds: Some((&b).into()),
            },
            Ok(_) => not_approx(),
            Err(Error::SingularJacobian) => PointRecord {
                index,
                outcome: Outcome::SingularJacobian.as_str().into(),
                iterations: 0,
                bounds: None,
            },
            Err(e) => return Err(Failure(format!("point {index}: {e}"))),
        });
    };
    match certify_in_v(f, x, set, opts) {
        Ok(r) => Ok(PointRecord::from_report(index, &r)),
        Err(Error::NotAnApproximateSolution) => Ok(not_approx()),
        Err(e) => Err(Failure(format!("point {index}: {e}"))),
    }
}

fn run(cli: Cli) -> Run<u8> {
    match cli.command {
        Command::Certify {
            system,
            points,
            set,
            cert,
            out,
        } => {
            let f = load_system(&system)?;
            let pts = load_points(&points, f.nvars())?;
            let spec = if set.real {
                Some(InvariantSetSpec::FullReal(f.nvars()))
            } else if let Some(s) = set.structure {
                Some(InvariantSetSpec::ConjPairs(structure_for(&f, &system, s)?))
            } else {
                None
            };
            let opts = CertOptions {
                max_iters: cert.max_iters,
                round_bits: cert.round_bits,
            };
            let records = pts
                .par_iter()
                .enumerate()
                .map(|(i, x)| certify_one(&f, i, x, spec.as_ref(), &opts))
                .collect::<Run<Vec<PointRecord>>>()?;
            let mut text = String::new();
            for r in &records {
                text.push_str(&r.to_line());
                text.push('\n');
            }
            emit(out.as_deref(), &text)?;
            let resolved = |o: &str| {
                o.parse::<Outcome>()
                    .is_ok_and(|o| o.is_resolved() || o == Outcome::ApproxSolutionOnly)
            };
            Ok(if records.iter().all(|r| resolved(&r.outcome)) {
                0
            } else {
                2
            })
        }
        Command::Validate { system, structure } => {
            let f = load_system(&system)?;
            let [m, k, l, q] = structure;
            match infer_block_structure(&f, m, k, l, q) {
                Ok(bs) => {
                    let report = validate_block_structure(&f, &bs);
                    println!("{report}");
                    Ok(if report.passed() { 0 } else { 2 })
                }
                Err(e) => {
                    println!("FAIL (m={m}, k={k}, l={l}, q={q}): {e}");
                    Ok(2)
                }
            }
        }
        Command::Refine {
            system,
            points,
            iters,
            round_bits,
            out,
        } => {
            let f = load_system(&system)?;
            let pts = load_points(&points, f.nvars())?;
            let refined: Vec<(CVector, bool)> = pts
                .par_iter()
                .map(|x| match refine(&f, x, iters, round_bits) {
                    Ok(y) => (y, true),
                    Err(_) => (x.clone(), false),
                })
                .collect();
            let mut singular = false;
            for (i, (_, ok)) in refined.iter().enumerate() {
                if !ok {
                    eprintln!("point {i}: singular Jacobian; passed through unchanged");
                    singular = true;
                }
            }
            let pts: Vec<CVector> = refined.into_iter().map(|(x, _)| x).collect();
            emit(out.as_deref(), &serialize_points(&pts))?;
            Ok(if singular { 2 } else { 0 })
        }
        Command::Tritangent {
            curve,
            candidates,
            solve,
            solver,
            max_iters,
            round_bits,
            refine,
            out,
        } => {
            let c = load_curve(&curve)?;
            let cands = match candidates {
                Some(path) if !solve => load_points(&path, DIM)?,
                _ => multistart_solve_with(&c, &solver.options())
                    .iter()
                    .map(|t| t.flatten())
                    .collect(),
            };
            let opts = ClassifyOptions {
                refine_iters: refine,
                refine_bits: Some(round_bits),
                cert: CertOptions {
                    max_iters,
                    round_bits: Some(round_bits),
                },
            };
            let report =
                classify_tritangents(&c, &cands, &opts).map_err(|e| Failure::at(&curve, e))?;
            emit(out.as_deref(), &classification_lines(&report))?;
            let n = &report.counts;
            eprintln!(
                "distinct {} nonreal {} real {} totally_real {} real_not_totally {} unresolved {}",
                n.distinct, n.nonreal, n.real, n.totally_real, n.real_not_totally, n.unresolved
            );
            Ok(if n.complete() { 0 } else { 3 })
        }
        Command::Solve { curve, solver, out } => {
            let c = load_curve(&curve)?;
            let cands: Vec<CVector> = multistart_solve_with(&c, &solver.options())
                .iter()
                .map(|t| t.flatten())
                .collect();
            eprintln!("{} candidates", cands.len());
            emit(out.as_deref(), &serialize_points(&cands))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage errors are input errors; exit code 2 is reserved.
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
