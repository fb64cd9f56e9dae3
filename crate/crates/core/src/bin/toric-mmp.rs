use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use toric_mmp::fan::Fan;
use toric_mmp::fano_data::{load_builtin_table, verify_table};
use toric_mmp::intersect::{ch2_dot_surface, is_2fano, is_fano, FanoWitness};
use toric_mmp::io::{
    emit_polytope, emit_report_csv, emit_report_text, emit_surfaces_csv, emit_svg, emit_trace, parse_dataset,
    parse_fan_with, parse_polytope_with, ParseMode,
};
use toric_mmp::mmp::{run_mmp_scaling_with, MmpOptions};
use toric_mmp::polytope::{adjoint, cayley_mori_detect, is_cayley_s, thresholds, FacetPresentation};
use toric_mmp::ratlin::parse_rational;
use toric_mmp::{Error, Result};

/// Exact toric geometry: fans, polytopes, second Chern characters and the MMP with scaling.
#[derive(Parser)]
#[command(name = "toric-mmp", version)]
struct Cli {
    /// Divide out the content of non-primitive vectors instead of rejecting them.
    #[arg(long, global = true)]
    lenient: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a fan file: simplicial, smooth, complete.
    Validate { fan: PathBuf },
    /// Decide whether a fan is Fano.
    CheckFano { fan: PathBuf },
    /// Evaluate ch2 on every invariant surface.
    #[command(name = "check-2fano")]
    Check2fano {
        fan: PathBuf,
        /// Write every surface value as CSV.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// ch2 on the surface of a codimension-2 cone, given by ray indices.
    Ch2 {
        fan: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        surface: Vec<usize>,
    },
    /// Run the MMP with scaling on a polytope.
    RunMmp {
        polytope: PathBuf,
        /// Also write the trace to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// On ties, continue with the lexicographically smallest wall.
        #[arg(long)]
        force: bool,
    },
    /// Print the adjoint polytope P^(s).
    Adjoint {
        polytope: PathBuf,
        #[arg(long = "s")]
        s: String,
    },
    /// Nef and effective thresholds.
    Thresholds { polytope: PathBuf },
    /// Look for a Cayley-Mori decomposition.
    DetectCayley { polytope: PathBuf },
    /// Check the smooth toric Fano 4-fold table (the embedded one by default).
    VerifyTable {
        dataset: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Draw a 2D polytope and its adjoint polytopes.
    Plot {
        polytope: PathBuf,
        #[arg(long, required = true)]
        svg: PathBuf,
    },
}

/// Result of a command that ran to completion.
enum Outcome {
    Ok,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = if cli.lenient { ParseMode::Lenient } else { ParseMode::Strict };
    match run(cli.command, mode) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Argument(format!("cannot read {}: {e}", path.display())))
}

fn load_fan(path: &Path, mode: ParseMode) -> Result<Fan> {
    let (fan, warnings) = parse_fan_with(&read(path)?, mode)?;
    warnings.iter().for_each(|w| eprintln!("warning: {w}"));
    Ok(fan)
}

fn load_polytope(path: &Path, mode: ParseMode) -> Result<FacetPresentation> {
    let (p, warnings) = parse_polytope_with(&read(path)?, mode)?;
    warnings.iter().for_each(|w| eprintln!("warning: {w}"));
    Ok(p)
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Argument(format!("cannot write {}: {e}", path.display())))
}

fn run(command: Command, mode: ParseMode) -> Result<Outcome> {
    match command {
        Command::Validate { fan } => {
            let f = load_fan(&fan, mode)?;
            let r = f.report();
            println!("rank {}, {} rays, {} maximal cones", f.rank(), f.num_rays(), f.max_cones().len());
            println!("simplicial: {}\nsmooth: {}\ncomplete: {}", r.simplicial, r.smooth, r.complete);
        }
        Command::CheckFano { fan } => {
            let v = is_fano(&load_fan(&fan, mode)?)?;
            println!("fano: {}", v.fano);
            match v.witness {
                Some(FanoWitness::Collection { members, degree }) => {
                    println!("primitive collection {members:?} has degree {degree}")
                }
                Some(FanoWitness::Wall { rays, value }) => println!("wall {rays:?} has -K.C = {value}"),
                None => {}
            }
        }
        Command::Check2fano { fan, report } => {
            let v = is_2fano(&load_fan(&fan, mode)?)?;
            println!("2-fano: {}\nnef: {}", v.two_fano, v.nef);
            println!("minimum: {} at {:?}", v.minimum.value, v.minimum.surface);
            if let Some(path) = report {
                write(&path, &emit_surfaces_csv(&v)?)?;
            }
        }
        Command::Ch2 { fan, mut surface } => {
            surface.sort_unstable();
            println!("{}", ch2_dot_surface(&load_fan(&fan, mode)?, &surface)?);
        }
        Command::RunMmp { polytope, trace, force } => {
            let t = run_mmp_scaling_with(&load_polytope(&polytope, mode)?, MmpOptions { force })?;
            let text = emit_trace(&t);
            print!("{text}");
            if let Some(path) = trace {
                write(&path, &text)?;
            }
            if !t.checks_pass() {
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Adjoint { polytope, s } => {
            let s = parse_rational(&s)?;
            let q = adjoint(&load_polytope(&polytope, mode)?, &s)?;
            if !q.is_nonempty()? {
                eprintln!("note: P^({s}) is empty");
            }
            print!("{}", emit_polytope(&q));
        }
        Command::Thresholds { polytope } => {
            let t = thresholds(&load_polytope(&polytope, mode)?)?;
            println!("nef: {}\neffective: {}", t.nef, t.effective);
        }
        Command::DetectCayley { polytope } => match cayley_mori_detect(&load_polytope(&polytope, mode)?)? {
            None => println!("no Cayley-Mori decomposition"),
            Some(d) => {
                println!("Cayley-Mori over a {}-simplex with {} base polytopes", d.k(), d.bases.len());
                for (i, w) in d.w.iter().enumerate() {
                    let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                    println!("w_{} = ({})", i + 1, w.join(", "));
                }
                match is_cayley_s(&d) {
                    Some(s) => println!("Cayley polytope of order {s}"),
                    None => println!("the simplex is not a dilated standard simplex"),
                }
            }
        },
        Command::VerifyTable { dataset, report } => {
            let rows = match dataset {
                Some(path) => parse_dataset(&read(&path)?)?,
                None => load_builtin_table(),
            };
            let r = verify_table(&rows);
            print!("{}", emit_report_text(&r));
            if let Some(path) = report {
                write(&path, &emit_report_csv(&r)?)?;
            }
            if !r.all_match() {
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Plot { polytope, svg } => {
            write(&svg, &emit_svg(&load_polytope(&polytope, mode)?)?)?;
        }
    }
    Ok(Outcome::Ok)
}
