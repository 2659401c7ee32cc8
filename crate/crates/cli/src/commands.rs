//! Subcommands and their exit codes.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use simplex_sweep::io::{complex_from_json, complex_to_json, sweeping_order_from_json, sweeping_order_to_json};
use simplex_sweep::sweep::order_vertices_along;
use simplex_sweep::{
    candidate_ordering_circle, check_assumption_reconstruction, check_structure, global_vertex_circle, order_next,
    order_vertices, reconstruct_all, CandidateTable, Error, IndegreeOracle, Property, ReconstructOptions, Result,
    Simplex, SimplicialComplex, SweepingOrder, Vector,
};

use crate::gen::gen_complex;
use crate::svg::plot_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_ASSUMPTION: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "simplex-sweep", version, about = "Sweeping orders and indegree reconstruction of simplicial complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check embedding-style structure and the reconstruction assumption at every level.
    Validate {
        file: PathBuf,
        #[arg(long, default_value = "embedded")]
        property: Property,
    },
    /// Print the sweeping order of the `dim`-simplices as JSON.
    SweepOrder {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Attach candidate-ordering circles for this property instead of sweeping along the last axis.
        #[arg(long)]
        property: Option<Property>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild the complex from its vertices using indegree queries only.
    Reconstruct {
        file: PathBuf,
        #[arg(long, default_value = "embedded")]
        property: Property,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exit with code 1 unless the result equals the input.
        #[arg(long)]
        check: bool,
        /// Write every query as one JSON line.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        max_retries: usize,
    },
    /// Generate a random embedded complex on a perturbed grid.
    Gen {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a planar or spatial complex as SVG, optionally labeled by a sweeping order.
    Plot {
        file: PathBuf,
        #[arg(long)]
        order: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Process exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ReconstructionMismatch(_) => EXIT_MISMATCH,
        Error::AssumptionViolation(_)
        | Error::NoPerpendicular(_)
        | Error::NotPerpendicular(_)
        | Error::NotFound(_)
        | Error::VerificationFailed { .. }
        | Error::InternalInvariantViolation(_) => EXIT_ASSUMPTION,
        Error::InvalidInput(_) | Error::Unsupported(_) => EXIT_MALFORMED,
    }
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_MALFORMED
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SimplicialComplex> {
    complex_from_json(&read(path)?)
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::InvalidInput(format!("stdout: {e}"))),
    }
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Validate { file, property } => validate(&load(&file)?, property, stdout),
        Command::SweepOrder {
            file,
            dim,
            seed,
            property,
            out,
        } => {
            let k = load(&file)?;
            let order = sweep_order(&k, dim, seed, property)?;
            emit(&sweeping_order_to_json(&order), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Reconstruct {
            file,
            property,
            seed,
            check,
            trace,
            stats,
            out,
            max_retries,
        } => {
            let hidden = load(&file)?;
            let oracle = if trace.is_some() {
                IndegreeOracle::with_trace(hidden.clone())
            } else {
                IndegreeOracle::new(hidden.clone())
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let result = reconstruct_all(&oracle, &hidden.vertex_skeleton(), property, &mut rng, &ReconstructOptions { max_retries })?;
            if let Some(path) = &trace {
                let mut buf = Vec::new();
                oracle
                    .write_trace_jsonl(&mut buf)
                    .and_then(|_| fs::write(path, buf))
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            }
            if let Some(path) = &stats {
                let text = serde_json::to_string_pretty(&result.stats).expect("stats serialize") + "\n";
                emit(&text, Some(path), stdout)?;
            }
            emit(&complex_to_json(&result.complex), out.as_deref(), stdout)?;
            if check && result.complex != hidden {
                let missing = hidden.counts();
                let got = result.complex.counts();
                return Err(Error::ReconstructionMismatch(format!(
                    "expected simplex counts {missing:?}, reconstructed {got:?}"
                )));
            }
            if check {
                let _ = writeln!(stderr, "check: reconstructed complex equals the input");
            }
            Ok(EXIT_OK)
        }
        Command::Gen { d, n, seed, out } => {
            emit(&complex_to_json(&gen_complex(d, n, seed)?), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Plot { file, order, out } => {
            let k = load(&file)?;
            let order = order.map(|p| read(&p).and_then(|text| sweeping_order_from_json(&text, &k))).transpose()?;
            emit(&plot_svg(&k, order.as_ref())?, out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Prints one line per check; exit code 2 when any check fails.
pub fn validate(k: &SimplicialComplex, property: Property, stdout: &mut dyn Write) -> Result<i32> {
    let mut ok = true;
    let report = check_structure(k, property)?;
    let mut lines = Vec::new();
    if report.passes() {
        lines.push(format!("structure ({property}): ok"));
    } else {
        ok = false;
        lines.push(format!(
            "structure ({property}): {} simplex(es) without a perpendicular direction, {} non-injective pair(s)",
            report.no_perpendicular.len(),
            report.non_injective.len()
        ));
        for s in &report.no_perpendicular {
            lines.push(format!("  no perpendicular: {s}"));
        }
        for (a, b) in &report.non_injective {
            lines.push(format!("  overlap: {a} and {b}"));
        }
    }
    for i in 0..k.top_dim().unwrap_or(0) {
        let violations = check_assumption_reconstruction(&k.skeleton(i), i, property)?;
        if violations.is_empty() {
            lines.push(format!("assumption at dimension {i}: ok"));
        } else {
            ok = false;
            lines.push(format!("assumption at dimension {i}: {} violation(s)", violations.len()));
            for v in &violations {
                lines.push(format!("  candidates of {}: {} and {}", v.center, v.first, v.second));
            }
        }
    }
    let mut text = lines.join("\n");
    text.push('\n');
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Error::InvalidInput(format!("stdout: {e}")))?;
    Ok(if ok { EXIT_OK } else { EXIT_ASSUMPTION })
}

/// The sweeping order of the `dim`-simplices.
///
/// Without a property the vertices are swept along the last coordinate axis
/// and every later order uses deterministic circles. With a property each
/// entry carries a verified candidate-ordering circle drawn from `seed`.
pub fn sweep_order(k: &SimplicialComplex, dim: usize, seed: u64, property: Option<Property>) -> Result<SweepingOrder> {
    let d = k.ambient_dim();
    if dim > d {
        return Err(Error::InvalidInput(format!("cannot sweep {dim}-simplices in dimension {d}")));
    }
    let Some(property) = property else {
        let mut order = order_vertices_along(k, &Vector::basis(d, d - 1))?;
        while order.dim < dim {
            order = order_next(k, &order, None)?;
        }
        return Ok(order);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let retries = ReconstructOptions::default().max_retries;
    let k0 = k.vertex_skeleton();
    let table = CandidateTable::build(&k0, 0, property)?;
    let circle = global_vertex_circle(&k0, &table, &mut rng, retries)?;
    let mut order = order_vertices(k, &circle, true)?;
    while order.dim < dim {
        let i = order.dim + 1;
        let ki = k.skeleton(i);
        let table = CandidateTable::build(&ki, i, property)?;
        let mut provider = |sigma: &Simplex, s: &Vector| candidate_ordering_circle(&ki, sigma, s, table.get(sigma)?, &mut rng, retries);
        order = order_next(k, &order, Some(&mut provider))?;
    }
    Ok(order)
}
