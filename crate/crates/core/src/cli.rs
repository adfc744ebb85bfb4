//! Command-line front end. Exit statuses: 0 success, 1 domain-level
//! negative (not a manifold, no embedding, no consistent reconstruction),
//! 2 input error, 3 contract violation.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::complex::CubicalComplex;
use crate::embedding::{
    labelling_from_embedding, verify_labelling_by_component, SearchOutcome, SimpleGraph,
};
use crate::error::{Error, Result};
use crate::format::{parse_complex, parse_graph, serialize_complex, serialize_graph};
use crate::generators::{Generated, GeneratorSpec};
use crate::homology::{homology, Ring};
use crate::manifold::is_homology_manifold;
use crate::reconstruction::{
    reconstruct_auto_with, reconstruct_with_report, Mode, ReconstructionConfig, StepReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CONTRACT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cubeskel",
    version,
    about = "Cubical complexes in hypercubes: homology, manifolds, reconstruction, embeddings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RingArg {
    Gf2,
    Int,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Standard,
    TightGf2,
    TightInt,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-degree homology of a complex file.
    Homology {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "gf2")]
        ring: RingArg,
    },
    /// Homology-manifold check; exits 0 only for manifolds.
    ManifoldCheck { file: PathBuf },
    /// Write the k-skeleton of a complex.
    Skeleton {
        file: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Rebuild a manifold from its k-skeleton.
    Reconstruct {
        file: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'd', conflicts_with = "auto", required_unless_present = "auto")]
        d: Option<usize>,
        #[arg(long, requires = "dmax")]
        auto: bool,
        #[arg(long)]
        dmax: Option<usize>,
        #[arg(long, value_enum, default_value = "standard")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Search for an embedding of a graph into a hypercube graph.
    Embed {
        file: PathBuf,
        #[arg(long)]
        nmax: usize,
    },
    /// Write a named complex or graph, e.g. `generate product boundary-cube 2 boundary-cube 2`.
    Generate {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Contract(_) | Error::Contradiction(_) => EXIT_CONTRACT,
        _ => EXIT_INPUT,
    }
}

/// Runs one invocation; `out` gets reports, `err` gets diagnostics.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read_complex(path: &Path) -> Result<(CubicalComplex, bool)> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let p = parse_complex(&text)?;
    Ok((p.complex, p.closure_added))
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Homology { file, ring } => {
            let (c, _) = read_complex(&file)?;
            let ring = match ring {
                RingArg::Gf2 => Ring::Gf2,
                RingArg::Int => Ring::Integer,
            };
            let p = homology(&c, ring)?;
            writeln!(out, "ring {ring}")?;
            for (j, g) in p.degrees().iter().enumerate() {
                let torsion = if g.torsion.is_empty() {
                    "-".to_string()
                } else {
                    g.torsion
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                writeln!(out, "degree {j} betti {} torsion {torsion}", g.betti)?;
            }
            let betti: Vec<String> = p.betti_vector().iter().map(|b| b.to_string()).collect();
            writeln!(out, "betti {}", betti.join(" "))?;
            Ok(EXIT_OK)
        }
        Command::ManifoldCheck { file } => {
            let (c, _) = read_complex(&file)?;
            let r = is_homology_manifold(&c);
            write!(out, "{r}")?;
            Ok(if r.is_manifold {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Skeleton { file, k, out: path } => {
            let (c, _) = read_complex(&file)?;
            write_or_print(path.as_deref(), &serialize_complex(&c.skeleton(k)), out)?;
            Ok(EXIT_OK)
        }
        Command::Reconstruct {
            file,
            k,
            d,
            auto,
            dmax,
            mode,
            jobs,
            out: path,
        } => {
            let (skel, _) = read_complex(&file)?;
            let mode = match mode {
                ModeArg::Standard => Mode::Standard,
                ModeArg::TightGf2 => Mode::TightGf2,
                ModeArg::TightInt => Mode::TightInteger,
            };
            if auto {
                reconstruct_auto_cmd(
                    &skel,
                    k,
                    dmax.unwrap_or(k),
                    mode,
                    jobs,
                    path.as_deref(),
                    out,
                )
            } else {
                let d =
                    d.ok_or_else(|| Error::Contract("either -d or --auto is required".into()))?;
                reconstruct_fixed_cmd(&skel, k, d, mode, jobs, path.as_deref(), out)
            }
        }
        Command::Embed { file, nmax } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
            let g = parse_graph(&text)?;
            embed_cmd(&g, nmax, out)
        }
        Command::Generate { spec, out: path } => {
            let spec = GeneratorSpec::parse_tokens(&spec)?;
            let text = match spec.generate()? {
                Generated::Complex(c) => serialize_complex(&c),
                Generated::Graph(g) => serialize_graph(&g),
            };
            write_or_print(path.as_deref(), &text, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn write_steps(steps: &[StepReport], out: &mut dyn Write) -> Result<()> {
    for s in steps {
        writeln!(
            out,
            "step {} criterion {} candidates {} accepted {}",
            s.degree,
            s.criterion,
            s.verdicts.len(),
            s.accepted().count()
        )?;
        for v in &s.verdicts {
            writeln!(out, "candidate {v}")?;
        }
    }
    Ok(())
}

fn f_vector_line(c: &CubicalComplex) -> String {
    c.f_vector()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn reconstruct_fixed_cmd(
    skel: &CubicalComplex,
    k: usize,
    d: usize,
    mode: Mode,
    jobs: usize,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let cfg = ReconstructionConfig::new(k, d, mode).with_jobs(jobs);
    let r = reconstruct_with_report(skel, &cfg)?;
    let text = serialize_complex(&r.complex);
    let manifold = is_homology_manifold(&r.complex);
    let ok = manifold.is_manifold && manifold.dimension == Some(d);
    // Without -o the complex goes to `out` and the report is dropped to keep stdout a valid file.
    let mut sink = std::io::sink();
    let report: &mut dyn Write = if path.is_some() { &mut *out } else { &mut sink };
    writeln!(report, "mode {mode} k {k} d {d}")?;
    write_steps(&r.steps, report)?;
    writeln!(
        report,
        "result faces {} f-vector {}",
        r.complex.len(),
        f_vector_line(&r.complex)
    )?;
    writeln!(report, "result-manifold {}", if ok { "yes" } else { "no" })?;
    write_or_print(path, &text, out)?;
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn reconstruct_auto_cmd(
    skel: &CubicalComplex,
    k: usize,
    d_max: usize,
    mode: Mode,
    jobs: usize,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let tight = match mode {
        Mode::Standard => None,
        Mode::TightGf2 => Some(Ring::Gf2),
        Mode::TightInteger => Some(Ring::Integer),
    };
    let report = reconstruct_auto_with(skel, k, d_max, tight, jobs)?;
    let mut sink = std::io::sink();
    let w: &mut dyn Write = if path.is_some() { &mut *out } else { &mut sink };
    writeln!(w, "auto k {k} dmax {d_max}")?;
    for a in &report.attempts {
        writeln!(
            w,
            "attempt d {} mode {} manifold {}",
            a.d,
            a.mode,
            if a.is_manifold { "yes" } else { "no" }
        )?;
        write_steps(&a.result.steps, w)?;
    }
    match report.input_manifold {
        Some(d) => writeln!(w, "input-manifold yes dimension {d}")?,
        None => writeln!(w, "input-manifold no")?,
    }
    for (d, c) in &report.results {
        writeln!(
            w,
            "result d {d} faces {} f-vector {}",
            c.len(),
            f_vector_line(c)
        )?;
    }
    let Some((_, first)) = report.results.first() else {
        writeln!(w, "no consistent manifold for d <= {d_max}")?;
        return Ok(EXIT_NEGATIVE);
    };
    write_or_print(path, &serialize_complex(first), out)?;
    Ok(EXIT_OK)
}

fn embed_cmd(g: &SimpleGraph, nmax: usize, out: &mut dyn Write) -> Result<i32> {
    match crate::embedding::search_graph_embedding(g, nmax) {
        SearchOutcome::Found(emb) => {
            let lab = labelling_from_embedding(&emb, g)?;
            let verified = verify_labelling_by_component(g, &lab)?;
            writeln!(out, "embedding n {}", emb.n)?;
            for v in 0..g.vertex_count() {
                writeln!(out, "vertex {v} code {}", emb.code_string(v))?;
            }
            for ((u, v), l) in lab.iter() {
                writeln!(out, "edge {u} {v} label {l}")?;
            }
            writeln!(
                out,
                "labelling-verified {}",
                if verified { "yes" } else { "no" }
            )?;
            if !verified {
                return Err(Error::Contradiction(
                    "labelling from a found embedding failed verification".into(),
                ));
            }
            Ok(EXIT_OK)
        }
        SearchOutcome::OddCycle(cycle) => {
            writeln!(out, "no embedding for n <= {nmax}")?;
            let c: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
            writeln!(
                out,
                "odd cycle {} (not bipartite: no embedding for any n)",
                c.join(" ")
            )?;
            Ok(EXIT_NEGATIVE)
        }
        SearchOutcome::NoneUpTo(n) => {
            writeln!(out, "no embedding for n <= {n}")?;
            Ok(EXIT_NEGATIVE)
        }
    }
}
