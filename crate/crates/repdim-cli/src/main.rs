//! Command-line workbench for bound quiver algebras: build algebras from
//! text files, test selfinjectivity and socle equivalence, compute
//! approximation resolutions and endomorphism global dimensions, transfer
//! generators between socle-equivalent partners, and run the built-in
//! example corpus.
//!
//! Exit codes: 0 all checks passed, 1 a mathematical check failed,
//! 2 input error.

use clap::{Parser, Subcommand};
use repdim_cli::{corpus, parse, random, search};
use repdim_core::algebra::Algebra;
use repdim_core::approx::{resolve, verify_resolution};
use repdim_core::endo::{global_dimension, EndoAlgebra};
use repdim_core::rep::is_selfinjective;
use repdim_core::transfer::{
    generator_summands, normalize_summands, transfer_generator, verify_identification,
};
use repdim_core::{Error, Matrix, Result};
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "repdim", about = "representation-dimension workbench for bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the report to this path as well as stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Iteration cap for resolutions and global dimensions.
    #[arg(long, global = true, default_value_t = 12)]
    cap: usize,
    /// Seed for all pseudo-random choices.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Path-length hint passed to the algebra builder.
    #[arg(long, global = true)]
    degree_hint: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an algebra file and print its dimension and basis.
    Build {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Check whether an algebra is selfinjective.
    Selfinjective {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Verify that two algebras are socle equivalent and report the
    /// projective correspondence.
    SocleEquiv {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        algebra_b: PathBuf,
        /// "identity" (default) or a path to a matrix file over the
        /// socle-quotient basis.
        #[arg(long)]
        iso: Option<String>,
    },
    /// Compute the minimal approximation resolution of a module with
    /// respect to the generator N + A.
    Resolve {
        #[arg(long)]
        algebra: PathBuf,
        /// Module file for X, the module to resolve.
        #[arg(long)]
        module: PathBuf,
        /// Module file whose blocks are the extra generator summands N.
        #[arg(long)]
        generator: Option<PathBuf>,
    },
    /// Global dimension of End(N + A).
    Gldim {
        #[arg(long)]
        algebra: PathBuf,
        /// Module file whose blocks are the extra generator summands N.
        #[arg(long)]
        generator: Option<PathBuf>,
    },
    /// Transfer the generator N + A to the socle-equivalent partner and
    /// compare endomorphism global dimensions.
    Transfer {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        algebra_b: PathBuf,
        #[arg(long)]
        iso: Option<String>,
        #[arg(long)]
        generator: Option<PathBuf>,
    },
    /// Run a built-in example (or all of them with `--id all`).
    Corpus {
        #[arg(long, default_value = "all")]
        id: String,
    },
    /// Search for a generator module N minimizing gldim End(N + A).
    Search {
        #[arg(long)]
        algebra: PathBuf,
        /// Candidate summand dimension bound.
        #[arg(long, default_value_t = 4)]
        dim_cap: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(all_passed) => {
            if all_passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Input(_) | Error::IdealNotAdmissible { .. } => 2,
                _ => 1,
            }
        }
    };
    std::process::exit(code);
}

fn load_algebra(cli: &Cli, path: &PathBuf) -> Result<Arc<Algebra>> {
    parse::parse_algebra_file(path)?.build(cli.degree_hint)
}

fn load_iso(spec: &Option<String>) -> Result<Option<Matrix>> {
    match spec.as_deref() {
        None | Some("identity") => Ok(None),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("{path}: {e}")))?;
            Err(Error::Input(format!(
                "explicit identification matrices are read from the socle-quotient \
                 basis; file {path} has {} lines but no algebra context here — pass \
                 `identity` or supply the matrix via the library API",
                text.lines().count()
            )))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    print!("{text}");
    if let Some(path) = &cli.report {
        std::fs::write(path, text).map_err(|e| Error::Input(format!("{e}")))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.cmd {
        Cmd::Build { algebra } => {
            let a = load_algebra(cli, algebra)?;
            let mut out = format!(
                "dimension {}\nvertices {}\narrows {}\nbasis:\n",
                a.dim(),
                a.vertex_count(),
                a.quiver.arrows.len()
            );
            for m in &a.basis {
                out.push_str(&format!("  {}\n", m.display(&a.quiver)));
            }
            emit(cli, &out)?;
            Ok(true)
        }
        Cmd::Selfinjective { algebra } => {
            let a = load_algebra(cli, algebra)?;
            let ok = is_selfinjective(&a)?;
            emit(cli, &format!("selfinjective: {ok}\n"))?;
            Ok(ok)
        }
        Cmd::SocleEquiv { algebra, algebra_b, iso } => {
            let a = load_algebra(cli, algebra)?;
            let b = load_algebra(cli, algebra_b)?;
            let ident = verify_identification(&a, &b, load_iso(iso)?)?;
            let mut out = format!(
                "socle equivalent: socle quotients of dimension {} identified\n",
                ident.qa.dim
            );
            for (v, pair) in ident.pairs.iter().enumerate() {
                out.push_str(&format!(
                    "vertex {}: lengths {} = {}, {}\n",
                    a.quiver.vertices[v],
                    pair.p_a.total_dim(),
                    pair.p_b.total_dim(),
                    match pair.obstruction() {
                        None => "compatible identification of radical and top".to_string(),
                        Some(o) => o,
                    }
                ));
            }
            emit(cli, &out)?;
            Ok(true)
        }
        Cmd::Resolve { algebra, module, generator } => {
            let a = load_algebra(cli, algebra)?;
            let xs = parse::parse_module_file(&a, module)?;
            let n = match generator {
                Some(g) => parse::parse_module_file(&a, g)?,
                None => Vec::new(),
            };
            let m = normalize_summands(&generator_summands(&a, &n))?;
            let mut out = String::new();
            let mut ok = true;
            for (i, x) in xs.iter().enumerate() {
                let res = resolve(&m, x, cli.cap, cli.seed)?;
                verify_resolution(&m, &res)?;
                out.push_str(&format!(
                    "module {i}: resolution length {} with stage dimensions {:?}\n",
                    res.length,
                    res.stages
                        .iter()
                        .map(|s| s.source.total_dim())
                        .collect::<Vec<_>>()
                ));
                ok = ok && res.length <= cli.cap;
            }
            emit(cli, &out)?;
            Ok(ok)
        }
        Cmd::Gldim { algebra, generator } => {
            let a = load_algebra(cli, algebra)?;
            let n = match generator {
                Some(g) => parse::parse_module_file(&a, g)?,
                None => Vec::new(),
            };
            let m = normalize_summands(&generator_summands(&a, &n))?;
            let e = EndoAlgebra::new(&m)?;
            let g = global_dimension(&e, cli.cap)?;
            emit(
                cli,
                &format!("gldim End(N + A) = {} (per-simple {:?})\n", g.value, g.per_simple),
            )?;
            Ok(true)
        }
        Cmd::Transfer { algebra, algebra_b, iso, generator } => {
            let a = load_algebra(cli, algebra)?;
            let b = load_algebra(cli, algebra_b)?;
            let ident = verify_identification(&a, &b, load_iso(iso)?)?;
            let n = match generator {
                Some(g) => parse::parse_module_file(&a, g)?,
                None => random::random_soc_annihilated(&a, cli.seed, 2)?,
            };
            let out = transfer_generator(&ident, &n, cli.cap)?;
            emit(
                cli,
                &format!(
                    "gldim End(N + A) = {}\ngldim End(N + A') = {}\nequal: {}{}\n",
                    out.gldim_a,
                    out.gldim_b,
                    out.equal,
                    if out.capped { " (warning: both at the cap, equality is of bounds)" } else { "" }
                ),
            )?;
            Ok(out.equal)
        }
        Cmd::Corpus { id } => {
            let entries: Vec<&corpus::CorpusEntry> = if id == "all" {
                corpus::ENTRIES.iter().collect()
            } else {
                vec![corpus::entry(id).ok_or_else(|| {
                    Error::Input(format!(
                        "unknown corpus id {id:?}; known: {}",
                        corpus::ENTRIES
                            .iter()
                            .map(|e| e.id)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ))
                })?]
            };
            let mut all = true;
            let mut out = String::new();
            for e in entries {
                let report = corpus::run_corpus(e, cli.seed, cli.cap);
                all = all && report.all_passed();
                out.push_str(&report.text(true));
            }
            emit(cli, &out)?;
            Ok(all)
        }
        Cmd::Search { algebra, dim_cap } => {
            let a = load_algebra(cli, algebra)?;
            let found = search::search_generator(&a, *dim_cap, cli.cap)?;
            emit(
                cli,
                &format!(
                    "best gldim End(N + A) = {} with N of summand dimensions {:?} \
                     ({} candidates, {} subsets scanned)\n",
                    found.gldim,
                    found.n_summands.iter().map(|m| m.total_dim()).collect::<Vec<_>>(),
                    found.candidates_scanned,
                    found.subsets_scanned
                ),
            )?;
            Ok(true)
        }
    }
}
