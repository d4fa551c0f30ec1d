use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use polymeasure::sample::{random_convex, random_nondegenerate, rng};
use polymeasure_cli::commands::{self, MeasureSource};
use polymeasure_cli::docs::to_text;
use polymeasure_cli::{read_file, suites, write_atomic, CliResult, ConfigDocument, MeasureDocument, ResultDocument};

/// Exact construction and verification of polygonal measures with vanishing
/// harmonic moments.
#[derive(Parser)]
#[command(name = "polymeasure", version)]
struct Cli {
    /// Write the document here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Real or complex null space of the moment matrix.
    #[command(group(ArgGroup::new("field").args(["real", "complex"])))]
    Nullspace {
        config: PathBuf,
        #[arg(long)]
        real: bool,
        #[arg(long)]
        complex: bool,
    },
    /// Chamber decomposition, optionally with densities of a measure.
    #[command(group(ArgGroup::new("source").args(["measure", "kernel"])))]
    Chambers {
        config: PathBuf,
        #[arg(long)]
        measure: Option<PathBuf>,
        /// Use the k-th real null measure.
        #[arg(long)]
        kernel: Option<usize>,
        /// Also report cells cut out by the segments between points.
        #[arg(long)]
        segments: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Triangle-by-chamber incidence matrix.
    Incidence {
        config: PathBuf,
        #[arg(long)]
        segments: bool,
    },
    /// Harmonic moments of a measure or of every basis triangle.
    Moments {
        config: PathBuf,
        #[arg(long)]
        measure: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Bounded search for unit-density null measures.
    SearchUnit {
        config: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Equipotentiality checks on a measure or on a result carrying one.
    Verify {
        measure: PathBuf,
        /// Require the measure to live on this configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        order: usize,
        /// Which measure to take from a result document.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// The six-point example over Q(r3).
    Hexagram {
        #[arg(long, default_value_t = 20)]
        order: usize,
        #[arg(long)]
        config_out: Option<PathBuf>,
        #[arg(long)]
        certificate_out: Option<PathBuf>,
    },
    /// Extreme-ray verdict for every triangle.
    ExtremeRays {
        config: PathBuf,
        /// Cross-check every verdict with the cone-membership oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Flip pairs and their measure identity.
    Flips { config: PathBuf },
    /// Random configuration document.
    Sample {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        points: usize,
        #[arg(long, default_value_t = 20)]
        bound: i64,
        /// Points in convex position.
        #[arg(long)]
        convex: bool,
    },
    /// Seeded property suite.
    Audit {
        #[arg(long, required_unless_present = "list")]
        suite: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        list: bool,
    },
}

fn config(path: &Path) -> CliResult<ConfigDocument> {
    ConfigDocument::parse(&read_file(path)?)
}

fn measure(path: &Path, index: usize) -> CliResult<MeasureDocument> {
    MeasureDocument::from_value(serde_json::from_str(&read_file(path)?)?, index)
}

fn emit(output: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => write_atomic(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let doc: ResultDocument = match cli.command {
        Command::Nullspace { config: c, complex, .. } => commands::nullspace(&config(&c)?, complex)?,
        Command::Chambers { config: c, measure: m, kernel, segments, svg } => {
            let m = m.map(|p| measure(&p, 0)).transpose()?;
            let source = match (&m, kernel) {
                (Some(doc), _) => MeasureSource::Document(doc),
                (None, Some(k)) => MeasureSource::Kernel(k),
                (None, None) => MeasureSource::None,
            };
            let run = commands::chambers(&config(&c)?, source, segments, svg.is_some())?;
            if let (Some(path), Some(text)) = (svg, run.svg) {
                write_atomic(&path, &text)?;
            }
            run.document
        }
        Command::Incidence { config: c, segments } => commands::incidence(&config(&c)?, segments)?,
        Command::Moments { config: c, measure: m, order } => {
            let m = m.map(|p| measure(&p, 0)).transpose()?;
            commands::moments(&config(&c)?, m.as_ref(), order)?
        }
        Command::SearchUnit { config: c, bound } => commands::search_unit(&config(&c)?, bound)?,
        Command::Verify { measure: m, config: c, order, index } => {
            let m = measure(&m, index)?;
            if let Some(c) = c {
                if config(&c)?.normalized()? != m.config.normalized()? {
                    return Err(polymeasure_cli::CliError::Input(
                        "measure and configuration use different points".into(),
                    ));
                }
            }
            commands::verify(&m, order)?
        }
        Command::Hexagram { order, config_out, certificate_out } => {
            let run = commands::hexagram(order)?;
            if let Some(path) = config_out {
                write_atomic(&path, &to_text(&run.config))?;
            }
            if let Some(path) = certificate_out {
                write_atomic(&path, &to_text(&run.certificate))?;
            }
            run.document
        }
        Command::ExtremeRays { config: c, oracle } => commands::extreme_rays(&config(&c)?, oracle)?,
        Command::Flips { config: c } => commands::flips(&config(&c)?)?,
        Command::Sample { seed, points, bound, convex } => {
            let mut r = rng(seed);
            let s =
                if convex { random_convex(&mut r, points, bound) } else { random_nondegenerate(&mut r, points, bound) };
            emit(&cli.output, &to_text(&ConfigDocument::from_point_set(&s)))?;
            return Ok(true);
        }
        Command::Audit { suite, seed, samples, list } => {
            if list {
                let lines: String = suites::SUITES
                    .iter()
                    .map(|s| format!("{:<14} {:>4}  {}\n", s.name, s.default_samples, s.description))
                    .collect();
                emit(&cli.output, &lines)?;
                return Ok(true);
            }
            suites::run(suite.as_deref().unwrap_or_default(), seed, samples)?
        }
    };
    emit(&cli.output, &to_text(&doc))?;
    Ok(doc.passed())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
