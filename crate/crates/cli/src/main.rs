mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use incgen_core::format::{write_sample, OutputFormat};
use incgen_core::verification::{
    chi_square_uniformity, enumerate_bipartite, enumerate_graphs, run_rng, tally_samples,
    ChiSquareReport,
};
use incgen_core::{
    BipartiteGenerator, Error, GenerationStats, Generator, Vertex, DEFAULT_MAX_RESTARTS,
};

use input::{DegreeSource, Input};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                Error::InvalidDegree { .. }
                | Error::TooLargeForOracle { .. }
                | Error::InsufficientSamples { .. } => 2,
                Error::OddDegreeSum(_)
                | Error::NotGraphical
                | Error::NotBigraphical
                | Error::UnbalancedParts { .. } => 3,
                Error::GaveUp(_) => 4,
                _ => 1,
            },
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "incgen",
    version,
    about = "Exactly uniform random graphs with a given degree sequence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate graphs.
    Gen {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
    },
    /// Chi-square test of the sampler against exhaustive enumeration.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 30_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0.001)]
        alpha: f64,
    },
    /// Time independent runs and report their statistics.
    Bench {
        #[command(flatten)]
        common: Common,
        /// Number of runs.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[command(flatten)]
    source: DegreeSource,
    #[arg(long, env = "DEGSEQ_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_RESTARTS)]
    max_restarts: u64,
    /// Output file; standard output if absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Worker threads; 0 means all available cores.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Edgelist,
    Jsonl,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Edgelist => OutputFormat::EdgeList,
            Format::Jsonl => OutputFormat::JsonLines,
        }
    }
}

type Draw = (Vec<(Vertex, Vertex)>, GenerationStats);

#[derive(Clone)]
enum Sampler {
    Graph(Generator),
    Bipartite(BipartiteGenerator),
}

impl Sampler {
    fn new(input: &Input, max_restarts: u64) -> Result<Self, CliError> {
        Ok(match input {
            Input::Graph(ds) => {
                Sampler::Graph(Generator::new(ds.clone())?.with_max_restarts(max_restarts))
            }
            Input::Bipartite(b) => Sampler::Bipartite(
                BipartiteGenerator::new(b.clone())?.with_max_restarts(max_restarts),
            ),
        })
    }

    fn run(&mut self, seed: u64, index: u64) -> Result<Draw, Error> {
        let mut rng = run_rng(seed, index);
        match self {
            Sampler::Graph(g) => g.sample(&mut rng).map(|(g, s)| (g.edges().to_vec(), s)),
            Sampler::Bipartite(g) => g.sample(&mut rng).map(|(g, s)| (g.edges().to_vec(), s)),
        }
    }
}

#[derive(Serialize)]
struct VerifyRecord<'a> {
    source: String,
    seed: u64,
    samples: u64,
    universe_size: usize,
    #[serde(flatten)]
    report: &'a ChiSquareReport,
}

#[derive(Serialize)]
struct BenchRecord {
    run: u64,
    source: String,
    vertices: usize,
    seed: u64,
    max_restarts: u64,
    wall_time_secs: f64,
    restarts_initial: u64,
    restarts_f: u64,
    restarts_b: u64,
    switching_steps_l: u64,
    switching_steps_d: u64,
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::Input(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Input(format!("cannot start worker pool: {e}")))
}

/// Runs `samples` independent draws; results are in run-index order.
fn draw_all(
    sampler: &Sampler,
    seed: u64,
    samples: u64,
    workers: usize,
) -> Result<Vec<Draw>, CliError> {
    let out = pool(workers)?.install(|| {
        (0..samples)
            .into_par_iter()
            .map_init(|| sampler.clone(), |s, k| s.run(seed, k))
            .collect::<Result<Vec<_>, Error>>()
    })?;
    Ok(out)
}

fn gen(common: &Common, samples: u64, format: Format) -> Result<(), CliError> {
    let input = common.source.load()?;
    let sampler = Sampler::new(&input, common.max_restarts)?;
    let results = draw_all(&sampler, common.seed, samples, common.workers)?;
    let mut out = open_output(&common.output)?;
    for (k, (edges, _)) in results.iter().enumerate() {
        write_sample(&mut out, format.into(), k as u64, edges)?;
    }
    out.flush()?;
    Ok(())
}

fn verify(common: &Common, samples: u64, alpha: f64) -> Result<(), CliError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CliError::Input(format!(
            "--alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let input = common.source.load()?;
    let sampler = Sampler::new(&input, common.max_restarts)?;
    let universe = match &input {
        Input::Graph(ds) => enumerate_graphs(ds)?,
        Input::Bipartite(b) => enumerate_bipartite(b)?,
    };
    let counts = pool(common.workers)?.install(|| {
        tally_samples(&universe, samples, common.seed, |rng| {
            let mut s = sampler.clone();
            Ok(match &mut s {
                Sampler::Graph(g) => g.sample(rng)?.0.edges().to_vec(),
                Sampler::Bipartite(g) => g.sample(rng)?.0.edges().to_vec(),
            })
        })
    })?;
    let report = chi_square_uniformity(&counts, alpha)?;
    let record = VerifyRecord {
        source: common.source.describe(),
        seed: common.seed,
        samples,
        universe_size: universe.len(),
        report: &report,
    };
    let mut out = open_output(&common.output)?;
    serde_json::to_writer(&mut out, &record).map_err(io::Error::from)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn bench(common: &Common, runs: u64) -> Result<(), CliError> {
    let input = common.source.load()?;
    let sampler = Sampler::new(&input, common.max_restarts)?;
    let results = draw_all(&sampler, common.seed, runs, common.workers)?;
    let mut out = open_output(&common.output)?;
    for (k, (_, s)) in results.into_iter().enumerate() {
        let record = BenchRecord {
            run: k as u64,
            source: common.source.describe(),
            vertices: input.vertex_count(),
            seed: common.seed,
            max_restarts: common.max_restarts,
            wall_time_secs: s.wall_time.as_secs_f64(),
            restarts_initial: s.restarts_initial,
            restarts_f: s.restarts_f,
            restarts_b: s.restarts_b,
            switching_steps_l: s.switching_steps_l,
            switching_steps_d: s.switching_steps_d,
        };
        serde_json::to_writer(&mut out, &record).map_err(io::Error::from)?;
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen {
            common,
            samples,
            format,
        } => gen(common, *samples, *format),
        Command::Verify {
            common,
            samples,
            alpha,
        } => verify(common, *samples, *alpha),
        Command::Bench { common, samples } => bench(common, *samples),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("incgen: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
