mod algo;
mod bench;
mod io;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use cfcolor::geometry::{normalize, Instance};
use cfcolor::hypergraph::first_k_cf_violation;
use cfcolor::instances::{
    complete_graph, gen_frames_clique_gadget, gen_gbonc, gen_interval_filaments, random_bipartite_strings,
    random_corner_lshapes, random_frames, random_grounded_lshapes, random_intervals, try_gen_circle_lower_bound,
};
use cfcolor::oracle::{exact_k_cf_chromatic_capped, ExactResult, DEFAULT_NODE_CAP};
use cfcolor::{Coloring, Error};
use clap::{Parser, Subcommand, ValueEnum};

use crate::algo::Algo;
use crate::bench::Suite;
use crate::io::ColoringFile;

/// Conflict-free colorings of geometric intersection graphs and hypergraphs.
#[derive(Parser)]
#[command(name = "cfcolor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    IntervalsRandom,
    GroundedRandom,
    FramesRandom,
    LshapesRandom,
    StringsRandom,
    LbCircle,
    FramesGadget,
    Gbonc,
    Filaments,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen {
        kind: Kind,
        /// Parameters as key=value, e.g. `n=100` or `t=3 k=1`.
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Color an instance and write the verified coloring.
    Color {
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a coloring against an instance.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// Defaults to the `k` recorded in the coloring file.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Exact k-CF chromatic number of a small instance.
    Exact {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: u64,
    },
    /// Rewrite an instance in general position.
    Normalize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a benchmark suite and write CSV rows.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        #[arg(long, default_value_t = usize::MAX)]
        max_n: usize,
    },
}

struct Params(BTreeMap<String, usize>);

impl Params {
    fn parse(raw: &[String]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for p in raw {
            let (k, v) = p.split_once('=').ok_or_else(|| anyhow!("parameter `{p}` is not key=value"))?;
            let v = v.parse().with_context(|| format!("parameter `{k}` is not a non-negative integer"))?;
            map.insert(k.to_string(), v);
        }
        Ok(Params(map))
    }

    fn get(&self, key: &str) -> Result<usize> {
        self.0.get(key).copied().ok_or_else(|| anyhow!("missing parameter `{key}`"))
    }
}

fn generate(kind: Kind, params: &Params, seed: u64) -> Result<Instance> {
    Ok(match kind {
        Kind::IntervalsRandom => Instance::Intervals(random_intervals(params.get("n")?, seed)),
        Kind::GroundedRandom => Instance::GroundedLShapes(random_grounded_lshapes(params.get("n")?, seed)),
        Kind::FramesRandom => Instance::Frames(random_frames(params.get("n")?, seed)),
        Kind::LshapesRandom => Instance::CornerLShapes(random_corner_lshapes(params.get("n")?, seed)),
        Kind::StringsRandom => Instance::Strings(random_bipartite_strings(params.get("n")?, seed).0),
        Kind::LbCircle => Instance::Intervals(try_gen_circle_lower_bound(params.get("t")?, params.get("k")?)?),
        Kind::FramesGadget => Instance::Frames(gen_frames_clique_gadget(params.get("m")?)?),
        Kind::Gbonc => Instance::Hypergraph(gen_gbonc(&complete_graph(params.get("t")?), params.get("k")?)?),
        Kind::Filaments => Instance::Hypergraph(gen_interval_filaments(params.get("t")?, params.get("k")?)?.hypergraph),
    })
}

fn load(path: &std::path::Path) -> Result<Instance> {
    io::parse_instance(&io::read(path)?).with_context(|| format!("in {}", path.display()))
}

/// Exit code 1 is reported through `Ok(false)`.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen { kind, params, seed, out } => {
            let inst = generate(kind, &Params::parse(&params)?, seed)?;
            io::write(&out, &io::write_instance(&inst))?;
            Ok(true)
        }
        Command::Color { algo, k, input, out, seed } => {
            let inst = load(&input)?;
            let (c, k) = algo::run(algo, &inst, k, seed)?;
            let h = inst.hypergraph()?;
            if let Some(e) = first_k_cf_violation(&h, &c, k)? {
                eprintln!("{} produced a coloring that is not {k}-CF on hyperedge {e}; nothing written", algo.name());
                return Ok(false);
            }
            let file = ColoringFile { colors: c.colors().to_vec(), palette_size: c.palette_size(), algo: algo.name(), k, verified: true };
            io::write(&out, &(serde_json::to_string(&file)? + "\n"))?;
            println!("palette_size {} verified {k}-CF", c.palette_size());
            Ok(true)
        }
        Command::Verify { input, coloring, k } => {
            let inst = load(&input)?;
            let file: ColoringFile = serde_json::from_str(&io::read(&coloring)?)
                .with_context(|| format!("malformed coloring file {}", coloring.display()))?;
            let k = k.unwrap_or(file.k);
            if k == 0 {
                bail!("k must be positive");
            }
            let c = Coloring::new(file.colors, file.palette_size)?;
            let h = inst.hypergraph()?;
            match first_k_cf_violation(&h, &c, k)? {
                None => {
                    println!("pass: {k}-CF with palette {}", c.palette_size());
                    Ok(true)
                }
                Some(e) => {
                    println!("fail: hyperedge {e} {:?} has no color appearing 1..={k} times", h.edges()[e]);
                    Ok(false)
                }
            }
        }
        Command::Exact { input, k, limit, node_cap } => {
            let h = load(&input)?.hypergraph()?;
            match exact_k_cf_chromatic_capped(&h, k, limit, node_cap)? {
                ExactResult::Value(v) => println!("{v}"),
                ExactResult::ExceedsLimit => println!("exceeds limit"),
            }
            Ok(true)
        }
        Command::Normalize { input, out } => {
            io::write(&out, &io::write_instance(&normalize(&load(&input)?)))?;
            Ok(true)
        }
        Command::Bench { suite, out, seeds, max_n } => {
            let rows = bench::run(suite, seeds, max_n)?;
            let file = std::fs::File::create(&out).with_context(|| format!("cannot write {}", out.display()))?;
            bench::write_csv(&rows, file)?;
            Ok(rows.iter().all(|r| r.verified))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let capped = err
        .chain()
        .filter_map(|e| e.downcast_ref::<Error>())
        .any(|e| matches!(e, Error::SearchCap { .. } | Error::ResampleBudget { .. }));
    if capped {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
