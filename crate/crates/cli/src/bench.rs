//! Named benchmark suites over size ladders.

use std::time::Instant;

use anyhow::Result;
use cfcolor::geometry::Instance;
use cfcolor::instances::{
    complete_graph, gen_gbonc, random_bipartite_strings, random_corner_lshapes, random_frames,
    random_grounded_lshapes, random_intervals,
};
use cfcolor::verify_k_cf;
use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use crate::algo::{self, Algo};
use crate::io::kind_name;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    CircleGrowth,
    GroundedGrowth,
    LshapesGrowth,
    FramesGrowth,
    StringsGrowth,
    GeneralKcf,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub suite: String,
    pub instance_kind: String,
    pub n: usize,
    pub seed: u64,
    pub algo: String,
    pub k: usize,
    pub colors: usize,
    pub verified: bool,
    pub millis: u128,
}

struct Point {
    instance: Instance,
    seed: u64,
    algo: Algo,
    k: Option<usize>,
}

fn ladder(suite: Suite, seeds: u64, max_n: usize) -> Result<Vec<Point>> {
    let sizes: &[usize] = match suite {
        Suite::CircleGrowth => &[16, 64, 256, 1024, 4096],
        Suite::GroundedGrowth | Suite::LshapesGrowth | Suite::FramesGrowth => &[100, 500, 2000],
        Suite::StringsGrowth => &[50, 200, 1000],
        Suite::GeneralKcf => &[0],
    };
    let mut out = Vec::new();
    if suite == Suite::GeneralKcf {
        for (t, k) in [(4, 2), (5, 2), (5, 3), (6, 2), (7, 3)] {
            let h = gen_gbonc(&complete_graph(t), k)?;
            if h.n() > max_n {
                continue;
            }
            for seed in 0..seeds {
                out.push(Point { instance: Instance::Hypergraph(h.clone()), seed, algo: Algo::GeneralKcf, k: Some(k) });
            }
        }
        return Ok(out);
    }
    for &n in sizes.iter().filter(|&&n| n <= max_n) {
        for seed in 0..seeds {
            let (instance, algo) = match suite {
                Suite::CircleGrowth => (Instance::Intervals(random_intervals(n, seed)), Algo::CircleCf),
                Suite::GroundedGrowth => (Instance::GroundedLShapes(random_grounded_lshapes(n, seed)), Algo::GroundedCf),
                Suite::LshapesGrowth => (Instance::CornerLShapes(random_corner_lshapes(n, seed)), Algo::Lshapes2cf),
                Suite::FramesGrowth => (Instance::Frames(random_frames(n, seed)), Algo::Frames4cf),
                Suite::StringsGrowth => (Instance::Strings(random_bipartite_strings(n, seed).0), Algo::BoundedChromatic),
                Suite::GeneralKcf => unreachable!(),
            };
            out.push(Point { instance, seed, algo, k: None });
        }
    }
    Ok(out)
}

/// Runs every ladder point, concurrently, and returns rows in ladder order.
pub fn run(suite: Suite, seeds: u64, max_n: usize) -> Result<Vec<Row>> {
    let name = suite.to_possible_value().expect("named suite").get_name().to_string();
    ladder(suite, seeds, max_n)?
        .into_par_iter()
        .map(|p| {
            let start = Instant::now();
            let (c, k) = algo::run(p.algo, &p.instance, p.k, p.seed)?;
            let millis = start.elapsed().as_millis();
            let verified = verify_k_cf(&p.instance.hypergraph()?, &c, k)?;
            Ok(Row {
                suite: name.clone(),
                instance_kind: kind_name(&p.instance).into(),
                n: p.instance.len(),
                seed: p.seed,
                algo: p.algo.name(),
                k,
                colors: c.palette_size(),
                verified,
                millis,
            })
        })
        .collect()
}

pub fn write_csv(rows: &[Row], out: impl std::io::Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(["suite", "instance_kind", "n", "seed", "algo", "k", "colors", "verified", "millis"])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
