//! Algorithm dispatch shared by `color` and `bench`.

use anyhow::{bail, Result};
use cfcolor::circle::cf_color_circle_graph;
use cfcolor::geometry::{check_general_position, normalize, Instance};
use cfcolor::grounded::cf_color_grounded;
use cfcolor::pattern::{
    cf_color_bounded_chromatic, compute_patterns, k_cf_color_frames, k_cf_color_lshapes, partition_frame,
    partition_lshape, s_cf_color, PartitionedCurve,
};
use cfcolor::weak::k_cf_color_general;
use cfcolor::{degeneracy_color, Coloring};
use clap::ValueEnum;

use crate::io::kind_name;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    CircleCf,
    GroundedCf,
    #[value(name = "lshapes-2cf")]
    Lshapes2cf,
    #[value(name = "frames-4cf")]
    Frames4cf,
    PatternScf,
    BoundedChromatic,
    GeneralKcf,
}

impl Algo {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

/// Colors `inst` and returns the coloring with the `k` it claims.
pub fn run(algo: Algo, inst: &Instance, k: Option<usize>, seed: u64) -> Result<(Coloring, usize)> {
    if !matches!(inst, Instance::Hypergraph(_)) && !check_general_position(inst).ok {
        match inst {
            Instance::Intervals(_) | Instance::GroundedLShapes(_) | Instance::Frames(_) => {
                return run(algo, &normalize(inst), k, seed);
            }
            _ => bail!("{} are not in general position", kind_name(inst)),
        }
    }
    let fixed = |want: usize| -> Result<usize> {
        match k {
            Some(k) if k < want => bail!("{} only guarantees k = {want}", algo.name()),
            _ => Ok(want),
        }
    };
    Ok(match (algo, inst) {
        (Algo::CircleCf, Instance::Intervals(v)) => (cf_color_circle_graph(v)?.0, fixed(1)?),
        (Algo::GroundedCf, Instance::GroundedLShapes(v)) => (cf_color_grounded(v)?.0, fixed(1)?),
        (Algo::Lshapes2cf, Instance::CornerLShapes(v)) => (k_cf_color_lshapes(v)?.0, fixed(2)?),
        (Algo::Frames4cf, Instance::Frames(v)) => (k_cf_color_frames(v)?.0, fixed(4)?),
        (Algo::PatternScf, Instance::CornerLShapes(_) | Instance::Frames(_)) => {
            let curves: Vec<PartitionedCurve> = match inst {
                Instance::CornerLShapes(v) => v.iter().enumerate().map(|(i, l)| partition_lshape(l, i)).collect(),
                Instance::Frames(v) => v.iter().enumerate().map(|(i, f)| partition_frame(f, i)).collect(),
                _ => unreachable!(),
            };
            let fam = compute_patterns(curves.clone(), curves)?;
            let (c, r) = s_cf_color(&fam)?;
            (c, fixed(r.s)?)
        }
        (Algo::BoundedChromatic, Instance::Strings(v)) => {
            let g = inst.graph()?.expect("strings have a graph");
            let classes = degeneracy_color(&g).into_colors();
            (cf_color_bounded_chromatic(v, &classes)?.0, fixed(1)?)
        }
        (Algo::GeneralKcf, _) => {
            let k = k.unwrap_or(2);
            (k_cf_color_general(&inst.hypergraph()?, k, seed)?.0, k)
        }
        _ => bail!("algorithm {} does not accept {} instances", algo.name(), kind_name(inst)),
    })
}
