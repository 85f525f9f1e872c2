//! CF coloring of circle graphs, given as interval overlap graphs, with
//! O(log n) colors.
//!
//! Each connected component is split into BFS layers from its leftmost
//! interval. Layer `S_{i-1}` is CF-colored with respect to the
//! neighborhoods of `S_i` members, using an auxiliary graph of consecutive
//! crossings between grounded L-shape images as the proper colorer inside
//! the weak-to-CF framework. Layers cycle through three palette blocks.

use crate::consecutive::{color_aux, materialize, Incidence, Parts};
pub use crate::consecutive::{AuxPart, AuxStats, LayerAuxGraph};
use crate::error::Result;
use crate::framework::{k_cf_color_via_weak, FrameworkReport};
use crate::geometry::{grounded_lshapes_intersect, overlap_graph, to_grounded_lshapes, GroundedLShape, Interval};
use crate::hypergraph::{Coloring, Graph, Hypergraph};

/// BFS layers of one connected component; `layers[0] == [root]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerPartition {
    pub root: usize,
    pub layers: Vec<Vec<usize>>,
}

/// One partition per component, roots in increasing left-endpoint order.
pub fn distance_layers(items: &[Interval]) -> Result<Vec<LayerPartition>> {
    let g = overlap_graph(items)?;
    Ok(layers_of(items, &g))
}

pub(crate) fn layers_of(items: &[Interval], g: &Graph) -> Vec<LayerPartition> {
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&i| items[i].a);
    let mut seen = vec![false; items.len()];
    let mut out = Vec::new();
    for root in order {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut layers = vec![vec![root]];
        loop {
            let mut next = Vec::new();
            for &v in layers.last().expect("non-empty") {
                for &u in g.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        next.push(u);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next);
        }
        out.push(LayerPartition { root, layers });
    }
    out
}

/// The G1 ∪ G2 ∪ G3 graph over `k` with respect to `owners`, all given as
/// indices into `images`.
pub fn build_layer_aux_graph(k: &[usize], owners: &[usize], images: &[GroundedLShape]) -> Result<LayerAuxGraph> {
    let mut neighbors = Vec::with_capacity(owners.len());
    for &o in owners {
        let mut list = Vec::new();
        for &w in k {
            if w != o && grounded_lshapes_intersect(&images[o], &images[w])? {
                list.push(w);
            }
        }
        neighbors.push(list);
    }
    let inc = Incidence::new(images, owners.to_vec(), neighbors);
    let mut local_of = vec![usize::MAX; images.len()];
    Ok(materialize(k, &inc.edges(Parts::ALL), &mut local_of))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LayerReport {
    pub framework: FrameworkReport,
    pub aux: AuxStats,
}

/// CF coloring of `prev` with respect to the overlap neighborhoods of the
/// members of `next`; colors are aligned with `prev`.
pub fn layer_feed_cf_coloring(items: &[Interval], prev: &[usize], next: &[usize]) -> Result<(Coloring, LayerReport)> {
    let g = overlap_graph(items)?;
    let images = to_grounded_lshapes(items)?;
    let mut scratch = Scratch::new(items.len());
    let (colors, report) = feed(&g, &images, prev, next, &mut scratch)?;
    Ok((Coloring::from_colors(colors), report))
}

struct Scratch {
    local_of: Vec<usize>,
    alive: Vec<bool>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch { local_of: vec![usize::MAX; n], alive: vec![false; n] }
    }
}

fn feed(
    g: &Graph,
    images: &[GroundedLShape],
    prev: &[usize],
    next: &[usize],
    scratch: &mut Scratch,
) -> Result<(Vec<usize>, LayerReport)> {
    for (i, &v) in prev.iter().enumerate() {
        scratch.local_of[v] = i;
    }
    let mut owners = Vec::new();
    let mut neighbors = Vec::new();
    let mut edges = Vec::new();
    for &o in next {
        let nb: Vec<usize> = g.neighbors(o).iter().copied().filter(|&w| scratch.local_of[w] != usize::MAX).collect();
        if nb.is_empty() {
            continue;
        }
        edges.push(nb.iter().map(|&w| scratch.local_of[w]).collect());
        owners.push(o);
        neighbors.push(nb);
    }
    for &v in prev {
        scratch.local_of[v] = usize::MAX;
    }
    let h = Hypergraph::from_sets(prev.len(), edges)?;
    let mut inc = Incidence::new(images, owners, neighbors);
    let mut aux = AuxStats::default();
    let mut colorer = |_: &Hypergraph, ids: &[usize]| -> Result<Coloring> {
        let verts: Vec<usize> = ids.iter().map(|&l| prev[l]).collect();
        for &v in &verts {
            scratch.alive[v] = true;
        }
        inc.retain(&scratch.alive);
        let graph = materialize(&verts, &inc.edges(Parts::ALL), &mut scratch.local_of);
        let colors = color_aux(&graph, &mut aux);
        for &v in &verts {
            scratch.alive[v] = false;
        }
        Ok(Coloring::from_colors(colors))
    };
    let (c, framework) = k_cf_color_via_weak(&h, &mut colorer, 1)?;
    Ok((c.into_colors(), LayerReport { framework, aux }))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CircleReport {
    pub components: usize,
    pub max_layers: usize,
    /// Size of each of the three palette blocks.
    pub block_size: usize,
    /// Components whose root needed the extra color.
    pub extra_color_uses: usize,
    pub framework_rounds: usize,
    pub max_aux_palette: usize,
    pub aux: AuxStats,
}

/// CF coloring of the overlap graph of `items`.
pub fn cf_color_circle_graph(items: &[Interval]) -> Result<(Coloring, CircleReport)> {
    let g = overlap_graph(items)?;
    let images = to_grounded_lshapes(items)?;
    let parts = layers_of(items, &g);
    let mut scratch = Scratch::new(items.len());
    let mut report = CircleReport { components: parts.len(), block_size: 1, ..Default::default() };
    let mut local = vec![0usize; items.len()];
    for part in &parts {
        report.max_layers = report.max_layers.max(part.layers.len());
        for i in 1..part.layers.len() {
            let prev = &part.layers[i - 1];
            let (colors, layer) = feed(&g, &images, prev, &part.layers[i], &mut scratch)?;
            for (&v, &c) in prev.iter().zip(&colors) {
                local[v] = c;
                report.block_size = report.block_size.max(c + 1);
            }
            report.framework_rounds += layer.framework.rounds();
            report.max_aux_palette = report.max_aux_palette.max(layer.framework.max_aux_palette());
            report.aux.merge(&layer.aux);
        }
    }
    let block = report.block_size;
    let extra = 3 * block;
    let mut colors = vec![0usize; items.len()];
    for part in &parts {
        let s = part.layers.len() - 1;
        for (j, layer) in part.layers.iter().enumerate() {
            for &v in layer {
                colors[v] = (j % 3) * block + if j == s { 0 } else { local[v] };
            }
        }
        let nb = g.neighbors(part.root);
        if !nb.is_empty() && !has_unique_color(nb, &colors) {
            colors[nb[0]] = extra;
            report.extra_color_uses += 1;
        }
    }
    Ok((Coloring::from_colors(colors), report))
}

fn has_unique_color(set: &[usize], colors: &[usize]) -> bool {
    let mut cs: Vec<usize> = set.iter().map(|&v| colors[v]).collect();
    cs.sort_unstable();
    cs.chunk_by(|a, b| a == b).any(|run| run.len() == 1)
}

/// Overlap graph of a fixed interval family with its BFS layering, used to
/// properly color neighborhoods restricted to arbitrary subsets.
pub(crate) struct LayeredOverlap {
    g: Graph,
    images: Vec<GroundedLShape>,
    layer: Vec<usize>,
}

impl LayeredOverlap {
    pub fn new(items: &[Interval]) -> Result<Self> {
        let g = overlap_graph(items)?;
        let images = to_grounded_lshapes(items)?;
        let mut layer = vec![0; items.len()];
        for part in layers_of(items, &g) {
            for (j, l) in part.layers.iter().enumerate() {
                for &v in l {
                    layer[v] = j;
                }
            }
        }
        Ok(LayeredOverlap { g, images, layer })
    }

    /// A coloring of `k` (aligned with it) under which every overlap
    /// neighborhood restricted to `k` with at least two members is not
    /// monochromatic. Returns the colors and the palette size.
    ///
    /// An owner whose restricted neighborhood meets two layers is handled by
    /// the block structure; otherwise its neighbors in a single layer become
    /// an aux-graph hyperedge of that layer.
    pub fn proper_color(&self, k: &[usize], stats: &mut AuxStats) -> (Vec<usize>, usize) {
        let n = self.layer.len();
        let mut in_k = vec![false; n];
        for &v in k {
            in_k[v] = true;
        }
        let depth = k.iter().map(|&v| self.layer[v] + 1).max().unwrap_or(0);
        let mut owners: Vec<Vec<usize>> = vec![Vec::new(); depth];
        let mut lists: Vec<Vec<Vec<usize>>> = vec![Vec::new(); depth];
        for o in 0..n {
            let nb: Vec<usize> = self.g.neighbors(o).iter().copied().filter(|&w| in_k[w]).collect();
            if nb.len() < 2 {
                continue;
            }
            let j = self.layer[o];
            let at = |d: usize| nb.iter().copied().filter(|&w| self.layer[w] == d).collect::<Vec<_>>();
            let lower = if j > 0 { at(j - 1) } else { Vec::new() };
            let (target, list) = if !lower.is_empty() {
                (j - 1, lower)
            } else {
                let same = at(j);
                if same.len() == nb.len() {
                    (j, same)
                } else if same.is_empty() {
                    (j + 1, nb)
                } else {
                    continue;
                }
            };
            if list.len() >= 2 {
                owners[target].push(o);
                lists[target].push(list);
            }
        }
        let mut by_layer: Vec<Vec<usize>> = vec![Vec::new(); depth];
        for &v in k {
            by_layer[self.layer[v]].push(v);
        }
        let mut local_of = vec![usize::MAX; n];
        let mut color_of = vec![0usize; n];
        let mut block = 1;
        for j in 0..depth {
            if owners[j].is_empty() {
                continue;
            }
            let inc = Incidence::new(&self.images, std::mem::take(&mut owners[j]), std::mem::take(&mut lists[j]));
            let aux = materialize(&by_layer[j], &inc.edges(Parts::ALL), &mut local_of);
            let colors = color_aux(&aux, stats);
            for (&v, &c) in by_layer[j].iter().zip(&colors) {
                color_of[v] = c;
                block = block.max(c + 1);
            }
        }
        let colors = k.iter().map(|&v| (self.layer[v] % 3) * block + color_of[v]).collect();
        (colors, 3 * block)
    }
}
