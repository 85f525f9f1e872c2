//! Auxiliary graphs from consecutive crossings along grounded L-shapes.
//!
//! For an owner shape `o` and a vertex set `K`, the left neighbors of `o`
//! are the members of `K` whose horizontal part crosses the vertical part of
//! `o`; the right neighbors are those whose vertical part crosses the
//! horizontal part of `o`. Left neighbors consecutive along `v(o)` give
//! G1 edges, right neighbors consecutive along `h(o)` give G2 edges, and an
//! owner with exactly one left and one right neighbor gives a G3 edge.

use crate::geometry::GroundedLShape;
use crate::hypergraph::{degeneracy_color_with_order, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AuxPart {
    G1,
    G2,
    G3,
}

/// The union graph `G1 ∪ G2 ∪ G3` over `vertices`, edges given by local
/// indices into `vertices` and tagged with their part.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LayerAuxGraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize, AuxPart)>,
}

impl LayerAuxGraph {
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.vertices.len(), self.edges.iter().map(|&(u, v, _)| (u, v))).expect("local edges")
    }

    pub fn part_graph(&self, part: AuxPart) -> Graph {
        let edges = self.edges.iter().filter(|e| e.2 == part).map(|&(u, v, _)| (u, v));
        Graph::from_edges(self.vertices.len(), edges).expect("local edges")
    }
}

/// Which parts to materialize.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Parts {
    pub g1: bool,
    pub g2: bool,
    pub g3: bool,
}

impl Parts {
    pub const ALL: Parts = Parts { g1: true, g2: true, g3: true };
}

/// Left and right neighbor lists of every owner, in crossing order.
#[derive(Debug, Clone, Default)]
pub(crate) struct Incidence {
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
}

impl Incidence {
    /// `neighbors[i]` must list shapes intersecting `owners[i]`.
    pub fn new(shapes: &[GroundedLShape], owners: Vec<usize>, neighbors: Vec<Vec<usize>>) -> Incidence {
        let mut left = Vec::with_capacity(owners.len());
        let mut right = Vec::with_capacity(owners.len());
        for (&o, list) in owners.iter().zip(neighbors) {
            let ox = shapes[o].x;
            let (mut l, mut r): (Vec<usize>, Vec<usize>) = list.into_iter().partition(|&w| shapes[w].x < ox);
            l.sort_by_key(|&w| shapes[w].depth);
            r.sort_by_key(|&w| shapes[w].x);
            left.push(l);
            right.push(r);
        }
        Incidence { left, right }
    }

    /// Drops every listed vertex for which `alive` is false.
    pub fn retain(&mut self, alive: &[bool]) {
        for list in self.left.iter_mut().chain(self.right.iter_mut()) {
            list.retain(|&w| alive[w]);
        }
    }

    /// Aux edges over global ids, assuming the lists hold only live vertices.
    pub fn edges(&self, parts: Parts) -> Vec<(usize, usize, AuxPart)> {
        let mut out = Vec::new();
        for (l, r) in self.left.iter().zip(&self.right) {
            if parts.g1 {
                out.extend(l.windows(2).map(|w| (w[0], w[1], AuxPart::G1)));
            }
            if parts.g2 {
                out.extend(r.windows(2).map(|w| (w[0], w[1], AuxPart::G2)));
            }
            if parts.g3 && l.len() == 1 && r.len() == 1 {
                out.push((l[0], r[0], AuxPart::G3));
            }
        }
        out
    }
}

/// Counters for the structural checks run on every materialized aux graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuxStats {
    pub graphs: usize,
    pub max_palette: usize,
    pub max_degeneracy: usize,
    /// G1 or G2 graphs with more than `3v - 6` edges.
    pub planar_violations: usize,
    pub max_g3_degree: usize,
    /// G3 graphs with more than `8 v (log2 v + 1)` edges.
    pub g3_density_violations: usize,
}

impl AuxStats {
    pub fn merge(&mut self, o: &AuxStats) {
        self.graphs += o.graphs;
        self.max_palette = self.max_palette.max(o.max_palette);
        self.max_degeneracy = self.max_degeneracy.max(o.max_degeneracy);
        self.planar_violations += o.planar_violations;
        self.max_g3_degree = self.max_g3_degree.max(o.max_g3_degree);
        self.g3_density_violations += o.g3_density_violations;
    }
}

pub(crate) fn planar_edge_bound(v: usize) -> usize {
    if v >= 3 {
        3 * v - 6
    } else {
        v * v.saturating_sub(1) / 2
    }
}

/// Builds the aux graph on `vertices` from edges over global ids.
/// `local_of` is scratch indexed by global id, all `usize::MAX` on entry and
/// on exit.
pub(crate) fn materialize(vertices: &[usize], global_edges: &[(usize, usize, AuxPart)], local_of: &mut [usize]) -> LayerAuxGraph {
    for (i, &v) in vertices.iter().enumerate() {
        local_of[v] = i;
    }
    let mut edges: Vec<(usize, usize, AuxPart)> = global_edges
        .iter()
        .filter(|e| e.0 != e.1)
        .map(|&(a, b, p)| {
            let (x, y) = (local_of[a], local_of[b]);
            (x.min(y), x.max(y), p)
        })
        .collect();
    edges.sort_unstable_by_key(|&(a, b, p)| (a, b, p as u8));
    edges.dedup();
    for &v in vertices {
        local_of[v] = usize::MAX;
    }
    LayerAuxGraph { vertices: vertices.to_vec(), edges }
}

/// Degeneracy-colors the union graph and records the structural checks.
/// Colors are aligned with `aux.vertices`.
pub(crate) fn color_aux(aux: &LayerAuxGraph, stats: &mut AuxStats) -> Vec<usize> {
    let (coloring, order) = degeneracy_color_with_order(&aux.graph());
    let v = aux.vertices.len();
    stats.graphs += 1;
    stats.max_palette = stats.max_palette.max(coloring.distinct_colors());
    stats.max_degeneracy = stats.max_degeneracy.max(order.degeneracy);
    for part in [AuxPart::G1, AuxPart::G2] {
        if aux.part_graph(part).num_edges() > planar_edge_bound(v) {
            stats.planar_violations += 1;
        }
    }
    let g3 = aux.part_graph(AuxPart::G3);
    stats.max_g3_degree = stats.max_g3_degree.max((0..v).map(|u| g3.degree(u)).max().unwrap_or(0));
    if v > 0 && g3.num_edges() as f64 > 8.0 * v as f64 * ((v as f64).log2() + 1.0) {
        stats.g3_density_violations += 1;
    }
    coloring.into_colors()
}
