//! Extremal constructions and random instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{
    check_general_position, normalize, CornerLShape, Frame, GroundedLShape, Instance, Interval, Point, Polyline,
};
use crate::hypergraph::{neighborhood_hypergraph, Graph, Hypergraph};

/// Depth of the nesting tree in [`gen_circle_lower_bound`].
fn lower_bound_depth(t: usize, k: usize) -> Result<u32> {
    if t == 0 || k == 0 {
        return Err(Error::InvalidParameter("t and k must be at least 1".into()));
    }
    let d = k * (t - 1) + 1;
    if d > 24 {
        return Err(Error::InvalidParameter(format!("tree depth {d} is too large")));
    }
    Ok(d as u32)
}

/// Number of tree intervals at the front of [`gen_circle_lower_bound`].
pub fn circle_lower_bound_tree_len(t: usize, k: usize) -> Result<usize> {
    Ok((1usize << lower_bound_depth(t, k)?) - 1)
}

/// A complete binary nesting tree of depth `k(t-1)+1` (heap order, root
/// first) followed by a nested chain with one left endpoint in each leaf of
/// the tree, outermost first. Every k-CF coloring of its overlap graph
/// needs at least `t` colors.
pub fn gen_circle_lower_bound(t: usize, k: usize) -> Vec<Interval> {
    try_gen_circle_lower_bound(t, k).expect("valid parameters")
}

pub fn try_gen_circle_lower_bound(t: usize, k: usize) -> Result<Vec<Interval>> {
    let d = lower_bound_depth(t, k)? as i64;
    let leaves = 1i64 << (d - 1);
    let x = |p: i64| p * (2 * d + 4);
    let mut out = Vec::new();
    for level in 0..d {
        let height = d - 1 - level;
        let span = 1i64 << height;
        for node in 0..(1i64 << level) {
            let (p, q) = (node * span, node * span + span - 1);
            out.push(Interval::new(x(p) - height, x(q) + 2 + height));
        }
    }
    let right = x(leaves - 1) + 2 + d + 1;
    for i in 1..=leaves {
        out.push(Interval::new(x(i - 1) + 1, right + (leaves - i)));
    }
    Ok(out)
}

/// `m` pairwise crossing frames plus, for every pair, a small frame around
/// one of its crossing points that meets exactly that pair.
pub fn gen_frames_clique_gadget(m: usize) -> Result<Vec<Frame>> {
    if m < 2 {
        return Err(Error::InvalidParameter("m must be at least 2".into()));
    }
    let mi = m as i64;
    let pairs = mi * (mi - 1) / 2;
    let s = 2 * (pairs + 2);
    let mut out: Vec<Frame> = (0..mi).map(|i| Frame::new(s * i, -s * i, s * (i + mi + 1), s * (mi + 1 - i))).collect();
    let mut q = 1;
    for i in 0..mi {
        for j in i + 1..mi {
            let (px, py) = (s * j, -s * i);
            out.push(Frame::new(px - q, py - q, px + q, py + q));
            q += 1;
        }
    }
    Ok(out)
}

/// All `r`-subsets of `0..t` in lexicographic order.
pub fn subsets(t: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, t: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..t {
            if t - v < r - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, t, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, t, r, &mut Vec::new(), &mut out);
    out
}

/// `g` plus one new vertex per (k+1)-subset of its vertices, adjacent to
/// exactly that subset. New vertices follow the base vertices in
/// lexicographic subset order.
pub fn gbonc_graph(g: &Graph, k: usize) -> Result<Graph> {
    let t = g.n();
    if k == 0 || t < k + 2 {
        return Err(Error::InvalidParameter(format!("need t >= k + 2, got t = {t}, k = {k}")));
    }
    let subs = subsets(t, k + 1);
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for (q, s) in subs.iter().enumerate() {
        edges.extend(s.iter().map(|&u| (t + q, u)));
    }
    Graph::from_edges(t + subs.len(), edges)
}

/// Neighborhood hypergraph of [`gbonc_graph`]; any k-CF coloring of it
/// needs at least `t / k` colors.
pub fn gen_gbonc(g: &Graph, k: usize) -> Result<Hypergraph> {
    Ok(neighborhood_hypergraph(&gbonc_graph(g, k)?))
}

pub fn complete_graph(t: usize) -> Graph {
    Graph::from_edges(t, (0..t).flat_map(|u| (u + 1..t).map(move |v| (u, v)))).expect("valid edges")
}

/// The complete-base instance with its interval realization: `nested[i]`
/// are the nested base intervals and `filaments[q]` the disjoint interval
/// standing for the q-th (k+1)-subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filaments {
    pub hypergraph: Hypergraph,
    pub nested: Vec<Interval>,
    pub filaments: Vec<Interval>,
}

pub fn gen_interval_filaments(t: usize, k: usize) -> Result<Filaments> {
    let hypergraph = gen_gbonc(&complete_graph(t), k)?;
    let q = subsets(t, k + 1).len() as i64;
    let nested = (0..t as i64).map(|i| Interval::new(-i, 3 * q + 1 + i)).collect();
    let filaments = (0..q).map(|p| Interval::new(3 * p + 1, 3 * p + 2)).collect();
    Ok(Filaments { hypergraph, nested, filaments })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Log-uniform integer in `[1, max]`.
fn log_uniform(r: &mut ChaCha8Rng, max: i64) -> i64 {
    let u: f64 = r.gen();
    ((u * (max as f64).ln()).exp() as i64).clamp(1, max)
}

/// Intervals with uniform left endpoints in `[0, 4n)` and log-uniform
/// lengths, normalized to distinct endpoints.
pub fn random_intervals(n: usize, seed: u64) -> Vec<Interval> {
    let mut r = rng(seed);
    let span = 4 * n.max(1) as i64;
    let items = (0..n)
        .map(|_| {
            let a = r.gen_range(0..span);
            Interval::new(a, a + log_uniform(&mut r, span))
        })
        .collect();
    match normalize(&Instance::Intervals(items)) {
        Instance::Intervals(v) => v,
        _ => unreachable!(),
    }
}

pub fn random_grounded_lshapes(n: usize, seed: u64) -> Vec<GroundedLShape> {
    let mut r = rng(seed);
    let span = 4 * n.max(1) as i64;
    let items = (0..n)
        .map(|_| {
            let x = r.gen_range(0..span);
            let depth = r.gen_range(1..=span);
            GroundedLShape::new(x, depth, log_uniform(&mut r, span))
        })
        .collect();
    match normalize(&Instance::GroundedLShapes(items)) {
        Instance::GroundedLShapes(v) => v,
        _ => unreachable!(),
    }
}

pub fn random_frames(n: usize, seed: u64) -> Vec<Frame> {
    let mut r = rng(seed);
    let span = 8 * n.max(1) as i64;
    let items = (0..n)
        .map(|_| {
            let (x, y) = (r.gen_range(0..span), r.gen_range(0..span));
            let (w, h) = (log_uniform(&mut r, span / 4), log_uniform(&mut r, span / 4));
            Frame::new(x, y, x + w, y + h)
        })
        .collect();
    match normalize(&Instance::Frames(items)) {
        Instance::Frames(v) => v,
        _ => unreachable!(),
    }
}

pub fn random_corner_lshapes(n: usize, seed: u64) -> Vec<CornerLShape> {
    let mut r = rng(seed);
    let span = 8 * n.max(1) as i64;
    let items = (0..n)
        .map(|_| {
            let (x, y) = (r.gen_range(0..span), r.gen_range(0..span));
            CornerLShape::new(x, y, log_uniform(&mut r, span / 4), log_uniform(&mut r, span / 4))
        })
        .collect();
    match normalize(&Instance::CornerLShapes(items)) {
        Instance::CornerLShapes(v) => v,
        _ => unreachable!(),
    }
}

/// Random hypergraph with `m` attempted edges of size `2..=max_edge`, never
/// letting a vertex exceed `max_degree`.
pub fn random_hypergraph(n: usize, m: usize, max_edge: usize, max_degree: usize, seed: u64) -> Hypergraph {
    let mut r = rng(seed);
    let mut deg = vec![0usize; n];
    let mut edges = Vec::new();
    for _ in 0..m {
        let free: Vec<usize> = (0..n).filter(|&v| deg[v] < max_degree).collect();
        if free.len() < 2 {
            break;
        }
        let size = r.gen_range(2..=max_edge.max(2)).min(free.len());
        let mut e: Vec<usize> = rand::seq::index::sample(&mut r, free.len(), size).into_iter().map(|i| free[i]).collect();
        e.sort_unstable();
        for &v in &e {
            deg[v] += 1;
        }
        edges.push(e);
    }
    Hypergraph::new(n, edges).expect("valid edges")
}

/// Two classes of strings: class 0 are x-monotone polylines in disjoint
/// horizontal bands, class 1 are y-monotone polylines in disjoint vertical
/// bands, so each class is pairwise disjoint. Returns the strings and their
/// classes.
pub fn random_bipartite_strings(n: usize, seed: u64) -> (Vec<Polyline>, Vec<usize>) {
    let n0 = n / 2;
    let n1 = n - n0;
    for attempt in 0u64.. {
        let mut r = rng(seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
        let mut strings = Vec::with_capacity(n);
        let mut classes = Vec::with_capacity(n);
        for (class, count, other) in [(0usize, n0, n1), (1, n1, n0)] {
            for band in 0..count as i64 {
                let along = other.max(1) as i64;
                let start = r.gen_range(0..along);
                let len = log_uniform(&mut r, along - start).max(1);
                let steps = (2 * len).clamp(1, 24);
                let lo = start * BAND;
                let hi = (start + len) * BAND;
                let mut pts = Vec::new();
                for s in 0..=steps {
                    let t = lo + (hi - lo) * s / steps;
                    let off = r.gen_range(1..BAND / 2);
                    let (u, v) = (2 * t + class as i64, 2 * (band * BAND + off) + 1 - class as i64);
                    pts.push(if class == 0 { Point::new(u, v) } else { Point::new(v, u) });
                }
                pts.dedup();
                strings.push(Polyline::new(pts));
                classes.push(class);
            }
        }
        if check_general_position(&Instance::Strings(strings.clone())).ok {
            return (strings, classes);
        }
    }
    unreachable!()
}

const BAND: i64 = 1 << 12;
