//! CF coloring of grounded L-shapes with O(log³ n) colors.
//!
//! A vertical line through the median basepoint splits the family. The
//! shapes around the line (the middle family `A2`) get a CF coloring from
//! their own palette block, and the two sides are recursed on with a shared
//! palette, one block per recursion depth.

use crate::circle::LayeredOverlap;
use crate::consecutive::{color_aux, materialize, AuxStats, Incidence, Parts};
use crate::error::{Error, Result};
use crate::framework::k_cf_color_via_weak;
use crate::geometry::{grounded_intersection_graph, grounded_to_overlap_doubled, GroundedLShape, Interval};
use crate::hypergraph::{Coloring, Graph, Hypergraph};

/// CF coloring of the discrete interval hypergraph on `n` points: the
/// median of every range gets color `floor(log2(len))`, then both halves
/// are recursed on.
pub fn discrete_interval_cf(n: usize) -> Coloring {
    let mut colors = vec![0; n];
    let mut stack = vec![(0, n)];
    while let Some((lo, hi)) = stack.pop() {
        if lo >= hi {
            continue;
        }
        let mid = lo + (hi - lo) / 2;
        colors[mid] = (hi - lo).ilog2() as usize;
        stack.push((lo, mid));
        stack.push((mid + 1, hi));
    }
    let palette = if n == 0 { 0 } else { n.ilog2() as usize + 1 };
    Coloring::new(colors, palette).expect("colors below palette")
}

/// Colors a multiset of closed intervals (`a <= b`) with 3 colors so that
/// every covered point lies in an interval whose color is unique there. A
/// greedy minimal cover alternates colors 0 and 1; everything else gets 2.
pub fn dual_interval_proper3(items: &[Interval]) -> Result<Coloring> {
    for (i, it) in items.iter().enumerate() {
        if it.a > it.b {
            return Err(Error::InvalidShape { index: i, reason: "a > b".into() });
        }
    }
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&i| (items[i].a, items[i].b, i));
    let mut colors = vec![2; items.len()];
    let mut covered: Option<i64> = None;
    let mut parity = 0;
    let mut i = 0;
    while i < order.len() {
        let bound = match covered {
            Some(c) if items[order[i]].a <= c => c,
            _ => items[order[i]].a,
        };
        let mut best = order[i];
        while i < order.len() && items[order[i]].a <= bound {
            if items[order[i]].b > items[best].b {
                best = order[i];
            }
            i += 1;
        }
        if covered.map_or(true, |c| items[best].b > c || items[best].a > c) {
            colors[best] = parity;
            parity ^= 1;
            covered = Some(items[best].b);
        }
    }
    Coloring::new(colors, 3)
}

/// The split of a family by a vertical line, all members given as sorted
/// ids into the input.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SplitClassification {
    /// Twice the abscissa of the split line; always odd.
    pub line_x2: i64,
    pub f_l: Vec<usize>,
    pub f_m: Vec<usize>,
    pub f_r: Vec<usize>,
    pub f_m1: Vec<usize>,
    pub f_m2: Vec<usize>,
    pub v_l: Vec<usize>,
    pub v_r: Vec<usize>,
    pub v_l_prime: Vec<usize>,
    pub v_r_prime: Vec<usize>,
    pub i_set: Vec<usize>,
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
    pub a3: Vec<usize>,
}

const SIDE_L: u16 = 1;
const SIDE_M: u16 = 2;
const SIDE_R: u16 = 4;
const ROLE_F1M: u16 = 8;
const ROLE_VL: u16 = 16;
const ROLE_VR: u16 = 32;
const ROLE_VLP: u16 = 64;
const ROLE_VRP: u16 = 128;
const ROLE_I: u16 = 256;

/// Splits `items` at the line just right of the `ceil(n/2)`-th basepoint.
pub fn split_and_classify(items: &[GroundedLShape]) -> Result<SplitClassification> {
    let g = grounded_intersection_graph(items)?;
    let members: Vec<usize> = (0..items.len()).collect();
    Ok(classify(items, &g, &members).0)
}

fn classify(shapes: &[GroundedLShape], g: &Graph, members: &[usize]) -> (SplitClassification, Vec<u16>) {
    let mut role = vec![0u16; shapes.len()];
    let mut cls = SplitClassification::default();
    if members.is_empty() {
        return (cls, role);
    }
    let mut xs: Vec<i64> = members.iter().map(|&v| shapes[v].x).collect();
    xs.sort_unstable();
    let line2 = 2 * xs[members.len().div_ceil(2) - 1] + 1;
    cls.line_x2 = line2;
    for &v in members {
        let s = &shapes[v];
        role[v] = if 2 * s.end() < line2 {
            SIDE_L
        } else if 2 * s.x > line2 {
            SIDE_R
        } else {
            SIDE_M
        };
    }
    let has_nb = |role: &[u16], v: usize, f: &dyn Fn(u16) -> bool| g.neighbors(v).iter().any(|&u| role[u] != 0 && f(role[u]));
    let f1m: Vec<usize> = members.iter().copied().filter(|&v| role[v] == SIDE_M && has_nb(&role, v, &|r| r & SIDE_M != 0)).collect();
    for &v in &f1m {
        role[v] |= ROLE_F1M;
    }
    for &v in members {
        if role[v] != SIDE_M {
            continue;
        }
        for &u in g.neighbors(v) {
            if role[u] & SIDE_L != 0 {
                role[v] |= ROLE_VL;
                role[u] |= ROLE_VLP;
            } else if role[u] & SIDE_R != 0 {
                role[v] |= ROLE_VR;
                role[u] |= ROLE_VRP;
            }
        }
    }
    let outer = |r: u16| r & (SIDE_L | SIDE_R) != 0 && r & (ROLE_VLP | ROLE_VRP) == 0;
    let i_set: Vec<usize> = members.iter().copied().filter(|&v| outer(role[v]) && !has_nb(&role, v, &outer)).collect();
    for &v in &i_set {
        role[v] |= ROLE_I;
    }
    let pick = |f: &dyn Fn(u16) -> bool| members.iter().copied().filter(|&v| f(role[v])).collect::<Vec<_>>();
    cls.f_l = pick(&|r| r & SIDE_L != 0);
    cls.f_m = pick(&|r| r & SIDE_M != 0);
    cls.f_r = pick(&|r| r & SIDE_R != 0);
    cls.f_m1 = f1m;
    cls.f_m2 = pick(&|r| r & SIDE_M != 0 && r & ROLE_F1M == 0);
    cls.v_l = pick(&|r| r & ROLE_VL != 0);
    cls.v_r = pick(&|r| r & ROLE_VR != 0);
    cls.v_l_prime = pick(&|r| r & ROLE_VLP != 0);
    cls.v_r_prime = pick(&|r| r & ROLE_VRP != 0);
    cls.i_set = i_set;
    cls.a1 = pick(&|r| r & SIDE_L != 0 && r & (ROLE_VLP | ROLE_I) == 0);
    cls.a3 = pick(&|r| r & SIDE_R != 0 && r & (ROLE_VRP | ROLE_I) == 0);
    cls.a2 = pick(&|r| r & SIDE_M != 0 || r & (ROLE_VLP | ROLE_VRP | ROLE_I) != 0);
    (cls, role)
}

/// Palettes of the intermediate colorings of one middle family, maximized
/// over framework rounds where a coloring is recomputed per round.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MiddlePalettes {
    pub f1: usize,
    pub f2: usize,
    pub f3: usize,
    pub f4: usize,
    pub f5: usize,
    pub f6: usize,
    pub c1: usize,
    pub c2: usize,
}

/// CF coloring of the middle family `A2`: `c1` on `X = V'_L ∪ F¹_M ∪ V'_R`,
/// `c2` on `F²_M` after it, and one last color for `I`. Returns
/// `(id, color)` pairs and the palette size.
fn color_middle(
    shapes: &[GroundedLShape],
    g: &Graph,
    cls: &SplitClassification,
    role: &[u16],
    aux: &mut AuxStats,
    pal: &mut MiddlePalettes,
) -> Result<(Vec<(usize, usize)>, usize)> {
    let n = shapes.len();
    let nb = |v: usize| g.neighbors(v).iter().copied().filter(move |&u| role[u] != 0);

    // Nesting order of F²_M, outermost first.
    let mut nest = cls.f_m2.clone();
    nest.sort_by_key(|&v| shapes[v].x);
    for w in nest.windows(2) {
        if shapes[w[1]].depth >= shapes[w[0]].depth {
            return Err(Error::Invariant(format!("shapes {} and {} of the middle family are not nested", w[0], w[1])));
        }
    }
    let mut pos_nest = vec![usize::MAX; n];
    for (i, &v) in nest.iter().enumerate() {
        pos_nest[v] = i;
    }
    let vl_nest: Vec<usize> = nest.iter().copied().filter(|&v| role[v] & ROLE_VL != 0).collect();
    let mut pos_vl = vec![usize::MAX; n];
    for (i, &v) in vl_nest.iter().enumerate() {
        pos_vl[v] = i;
    }
    let mut range_vl = vec![Interval::new(0, 0); n];
    for &l in &cls.v_l_prime {
        let hit: Vec<usize> = nb(l).filter(|&u| role[u] & ROLE_VL != 0).collect();
        range_vl[l] = contiguous(hit.iter().map(|&u| pos_vl[u]), l)?;
        contiguous(hit.iter().map(|&u| pos_nest[u]), l)?;
    }

    // c2 = f5 × f6 on F²_M, indexed by nesting position.
    let mut c2 = Vec::new();
    if !nest.is_empty() {
        let f6 = discrete_interval_cf(nest.len());
        let edges: Vec<Vec<usize>> = cls.v_r_prime.iter().map(|&r| nb(r).filter(|&u| pos_nest[u] != usize::MAX).map(|u| pos_nest[u]).collect()).collect();
        let lists: Vec<Vec<usize>> = cls.v_r_prime.iter().map(|&r| nb(r).filter(|&u| pos_nest[u] != usize::MAX).collect()).collect();
        let h5 = Hypergraph::from_sets(nest.len(), edges.into_iter().filter(|e| !e.is_empty()).collect())?;
        let mut inc = Incidence::new(shapes, cls.v_r_prime.clone(), lists);
        let mut alive = vec![false; n];
        let mut local_of = vec![usize::MAX; n];
        let mut colorer = |_: &Hypergraph, ids: &[usize]| -> Result<Coloring> {
            let verts: Vec<usize> = ids.iter().map(|&i| nest[i]).collect();
            for &v in &verts {
                alive[v] = true;
            }
            inc.retain(&alive);
            let graph = materialize(&verts, &inc.edges(Parts { g1: true, g2: false, g3: false }), &mut local_of);
            let colors = color_aux(&graph, aux);
            for &v in &verts {
                alive[v] = false;
            }
            Ok(Coloring::from_colors(colors))
        };
        let (f5, _) = k_cf_color_via_weak(&h5, &mut colorer, 1)?;
        pal.f5 = pal.f5.max(f5.palette_size());
        pal.f6 = pal.f6.max(f6.palette_size());
        let pairs: Vec<(usize, usize)> = (0..nest.len()).map(|i| (f5.color(i), f6.color(i))).collect();
        c2 = compress(&pairs);
    }
    let p2 = c2.iter().map(|&c| c + 1).max().unwrap_or(0);

    // c1 on X with respect to V_L ∪ V_R ∪ F¹_M ∪ I.
    let x: Vec<usize> = cls.a2.iter().copied().filter(|&v| role[v] & (ROLE_VLP | ROLE_VRP | ROLE_F1M) != 0).collect();
    let mut c1 = Vec::new();
    if !x.is_empty() {
        let mut x_local = vec![usize::MAX; n];
        for (i, &v) in x.iter().enumerate() {
            x_local[v] = i;
        }
        let in_x = |u: usize| x_local[u] != usize::MAX;
        let owners: Vec<usize> = cls.a2.iter().copied().filter(|&v| role[v] & (ROLE_VL | ROLE_VR | ROLE_F1M | ROLE_I) != 0).collect();
        let edges: Vec<Vec<usize>> = owners.iter().map(|&o| nb(o).filter(|&u| in_x(u)).map(|u| x_local[u]).collect::<Vec<_>>()).filter(|e| !e.is_empty()).collect();
        let h1 = Hypergraph::from_sets(x.len(), edges)?;

        let f1_owners: Vec<usize> = owners.iter().copied().filter(|&o| role[o] & (ROLE_I | ROLE_F1M) != 0).collect();
        let f1_lists: Vec<Vec<usize>> = f1_owners.iter().map(|&o| nb(o).filter(|&u| in_x(u)).collect()).collect();
        let f1m_shapes: Vec<GroundedLShape> = cls.f_m1.iter().map(|&v| shapes[v]).collect();
        let layered = LayeredOverlap::new(&grounded_to_overlap_doubled(&f1m_shapes, cls.line_x2)?)?;
        let mut f1m_local = vec![usize::MAX; n];
        for (i, &v) in cls.f_m1.iter().enumerate() {
            f1m_local[v] = i;
        }
        let f3_lists: Vec<Vec<usize>> = cls.v_r.iter().map(|&o| nb(o).filter(|&u| role[u] & ROLE_VRP != 0).collect()).collect();
        let mut f3_inc = Incidence::new(shapes, cls.v_r.clone(), f3_lists);
        let mut alive = vec![false; n];
        let mut local_of = vec![usize::MAX; n];

        let mut colorer = |_: &Hypergraph, ids: &[usize]| -> Result<Coloring> {
            let verts: Vec<usize> = ids.iter().map(|&i| x[i]).collect();
            for &v in &verts {
                alive[v] = true;
            }
            let mut tuples = vec![[0usize; 4]; verts.len()];

            let mut owners1 = Vec::new();
            let mut lists1 = Vec::new();
            for (&o, list) in f1_owners.iter().zip(&f1_lists) {
                let live: Vec<usize> = list.iter().copied().filter(|&u| alive[u]).collect();
                if live.len() < 2 || (role[o] & ROLE_F1M != 0 && live.iter().any(|&u| role[u] & ROLE_F1M != 0)) {
                    continue;
                }
                owners1.push(o);
                lists1.push(live);
            }
            let inc1 = Incidence::new(shapes, owners1, lists1);
            let f1 = color_aux(&materialize(&verts, &inc1.edges(Parts::ALL), &mut local_of), aux);
            let p1 = f1.iter().map(|&c| c + 1).max().unwrap_or(0);

            let (m_idx, m_ids): (Vec<usize>, Vec<usize>) =
                verts.iter().enumerate().filter(|&(_, &v)| f1m_local[v] != usize::MAX).map(|(i, &v)| (i, f1m_local[v])).unzip();
            let (f2, p2) = layered.proper_color(&m_ids, aux);

            let r_idx: Vec<usize> = (0..verts.len()).filter(|&i| role[verts[i]] & ROLE_VRP != 0).collect();
            let r_verts: Vec<usize> = r_idx.iter().map(|&i| verts[i]).collect();
            f3_inc.retain(&alive);
            let f3 = color_aux(&materialize(&r_verts, &f3_inc.edges(Parts { g1: false, g2: true, g3: false }), &mut local_of), aux);
            let p3 = f3.iter().map(|&c| c + 1).max().unwrap_or(0);

            let l_idx: Vec<usize> = (0..verts.len()).filter(|&i| role[verts[i]] & ROLE_VLP != 0).collect();
            let f4 = dual_interval_proper3(&l_idx.iter().map(|&i| range_vl[verts[i]]).collect::<Vec<_>>())?;

            for (i, t) in tuples.iter_mut().enumerate() {
                *t = [f1[i], p2, p3, 3];
            }
            for (&i, &c) in m_idx.iter().zip(&f2) {
                tuples[i][1] = c;
            }
            for (&i, &c) in r_idx.iter().zip(&f3) {
                tuples[i][2] = c;
            }
            for (&i, &c) in l_idx.iter().zip(f4.colors()) {
                tuples[i][3] = c;
            }
            pal.f1 = pal.f1.max(p1);
            pal.f2 = pal.f2.max(p2);
            pal.f3 = pal.f3.max(p3);
            pal.f4 = pal.f4.max(f4.distinct_colors());
            for &v in &verts {
                alive[v] = false;
            }
            Ok(Coloring::from_colors(compress(&tuples)))
        };
        let (c, _) = k_cf_color_via_weak(&h1, &mut colorer, 1)?;
        c1 = c.into_colors();
    }
    let p1 = c1.iter().map(|&c| c + 1).max().unwrap_or(0);
    pal.c1 = pal.c1.max(p1);
    pal.c2 = pal.c2.max(p2);

    let mut out = Vec::with_capacity(cls.a2.len());
    out.extend(x.iter().zip(&c1).map(|(&v, &c)| (v, c)));
    out.extend(nest.iter().zip(&c2).map(|(&v, &c)| (v, p1 + c)));
    out.extend(cls.i_set.iter().map(|&v| (v, p1 + p2)));
    let palette = p1 + p2 + usize::from(!cls.i_set.is_empty());
    Ok((out, palette))
}

/// Checks that `positions` form a contiguous run and returns it.
fn contiguous(positions: impl Iterator<Item = usize>, shape: usize) -> Result<Interval> {
    let mut p: Vec<usize> = positions.collect();
    p.sort_unstable();
    match (p.first(), p.last()) {
        (Some(&lo), Some(&hi)) if hi - lo + 1 == p.len() => Ok(Interval::new(lo as i64, hi as i64)),
        _ => Err(Error::Invariant(format!("shape {shape} meets a non-contiguous run of the nested family"))),
    }
}

/// Dense relabeling of arbitrary ordered keys.
fn compress<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted = keys.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("present")).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundedReport {
    /// Shapes isolated in the input, all colored 0.
    pub isolated: usize,
    /// Shapes that became isolated inside a recursive subfamily.
    pub newly_isolated: usize,
    pub splits: usize,
    pub depth: usize,
    /// Palette of the middle family at each recursion depth.
    pub blocks: Vec<usize>,
    /// Intersecting pairs across `A1 × A3`, summed over all splits.
    pub separation_violations: usize,
    pub palettes: MiddlePalettes,
    pub aux: AuxStats,
}

/// CF coloring of the intersection graph of `items`.
pub fn cf_color_grounded(items: &[GroundedLShape]) -> Result<(Coloring, GroundedReport)> {
    let g = grounded_intersection_graph(items)?;
    let n = items.len();
    let mut report = GroundedReport::default();
    let mut local = vec![0usize; n];
    let mut depth_of = vec![usize::MAX; n];
    let members: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 0).collect();
    report.isolated = n - members.len();
    let mut in_family = vec![false; n];
    let mut stack = vec![(members, 0usize)];
    while let Some((family, d)) = stack.pop() {
        for &v in &family {
            in_family[v] = true;
        }
        let (keep, lone): (Vec<usize>, Vec<usize>) = family.iter().partition(|&&v| g.neighbors(v).iter().any(|&u| in_family[u]));
        for &v in &family {
            in_family[v] = false;
        }
        report.newly_isolated += lone.len();
        if keep.is_empty() {
            continue;
        }
        let (cls, role) = classify(items, &g, &keep);
        report.splits += 1;
        report.depth = report.depth.max(d + 1);
        for &a in &cls.a1 {
            report.separation_violations += g.neighbors(a).iter().filter(|&&u| role[u] & SIDE_R != 0 && role[u] & (ROLE_VRP | ROLE_I) == 0).count();
        }
        let (colors, palette) = color_middle(items, &g, &cls, &role, &mut report.aux, &mut report.palettes)?;
        if report.blocks.len() <= d {
            report.blocks.resize(d + 1, 0);
        }
        report.blocks[d] = report.blocks[d].max(palette);
        for (v, c) in colors {
            local[v] = c;
            depth_of[v] = d;
        }
        stack.push((cls.a3, d + 1));
        stack.push((cls.a1, d + 1));
    }
    let mut offset = vec![1usize; report.blocks.len() + 1];
    for d in 0..report.blocks.len() {
        offset[d + 1] = offset[d] + report.blocks[d];
    }
    let colors: Vec<usize> = (0..n).map(|v| if depth_of[v] == usize::MAX { 0 } else { offset[depth_of[v]] + local[v] }).collect();
    let palette = if n == 0 { 0 } else { offset[report.blocks.len()] };
    Ok((Coloring::new(colors, palette)?, report))
}
