//! k-CF colorings from intersection patterns of partitioned curves.
//!
//! Every curve is split into `t` slots. A pair of distinct curves gives the
//! pattern `(i, j)` when slot `i` of the vertex-side curve crosses slot `j`
//! of the hyperedge-side curve. Slot-`i` parts that are consecutive along
//! some slot-`j` part become adjacent in an auxiliary graph whose proper
//! colorings are (s+1)-weak, and the weak-to-CF framework does the rest.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::framework::k_cf_color_via_weak;
use crate::geometry::{bbox_pairs, polyline_crossings, strings_intersection_graph, BBox, CornerLShape, Frame, Polyline};
use crate::hypergraph::{degeneracy_color_with_order, Coloring, Graph, Hypergraph};

/// A curve split into `parts.len()` slots; `id` identifies the curve when
/// it appears on both sides of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedCurve {
    pub id: usize,
    pub parts: Vec<Option<Polyline>>,
}

impl PartitionedCurve {
    fn bbox(&self) -> Option<BBox> {
        self.parts.iter().flatten().map(Polyline::bbox).reduce(|a, b| BBox {
            x1: a.x1.min(b.x1),
            y1: a.y1.min(b.y1),
            x2: a.x2.max(b.x2),
            y2: a.y2.max(b.y2),
        })
    }
}

/// Slots (vertical, horizontal).
pub fn partition_lshape(l: &CornerLShape, id: usize) -> PartitionedCurve {
    PartitionedCurve { id, parts: vec![Some(l.vertical()), Some(l.horizontal())] }
}

/// Slots (left, bottom, right, top).
pub fn partition_frame(f: &Frame, id: usize) -> PartitionedCurve {
    PartitionedCurve { id, parts: f.sides().into_iter().map(Some).collect() }
}

/// The patterns realized by `f × c` together with what the weak colorings
/// need: the neighborhoods of `c` curves and, per slot of every `c` curve,
/// the `(f index, slot)` crossings in order along that slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternFamily {
    pub f: Vec<PartitionedCurve>,
    pub c: Vec<PartitionedCurve>,
    pub patterns: Vec<(usize, usize)>,
    pub m: usize,
    /// Fewest patterns given by an intersecting pair.
    pub l: usize,
    pub s: usize,
    /// Most patterns given by a single `c` curve.
    pub max_curve_patterns: usize,
    neighbors: Vec<Vec<usize>>,
    along: Vec<Vec<Vec<(usize, usize)>>>,
}

impl PatternFamily {
    /// Whether every intersecting pair gives at least `l` patterns and
    /// every `c` curve at most `l * s`.
    pub fn satisfies(&self, l: usize, s: usize) -> bool {
        self.l >= l && self.max_curve_patterns <= l * s
    }

    /// The hypergraph on `f` with one hyperedge per `c` curve meeting it.
    pub fn hypergraph(&self) -> Hypergraph {
        let edges = self.neighbors.iter().filter(|e| !e.is_empty()).cloned().collect();
        Hypergraph::new(self.f.len(), edges).expect("sorted neighborhoods")
    }
}

fn slot_count(curves: &[&PartitionedCurve]) -> Result<usize> {
    let t = curves.first().map_or(0, |c| c.parts.len());
    for (i, c) in curves.iter().enumerate() {
        if c.parts.len() != t {
            return Err(Error::InvalidParameter(format!("curve {i} has {} slots, expected {t}", c.parts.len())));
        }
        for p in c.parts.iter().flatten() {
            p.validate(c.id)?;
        }
    }
    Ok(t)
}

fn check_partition(curves: &[&PartitionedCurve], t: usize) -> Result<()> {
    for c in curves {
        for i in 0..t {
            for j in i + 1..t {
                if let (Some(p), Some(q)) = (&c.parts[i], &c.parts[j]) {
                    // Parts of one curve may share endpoints, so only a clean
                    // transversal crossing counts against them.
                    if matches!(polyline_crossings(p, q), Ok(v) if !v.is_empty()) {
                        return Err(Error::Partition { a: c.id, b: c.id, reason: format!("slots {i} and {j} cross") });
                    }
                }
            }
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    let unique: Vec<&PartitionedCurve> = curves.iter().copied().filter(|c| seen.insert(c.id)).collect();
    for i in 0..t {
        let parts: Vec<(usize, &Polyline)> = unique.iter().filter_map(|c| c.parts[i].as_ref().map(|p| (c.id, p))).collect();
        let boxes: Vec<BBox> = parts.iter().map(|(_, p)| p.bbox()).collect();
        for (a, b) in bbox_pairs(&boxes) {
            let (ida, pa) = parts[a];
            let (idb, pb) = parts[b];
            match polyline_crossings(pa, pb) {
                Ok(v) if v.is_empty() => {}
                _ => return Err(Error::Partition { a: ida, b: idb, reason: format!("slot {i} parts meet") }),
            }
        }
    }
    Ok(())
}

/// Computes all patterns of `f × c`, validating the partition conditions.
pub fn compute_patterns(f: Vec<PartitionedCurve>, c: Vec<PartitionedCurve>) -> Result<PatternFamily> {
    let all: Vec<&PartitionedCurve> = f.iter().chain(&c).collect();
    let t = slot_count(&all)?;
    check_partition(&all, t)?;
    let nf = f.len();
    let boxes: Vec<BBox> = all.iter().map(|x| x.bbox().unwrap_or(BBox { x1: 0, y1: 0, x2: -1, y2: -1 })).collect();
    let mut pair_patterns = Vec::new();
    let mut curve_patterns: Vec<Vec<(usize, usize)>> = vec![Vec::new(); c.len()];
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); c.len()];
    let mut along: Vec<Vec<Vec<(usize, Ratio<i128>, usize)>>> = vec![vec![Vec::new(); t]; c.len()];
    let mut patterns = Vec::new();
    for (a, b) in bbox_pairs(&boxes) {
        if a >= nf || b < nf {
            continue;
        }
        let (fi, ci) = (a, b - nf);
        if f[fi].id == c[ci].id {
            continue;
        }
        let mut here = Vec::new();
        for (i, fp) in f[fi].parts.iter().enumerate() {
            let Some(fp) = fp else { continue };
            for (j, cp) in c[ci].parts.iter().enumerate() {
                let Some(cp) = cp else { continue };
                let crossings = polyline_crossings(cp, fp).map_err(|e| match e {
                    Error::GeneralPosition { reason, .. } => Error::GeneralPosition { a: f[fi].id, b: c[ci].id, reason },
                    e => e,
                })?;
                if crossings.is_empty() {
                    continue;
                }
                here.push((i, j));
                for x in crossings {
                    along[ci][j].push((x.seg1, x.t1, fi * t + i));
                }
            }
        }
        if !here.is_empty() {
            pair_patterns.push(here.len());
            neighbors[ci].push(fi);
            curve_patterns[ci].extend(&here);
            patterns.extend(here);
        }
    }
    patterns.sort_unstable();
    patterns.dedup();
    let max_curve_patterns = curve_patterns
        .iter_mut()
        .map(|p| {
            p.sort_unstable();
            p.dedup();
            p.len()
        })
        .max()
        .unwrap_or(0);
    let l = pair_patterns.iter().copied().min().unwrap_or(1);
    let s = max_curve_patterns.div_ceil(l).max(1);
    for nb in &mut neighbors {
        nb.sort_unstable();
    }
    let along = along
        .into_iter()
        .map(|slots| {
            slots
                .into_iter()
                .map(|mut list| {
                    list.sort_unstable();
                    list.into_iter().map(|(_, _, code)| (code / t, code % t)).collect()
                })
                .collect()
        })
        .collect();
    Ok(PatternFamily { f, c, m: patterns.len(), patterns, l, s, max_curve_patterns, neighbors, along })
}

/// Structural checks accumulated over weak-coloring rounds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PatternStats {
    pub rounds: usize,
    pub max_palette: usize,
    pub max_degeneracy: usize,
    /// Pattern graphs with more than `3v - 6` edges.
    pub planar_violations: usize,
    /// Hyperedges of size at least `s + 1` without an aux edge inside.
    pub nmc_violations: usize,
}

/// Proper coloring of the union of the pattern graphs over `k` (ids into
/// `fam.f`), aligned with `k`.
pub fn pattern_weak_coloring(fam: &PatternFamily, k: &[usize]) -> Coloring {
    let mut stats = PatternStats::default();
    pattern_weak_coloring_with_stats(fam, k, &mut stats)
}

pub fn pattern_weak_coloring_with_stats(fam: &PatternFamily, k: &[usize], stats: &mut PatternStats) -> Coloring {
    let nf = fam.f.len();
    let t = fam.f.first().or(fam.c.first()).map_or(0, |c| c.parts.len());
    let mut local = vec![usize::MAX; nf];
    for (i, &v) in k.iter().enumerate() {
        local[v] = i;
    }
    let mut tagged: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut last = vec![usize::MAX; t];
    for lists in &fam.along {
        for (j, list) in lists.iter().enumerate() {
            for &(f, i) in list {
                let lf = local[f];
                if lf == usize::MAX {
                    continue;
                }
                let prev = last[i];
                if prev != usize::MAX && prev != lf {
                    tagged.push((i, j, prev.min(lf), prev.max(lf)));
                }
                last[i] = lf;
            }
            for &(_, i) in list {
                last[i] = usize::MAX;
            }
        }
    }
    tagged.sort_unstable();
    tagged.dedup();
    for run in tagged.chunk_by(|a, b| (a.0, a.1) == (b.0, b.1)) {
        let slot = run[0].0;
        let v = k.iter().filter(|&&x| fam.f[x].parts[slot].is_some()).count();
        let bound = if v >= 3 { 3 * v - 6 } else { v * v.saturating_sub(1) / 2 };
        if run.len() > bound {
            stats.planar_violations += 1;
        }
    }
    let g = Graph::from_edges(k.len(), tagged.iter().map(|&(_, _, a, b)| (a, b))).expect("local edges");
    let (coloring, order) = degeneracy_color_with_order(&g);
    stats.rounds += 1;
    stats.max_palette = stats.max_palette.max(coloring.distinct_colors());
    stats.max_degeneracy = stats.max_degeneracy.max(order.degeneracy);
    let mut mark = vec![false; k.len()];
    for nb in &fam.neighbors {
        let inside: Vec<usize> = nb.iter().map(|&f| local[f]).filter(|&x| x != usize::MAX).collect();
        if inside.len() <= fam.s {
            continue;
        }
        for &x in &inside {
            mark[x] = true;
        }
        if !inside.iter().any(|&x| g.neighbors(x).iter().any(|&y| mark[y])) {
            stats.nmc_violations += 1;
        }
        for &x in &inside {
            mark[x] = false;
        }
    }
    coloring
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PatternReport {
    pub m: usize,
    pub l: usize,
    pub s: usize,
    pub rounds: usize,
    pub stats: PatternStats,
}

/// s-CF coloring of the hypergraph of `fam` with `s = fam.s`.
pub fn s_cf_color(fam: &PatternFamily) -> Result<(Coloring, PatternReport)> {
    let mut report = PatternReport { m: fam.m, l: fam.l, s: fam.s, ..Default::default() };
    if fam.f.is_empty() {
        return Ok((Coloring::new(Vec::new(), 0)?, report));
    }
    let h = fam.hypergraph();
    let mut stats = PatternStats::default();
    let mut colorer = |_: &Hypergraph, ids: &[usize]| Ok(pattern_weak_coloring_with_stats(fam, ids, &mut stats));
    let (c, fr) = k_cf_color_via_weak(&h, &mut colorer, fam.s)?;
    report.rounds = fr.rounds();
    report.stats = stats;
    Ok((c, report))
}

fn cf_with_bound(fam: PatternFamily, k: usize) -> Result<(Coloring, PatternReport)> {
    if fam.s > k {
        return Err(Error::Invariant(format!("family needs s = {} but k = {k}", fam.s)));
    }
    s_cf_color(&fam)
}

/// 2-CF coloring of the intersection graph of corner L-shapes.
pub fn k_cf_color_lshapes(items: &[CornerLShape]) -> Result<(Coloring, PatternReport)> {
    let curves: Vec<PartitionedCurve> = items.iter().enumerate().map(|(i, l)| partition_lshape(l, i)).collect();
    cf_with_bound(compute_patterns(curves.clone(), curves)?, 2)
}

/// 4-CF coloring of the intersection graph of frames.
pub fn k_cf_color_frames(items: &[Frame]) -> Result<(Coloring, PatternReport)> {
    let curves: Vec<PartitionedCurve> = items.iter().enumerate().map(|(i, f)| partition_frame(f, i)).collect();
    cf_with_bound(compute_patterns(curves.clone(), curves)?, 4)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChromaticReport {
    pub classes: usize,
    /// Palette used for each class.
    pub palettes: Vec<usize>,
    pub stats: PatternStats,
}

/// CF coloring of a string graph given a proper coloring `classes` of it:
/// each class is CF-colored against all the other strings with its own
/// palette.
pub fn cf_color_bounded_chromatic(strings: &[Polyline], classes: &[usize]) -> Result<(Coloring, ChromaticReport)> {
    if strings.len() != classes.len() {
        return Err(Error::LengthMismatch { expected: strings.len(), got: classes.len() });
    }
    let g = strings_intersection_graph(strings)?;
    if let Some((a, b)) = g.edges().find(|&(a, b)| classes[a] == classes[b]) {
        return Err(Error::ImproperClasses { a, b });
    }
    let t = classes.iter().map(|&c| c + 1).max().unwrap_or(0);
    let curve = |v: usize| {
        let mut parts = vec![None; t];
        parts[classes[v]] = Some(strings[v].clone());
        PartitionedCurve { id: v, parts }
    };
    let mut colors = vec![0; strings.len()];
    let mut report = ChromaticReport { classes: t, ..Default::default() };
    let mut offset = 0;
    for class in 0..t {
        let members: Vec<usize> = (0..strings.len()).filter(|&v| classes[v] == class).collect();
        let others: Vec<usize> = (0..strings.len()).filter(|&v| classes[v] != class).collect();
        let fam = compute_patterns(members.iter().map(|&v| curve(v)).collect(), others.iter().map(|&v| curve(v)).collect())?;
        let (c, r) = cf_with_bound(fam, 1)?;
        for (&v, &x) in members.iter().zip(c.colors()) {
            colors[v] = offset + x;
        }
        offset += c.palette_size();
        report.palettes.push(c.palette_size());
        let st = &mut report.stats;
        st.rounds += r.stats.rounds;
        st.max_palette = st.max_palette.max(r.stats.max_palette);
        st.max_degeneracy = st.max_degeneracy.max(r.stats.max_degeneracy);
        st.planar_violations += r.stats.planar_violations;
        st.nmc_violations += r.stats.nmc_violations;
    }
    Ok((Coloring::new(colors, offset)?, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{corner_intersection_graph, frames_intersection_graph, to_grounded_lshapes, Point};
    use crate::hypergraph::{neighborhood_hypergraph, verify_k_cf, verify_k_weak};
    use crate::instances::{
        circle_lower_bound_tree_len, gen_circle_lower_bound, gen_frames_clique_gadget, random_bipartite_strings,
        random_corner_lshapes, random_frames,
    };
    use proptest::prelude::*;

    fn frames_family(items: &[Frame]) -> PatternFamily {
        let curves: Vec<_> = items.iter().enumerate().map(|(i, f)| partition_frame(f, i)).collect();
        compute_patterns(curves.clone(), curves).unwrap()
    }

    #[test]
    fn crossing_frames_give_two_or_four_patterns() {
        let two = frames_family(&[Frame::new(0, 0, 4, 4), Frame::new(2, 2, 6, 6)]);
        assert_eq!(two.l, 2);
        let four = frames_family(&[Frame::new(0, 1, 4, 3), Frame::new(1, 0, 3, 4)]);
        assert_eq!(four.l, 4);
        for fam in [two, four] {
            assert!(fam.max_curve_patterns <= 8);
            assert!(fam.satisfies(2, 4));
        }
    }

    #[test]
    fn lshape_patterns() {
        let items = [CornerLShape::new(0, 0, 4, 4), CornerLShape::new(2, -2, 4, 4)];
        let curves: Vec<_> = items.iter().enumerate().map(|(i, l)| partition_lshape(l, i)).collect();
        let fam = compute_patterns(curves.clone(), curves).unwrap();
        assert_eq!(fam.l, 1);
        assert!(fam.max_curve_patterns <= 2);
        assert_eq!(fam.patterns, vec![(0, 1), (1, 0)]);
        let (c, _) = k_cf_color_lshapes(&items).unwrap();
        assert!(c.distinct_colors() <= 2);
        let h = neighborhood_hypergraph(&corner_intersection_graph(&items).unwrap());
        assert!(verify_k_cf(&h, &c, 2).unwrap());
    }

    #[test]
    fn disjoint_and_empty_families() {
        let fam = frames_family(&[Frame::new(0, 0, 1, 1), Frame::new(2, 2, 3, 3)]);
        assert_eq!(fam.m, 0);
        assert_eq!(pattern_weak_coloring(&fam, &[0, 1]).distinct_colors(), 1);
        let (c, _) = k_cf_color_frames(&[Frame::new(0, 0, 1, 1), Frame::new(2, 2, 3, 3)]).unwrap();
        assert_eq!(c.palette_size(), 1);
        let (c, _) = s_cf_color(&frames_family(&[])).unwrap();
        assert_eq!(c.palette_size(), 0);
        assert_eq!(k_cf_color_lshapes(&[CornerLShape::new(0, 0, 1, 1)]).unwrap().0.palette_size(), 1);
    }

    #[test]
    fn consecutive_crossings_get_distinct_colors() {
        let seg = |a: (i64, i64), b: (i64, i64)| Polyline::new(vec![Point::new(a.0, a.1), Point::new(b.0, b.1)]);
        let f = vec![
            PartitionedCurve { id: 0, parts: vec![Some(seg((1, -1), (1, 1)))] },
            PartitionedCurve { id: 1, parts: vec![Some(seg((2, -1), (2, 1)))] },
        ];
        let c = vec![PartitionedCurve { id: 2, parts: vec![Some(seg((0, 0), (3, 0)))] }];
        let err = compute_patterns(f.clone(), c.clone()).unwrap_err();
        assert!(matches!(err, Error::Partition { .. }));
        let c = vec![PartitionedCurve { id: 2, parts: vec![None, Some(seg((0, 0), (3, 0)))] }];
        let f: Vec<_> = f.into_iter().map(|x| PartitionedCurve { id: x.id, parts: vec![x.parts[0].clone(), None] }).collect();
        let fam = compute_patterns(f, c).unwrap();
        let col = pattern_weak_coloring(&fam, &[0, 1]);
        assert_ne!(col.color(0), col.color(1));
    }

    #[test]
    fn gadget_frames_are_four_cf() {
        let items = gen_frames_clique_gadget(4).unwrap();
        let (c, r) = k_cf_color_frames(&items).unwrap();
        let h = neighborhood_hypergraph(&frames_intersection_graph(&items).unwrap());
        assert!(verify_k_cf(&h, &c, 4).unwrap());
        assert_eq!(r.stats.nmc_violations, 0);
    }

    #[test]
    fn random_frames_weak_and_cf() {
        for seed in 0..4 {
            let items = random_frames(300, seed);
            let fam = frames_family(&items);
            assert!(fam.satisfies(2, 4));
            let all: Vec<usize> = (0..items.len()).collect();
            let mut stats = PatternStats::default();
            let c = pattern_weak_coloring_with_stats(&fam, &all, &mut stats);
            let h = neighborhood_hypergraph(&frames_intersection_graph(&items).unwrap());
            assert_eq!(fam.hypergraph(), h);
            assert!(verify_k_weak(&h, &c, 5).unwrap());
            assert!(c.distinct_colors() <= 6 * fam.m);
            assert_eq!(stats.planar_violations, 0);
            assert_eq!(stats.nmc_violations, 0);
            let (c, r) = k_cf_color_frames(&items).unwrap();
            assert!(verify_k_cf(&h, &c, 4).unwrap());
            let bound = 6.0 * fam.m as f64 * ((items.len() as f64).log2() + 1.0) * 2.0;
            assert!((c.palette_size() as f64) <= bound);
            assert_eq!(r.stats.nmc_violations, 0);
        }
    }

    #[test]
    fn bipartite_strings() {
        for (n, seed) in [(2, 0), (40, 1), (300, 2)] {
            let (strings, classes) = random_bipartite_strings(n, seed);
            let (c, r) = cf_color_bounded_chromatic(&strings, &classes).unwrap();
            let h = neighborhood_hypergraph(&strings_intersection_graph(&strings).unwrap());
            assert!(verify_k_cf(&h, &c, 1).unwrap());
            assert_eq!(r.stats.nmc_violations, 0);
        }
    }

    #[test]
    fn single_class_strings() {
        let (strings, _) = random_bipartite_strings(10, 3);
        let class0: Vec<Polyline> = strings.into_iter().take(5).collect();
        let (c, _) = cf_color_bounded_chromatic(&class0, &[0; 5]).unwrap();
        assert_eq!(c.palette_size(), 1);
    }

    #[test]
    fn improper_classes_rejected() {
        let (strings, classes) = random_bipartite_strings(60, 5);
        let g = strings_intersection_graph(&strings).unwrap();
        let (a, b) = g.edges().next().unwrap();
        let mut bad = classes.clone();
        bad[b] = bad[a];
        assert!(matches!(cf_color_bounded_chromatic(&strings, &bad), Err(Error::ImproperClasses { .. }) | Err(Error::Partition { .. })));
    }

    #[test]
    fn lower_bound_as_strings() {
        let items = gen_circle_lower_bound(3, 1);
        let split = circle_lower_bound_tree_len(3, 1).unwrap();
        let strings: Vec<Polyline> = to_grounded_lshapes(&items).unwrap().iter().map(|l| l.to_polyline()).collect();
        let classes: Vec<usize> = (0..items.len()).map(|i| usize::from(i >= split)).collect();
        let (c, _) = cf_color_bounded_chromatic(&strings, &classes).unwrap();
        let h = neighborhood_hypergraph(&strings_intersection_graph(&strings).unwrap());
        assert!(verify_k_cf(&h, &c, 1).unwrap());
        assert!(c.distinct_colors() >= 3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn lshapes_are_two_cf(n in 0usize..150, seed: u64) {
            let items = random_corner_lshapes(n, seed);
            let (c, r) = k_cf_color_lshapes(&items).unwrap();
            let h = neighborhood_hypergraph(&corner_intersection_graph(&items).unwrap());
            prop_assert!(verify_k_cf(&h, &c, 2).unwrap());
            prop_assert_eq!(r.stats.nmc_violations, 0);
            prop_assert_eq!(r.stats.planar_violations, 0);
            prop_assert!(r.stats.max_palette <= 6 * r.m.max(1));
        }

        #[test]
        fn frames_are_four_cf(n in 0usize..150, seed: u64) {
            let items = random_frames(n, seed);
            let (c, r) = k_cf_color_frames(&items).unwrap();
            let h = neighborhood_hypergraph(&frames_intersection_graph(&items).unwrap());
            prop_assert!(verify_k_cf(&h, &c, 4).unwrap());
            prop_assert_eq!(r.stats.nmc_violations, 0);
            prop_assert_eq!(r.stats.planar_violations, 0);
        }
    }
}
