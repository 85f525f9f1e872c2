//! Integer-coordinate shapes, exact intersection predicates, intersection
//! graph builders and representation transforms.

use std::cmp::Ordering;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::hypergraph::{neighborhood_hypergraph, Graph, Hypergraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

/// Closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub a: i64,
    pub b: i64,
}

impl Interval {
    pub fn new(a: i64, b: i64) -> Self {
        Interval { a, b }
    }

    pub fn len(&self) -> i64 {
        self.b - self.a
    }

    pub fn is_empty(&self) -> bool {
        self.a >= self.b
    }

    pub fn contains_point(&self, x: i64) -> bool {
        self.a <= x && x <= self.b
    }
}

/// An L-shape hanging from the baseline `y = 0`: the vertical part spans
/// `y ∈ [-depth, 0]` at `x`, the horizontal part spans `[x, x + width]` at
/// `y = -depth`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundedLShape {
    pub x: i64,
    pub depth: i64,
    pub width: i64,
}

impl GroundedLShape {
    pub fn new(x: i64, depth: i64, width: i64) -> Self {
        GroundedLShape { x, depth, width }
    }

    pub fn end(&self) -> i64 {
        self.x + self.width
    }

    pub fn to_polyline(&self) -> Polyline {
        Polyline::new(vec![
            Point::new(self.x, 0),
            Point::new(self.x, -self.depth),
            Point::new(self.end(), -self.depth),
        ])
    }
}

/// An L-shape opening up and to the right from its corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CornerLShape {
    pub x: i64,
    pub y: i64,
    pub height: i64,
    pub width: i64,
}

impl CornerLShape {
    pub fn new(x: i64, y: i64, height: i64, width: i64) -> Self {
        CornerLShape { x, y, height, width }
    }

    pub fn vertical(&self) -> Polyline {
        Polyline::new(vec![Point::new(self.x, self.y), Point::new(self.x, self.y + self.height)])
    }

    pub fn horizontal(&self) -> Polyline {
        Polyline::new(vec![Point::new(self.x, self.y), Point::new(self.x + self.width, self.y)])
    }
}

/// Boundary of the rectangle `[x1, x2] × [y1, y2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Frame {
    pub x1: i64,
    pub y1: i64,
    pub x2: i64,
    pub y2: i64,
}

impl Frame {
    pub fn new(x1: i64, y1: i64, x2: i64, y2: i64) -> Self {
        Frame { x1, y1, x2, y2 }
    }

    /// Sides in slot order: left, bottom, right, top.
    pub fn sides(&self) -> [Polyline; 4] {
        let (a, b, c, d) = (
            Point::new(self.x1, self.y1),
            Point::new(self.x2, self.y1),
            Point::new(self.x2, self.y2),
            Point::new(self.x1, self.y2),
        );
        [
            Polyline::new(vec![a, d]),
            Polyline::new(vec![a, b]),
            Polyline::new(vec![b, c]),
            Polyline::new(vec![d, c]),
        ]
    }

    fn strictly_inside(&self, other: &Frame) -> bool {
        other.x1 < self.x1 && self.x2 < other.x2 && other.y1 < self.y1 && self.y2 < other.y2
    }
}

/// A curve made of straight segments between consecutive points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polyline {
    pub points: Vec<Point>,
}

impl Polyline {
    pub fn new(points: Vec<Point>) -> Self {
        Polyline { points }
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn bbox(&self) -> BBox {
        let mut b = BBox { x1: i64::MAX, y1: i64::MAX, x2: i64::MIN, y2: i64::MIN };
        for p in &self.points {
            b.x1 = b.x1.min(p.x);
            b.y1 = b.y1.min(p.y);
            b.x2 = b.x2.max(p.x);
            b.y2 = b.y2.max(p.y);
        }
        b
    }

    pub fn validate(&self, index: usize) -> Result<()> {
        if self.points.len() < 2 {
            return Err(Error::InvalidShape { index, reason: "fewer than two points".into() });
        }
        if self.points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidShape { index, reason: "zero-length segment".into() });
        }
        Ok(())
    }
}

/// Closed axis-parallel bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BBox {
    pub x1: i64,
    pub y1: i64,
    pub x2: i64,
    pub y2: i64,
}

/// A shape family or a raw hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Intervals(Vec<Interval>),
    GroundedLShapes(Vec<GroundedLShape>),
    CornerLShapes(Vec<CornerLShape>),
    Frames(Vec<Frame>),
    Strings(Vec<Polyline>),
    Hypergraph(Hypergraph),
}

impl Instance {
    pub fn len(&self) -> usize {
        match self {
            Instance::Intervals(v) => v.len(),
            Instance::GroundedLShapes(v) => v.len(),
            Instance::CornerLShapes(v) => v.len(),
            Instance::Frames(v) => v.len(),
            Instance::Strings(v) => v.len(),
            Instance::Hypergraph(h) => h.n(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Overlap graph for intervals, intersection graph for other shapes;
    /// `None` for a raw hypergraph.
    pub fn graph(&self) -> Result<Option<Graph>> {
        Ok(Some(match self {
            Instance::Intervals(v) => overlap_graph(v)?,
            Instance::GroundedLShapes(v) => grounded_intersection_graph(v)?,
            Instance::CornerLShapes(v) => corner_intersection_graph(v)?,
            Instance::Frames(v) => frames_intersection_graph(v)?,
            Instance::Strings(v) => strings_intersection_graph(v)?,
            Instance::Hypergraph(_) => return Ok(None),
        }))
    }

    /// The hypergraph a coloring of this instance must be conflict-free on.
    pub fn hypergraph(&self) -> Result<Hypergraph> {
        match self {
            Instance::Hypergraph(h) => Ok(h.clone()),
            _ => Ok(neighborhood_hypergraph(&self.graph()?.expect("geometric instance"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralPositionReport {
    pub ok: bool,
    pub violations: Vec<(usize, usize, String)>,
}

fn gp_error(a: usize, b: usize, reason: &str) -> Error {
    Error::GeneralPosition { a: a.min(b), b: a.max(b), reason: reason.into() }
}

pub fn validate_interval(i: &Interval, index: usize) -> Result<()> {
    if i.a >= i.b {
        return Err(Error::InvalidShape { index, reason: format!("interval [{}, {}] has a >= b", i.a, i.b) });
    }
    Ok(())
}

pub fn validate_grounded(l: &GroundedLShape, index: usize) -> Result<()> {
    if l.depth <= 0 || l.width <= 0 {
        return Err(Error::InvalidShape { index, reason: "depth and width must be positive".into() });
    }
    Ok(())
}

pub fn validate_corner(l: &CornerLShape, index: usize) -> Result<()> {
    if l.height <= 0 || l.width <= 0 {
        return Err(Error::InvalidShape { index, reason: "height and width must be positive".into() });
    }
    Ok(())
}

pub fn validate_frame(f: &Frame, index: usize) -> Result<()> {
    if f.x1 >= f.x2 || f.y1 >= f.y2 {
        return Err(Error::InvalidShape { index, reason: "frame needs x1 < x2 and y1 < y2".into() });
    }
    Ok(())
}

/// True iff the intervals intersect and neither contains the other.
pub fn intervals_overlap(i1: &Interval, i2: &Interval) -> Result<bool> {
    if i1.a == i2.a || i1.a == i2.b || i1.b == i2.a || i1.b == i2.b {
        return Err(gp_error(0, 1, "shared endpoint"));
    }
    Ok((i1.a < i2.a && i2.a < i1.b && i1.b < i2.b) || (i2.a < i1.a && i1.a < i2.b && i2.b < i1.b))
}

/// True iff the vertical part of the shape based further right crosses the
/// horizontal part of the other.
pub fn grounded_lshapes_intersect(l1: &GroundedLShape, l2: &GroundedLShape) -> Result<bool> {
    if l1.x == l2.x {
        return Err(gp_error(0, 1, "equal basepoints"));
    }
    let (left, right) = if l1.x < l2.x { (l1, l2) } else { (l2, l1) };
    if right.x == left.end() && right.depth >= left.depth {
        return Err(gp_error(0, 1, "vertical part touches the end of a horizontal part"));
    }
    if right.depth == left.depth && right.x < left.end() {
        return Err(gp_error(0, 1, "equal depths on overlapping spans"));
    }
    Ok(right.x < left.end() && right.depth > left.depth)
}

/// True iff the closed rectangles meet and neither lies in the open interior
/// of the other, i.e. the boundaries cross.
pub fn frames_intersect(f1: &Frame, f2: &Frame) -> Result<bool> {
    if f1.x1 == f2.x1 || f1.x1 == f2.x2 || f1.x2 == f2.x1 || f1.x2 == f2.x2 {
        return Err(gp_error(0, 1, "shared x-coordinate"));
    }
    if f1.y1 == f2.y1 || f1.y1 == f2.y2 || f1.y2 == f2.y1 || f1.y2 == f2.y2 {
        return Err(gp_error(0, 1, "shared y-coordinate"));
    }
    let meet = f1.x1 <= f2.x2 && f2.x1 <= f1.x2 && f1.y1 <= f2.y2 && f2.y1 <= f1.y2;
    Ok(meet && !f1.strictly_inside(f2) && !f2.strictly_inside(f1))
}

/// Crossing of a vertical segment `x × [y_lo, y_hi]` with a horizontal one
/// `[x_lo, x_hi] × y`: `Some(true)` transversal, `Some(false)` disjoint,
/// `None` touching.
fn vh_cross(vx: i64, vy: (i64, i64), hy: i64, hx: (i64, i64)) -> Option<bool> {
    let closed = hx.0 <= vx && vx <= hx.1 && vy.0 <= hy && hy <= vy.1;
    let strict = hx.0 < vx && vx < hx.1 && vy.0 < hy && hy < vy.1;
    match (closed, strict) {
        (false, _) => Some(false),
        (true, true) => Some(true),
        (true, false) => None,
    }
}

/// True iff the vertical part of one shape crosses the horizontal part of
/// the other.
pub fn corner_lshapes_intersect(l1: &CornerLShape, l2: &CornerLShape) -> Result<bool> {
    let overlap = |a: (i64, i64), b: (i64, i64)| a.0 <= b.1 && b.0 <= a.1;
    if l1.x == l2.x && overlap((l1.y, l1.y + l1.height), (l2.y, l2.y + l2.height)) {
        return Err(gp_error(0, 1, "collinear overlapping vertical parts"));
    }
    if l1.y == l2.y && overlap((l1.x, l1.x + l1.width), (l2.x, l2.x + l2.width)) {
        return Err(gp_error(0, 1, "collinear overlapping horizontal parts"));
    }
    let a = vh_cross(l1.x, (l1.y, l1.y + l1.height), l2.y, (l2.x, l2.x + l2.width));
    let b = vh_cross(l2.x, (l2.y, l2.y + l2.height), l1.y, (l1.x, l1.x + l1.width));
    match (a, b) {
        (Some(a), Some(b)) => Ok(a || b),
        _ => Err(gp_error(0, 1, "non-transversal contact")),
    }
}

fn relabel(e: Error, a: usize, b: usize) -> Error {
    match e {
        Error::GeneralPosition { reason, .. } => Error::GeneralPosition { a: a.min(b), b: a.max(b), reason },
        other => other,
    }
}

/// Pairs of boxes whose closed extents meet, found by a sweep over `x1`.
pub(crate) fn bbox_pairs(boxes: &[BBox]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..boxes.len()).collect();
    order.sort_by_key(|&i| (boxes[i].x1, i));
    let mut out = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        let bi = boxes[i];
        for &j in &order[pos + 1..] {
            let bj = boxes[j];
            if bj.x1 > bi.x2 {
                break;
            }
            if bj.y1 <= bi.y2 && bi.y1 <= bj.y2 {
                out.push((i.min(j), i.max(j)));
            }
        }
    }
    out
}

/// Pairs of items sharing a key, reported as the first offending pair.
fn first_shared<K: Ord + Copy>(keys: &mut [(K, usize)]) -> Option<(usize, usize)> {
    keys.sort_unstable();
    keys.windows(2).find(|w| w[0].0 == w[1].0).map(|w| (w[0].1, w[1].1))
}

/// Overlap graph of intervals, vertices in input order.
pub fn overlap_graph(items: &[Interval]) -> Result<Graph> {
    for (i, it) in items.iter().enumerate() {
        validate_interval(it, i)?;
    }
    let mut ends: Vec<(i64, usize)> = items.iter().enumerate().flat_map(|(i, it)| [(it.a, i), (it.b, i)]).collect();
    if let Some((a, b)) = first_shared(&mut ends) {
        return Err(gp_error(a, b, "shared endpoint"));
    }
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&i| items[i].a);
    let mut edges = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if items[j].a > items[i].b {
                break;
            }
            if items[j].b > items[i].b {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(items.len(), edges)
}

pub fn grounded_intersection_graph(items: &[GroundedLShape]) -> Result<Graph> {
    for (i, it) in items.iter().enumerate() {
        validate_grounded(it, i)?;
    }
    let mut bases: Vec<(i64, usize)> = items.iter().enumerate().map(|(i, l)| (l.x, i)).collect();
    if let Some((a, b)) = first_shared(&mut bases) {
        return Err(gp_error(a, b, "equal basepoints"));
    }
    let order: Vec<usize> = bases.iter().map(|&(_, i)| i).collect();
    let mut edges = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if items[j].x > items[i].end() {
                break;
            }
            if grounded_lshapes_intersect(&items[i], &items[j]).map_err(|e| relabel(e, i, j))? {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(items.len(), edges)
}

pub fn frames_intersection_graph(items: &[Frame]) -> Result<Graph> {
    for (i, it) in items.iter().enumerate() {
        validate_frame(it, i)?;
    }
    let boxes: Vec<BBox> = items.iter().map(|f| BBox { x1: f.x1, y1: f.y1, x2: f.x2, y2: f.y2 }).collect();
    let mut edges = Vec::new();
    for (i, j) in bbox_pairs(&boxes) {
        if frames_intersect(&items[i], &items[j]).map_err(|e| relabel(e, i, j))? {
            edges.push((i, j));
        }
    }
    Graph::from_edges(items.len(), edges)
}

pub fn corner_intersection_graph(items: &[CornerLShape]) -> Result<Graph> {
    for (i, it) in items.iter().enumerate() {
        validate_corner(it, i)?;
    }
    let boxes: Vec<BBox> = items
        .iter()
        .map(|l| BBox { x1: l.x, y1: l.y, x2: l.x + l.width, y2: l.y + l.height })
        .collect();
    let mut edges = Vec::new();
    for (i, j) in bbox_pairs(&boxes) {
        if corner_lshapes_intersect(&items[i], &items[j]).map_err(|e| relabel(e, i, j))? {
            edges.push((i, j));
        }
    }
    Graph::from_edges(items.len(), edges)
}

pub fn strings_intersection_graph(items: &[Polyline]) -> Result<Graph> {
    for (i, p) in items.iter().enumerate() {
        p.validate(i)?;
    }
    let boxes: Vec<BBox> = items.iter().map(Polyline::bbox).collect();
    let mut edges = Vec::new();
    for (i, j) in bbox_pairs(&boxes) {
        if !polyline_crossings(&items[i], &items[j]).map_err(|e| relabel(e, i, j))?.is_empty() {
            edges.push((i, j));
        }
    }
    Graph::from_edges(items.len(), edges)
}

/// A transversal crossing of segment `seg1` of the first polyline with
/// segment `seg2` of the second, at parameters `t1` and `t2` in `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub seg1: usize,
    pub t1: Ratio<i128>,
    pub seg2: usize,
    pub t2: Ratio<i128>,
}

impl Crossing {
    /// Position along the first polyline.
    pub fn key1(&self) -> (usize, Ratio<i128>) {
        (self.seg1, self.t1)
    }

    pub fn key2(&self) -> (usize, Ratio<i128>) {
        (self.seg2, self.t2)
    }
}

fn cross(ax: i128, ay: i128, bx: i128, by: i128) -> i128 {
    ax * by - ay * bx
}

/// Parameters `(t, u)` as numerator pairs over a positive denominator if
/// the segments cross transversally; an error for touching or collinear
/// overlap.
fn segment_crossing(p: (Point, Point), q: (Point, Point)) -> std::result::Result<Option<(i128, i128, i128)>, &'static str> {
    let (ax, ay) = (p.0.x as i128, p.0.y as i128);
    let (rx, ry) = ((p.1.x - p.0.x) as i128, (p.1.y - p.0.y) as i128);
    let (cx, cy) = (q.0.x as i128, q.0.y as i128);
    let (sx, sy) = ((q.1.x - q.0.x) as i128, (q.1.y - q.0.y) as i128);
    let (wx, wy) = (cx - ax, cy - ay);
    let mut d = cross(rx, ry, sx, sy);
    if d == 0 {
        if cross(wx, wy, rx, ry) != 0 {
            return Ok(None);
        }
        let rr = rx * rx + ry * ry;
        let t0 = wx * rx + wy * ry;
        let t1 = t0 + sx * rx + sy * ry;
        let (lo, hi) = (t0.min(t1), t0.max(t1));
        if hi < 0 || lo > rr {
            return Ok(None);
        }
        return Err("collinear overlapping segments");
    }
    let mut t = cross(wx, wy, sx, sy);
    let mut u = cross(wx, wy, rx, ry);
    if d < 0 {
        d = -d;
        t = -t;
        u = -u;
    }
    if t < 0 || t > d || u < 0 || u > d {
        return Ok(None);
    }
    if t == 0 || t == d || u == 0 || u == d {
        return Err("crossing at a segment endpoint");
    }
    Ok(Some((t, u, d)))
}

/// All crossings of two polylines, sorted along `p1`.
pub fn polyline_crossings(p1: &Polyline, p2: &Polyline) -> Result<Vec<Crossing>> {
    let mut out = Vec::new();
    let boxes2: Vec<BBox> = p2.segments().map(|s| seg_box(s)).collect();
    for (i, s1) in p1.segments().enumerate() {
        let b1 = seg_box(s1);
        for (j, s2) in p2.segments().enumerate() {
            let b2 = boxes2[j];
            if b2.x1 > b1.x2 || b1.x1 > b2.x2 || b2.y1 > b1.y2 || b1.y1 > b2.y2 {
                continue;
            }
            match segment_crossing(s1, s2) {
                Ok(Some((t, u, d))) => out.push(Crossing { seg1: i, t1: Ratio::new(t, d), seg2: j, t2: Ratio::new(u, d) }),
                Ok(None) => {}
                Err(reason) => {
                    return Err(Error::GeneralPosition { a: 0, b: 1, reason: format!("segments {i} and {j}: {reason}") })
                }
            }
        }
    }
    out.sort_by(|a, b| a.key1().cmp(&b.key1()));
    Ok(out)
}

fn seg_box(s: (Point, Point)) -> BBox {
    BBox { x1: s.0.x.min(s.1.x), y1: s.0.y.min(s.1.y), x2: s.0.x.max(s.1.x), y2: s.0.y.max(s.1.y) }
}

/// Maps the interval whose right endpoint has rank `i` (1-based) to the
/// grounded L-shape `(a, i, b - a)`.
pub fn to_grounded_lshapes(items: &[Interval]) -> Result<Vec<GroundedLShape>> {
    check_interval_gp(items)?;
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&i| items[i].b);
    let mut out = vec![GroundedLShape::new(0, 0, 0); items.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = GroundedLShape::new(items[i].a, rank as i64 + 1, items[i].len());
    }
    Ok(out)
}

fn check_interval_gp(items: &[Interval]) -> Result<()> {
    for (i, it) in items.iter().enumerate() {
        validate_interval(it, i)?;
    }
    let mut ends: Vec<(i64, usize)> = items.iter().enumerate().flat_map(|(i, it)| [(it.a, i), (it.b, i)]).collect();
    match first_shared(&mut ends) {
        Some((a, b)) => Err(gp_error(a, b, "shared endpoint")),
        None => Ok(()),
    }
}

/// Length of the longest containment chain ending at each interval.
pub fn containment_heights(items: &[Interval]) -> Result<Vec<usize>> {
    check_interval_gp(items)?;
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&i| items[i].len());
    let mut h = vec![1usize; items.len()];
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[..pos] {
            if items[i].a < items[j].a && items[j].b < items[i].b {
                h[i] = h[i].max(h[j] + 1);
            }
        }
    }
    Ok(h)
}

/// Maps `[a, b]` to the frame `[a, b] × [-H, H]`, where `H` ranks the
/// intervals by containment height and then by input order. Nested
/// intervals get nested frames; all heights are distinct.
pub fn to_frames(items: &[Interval]) -> Result<Vec<Frame>> {
    let h = containment_heights(items)?;
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&i| (h[i], i));
    let mut out = vec![Frame::new(0, 0, 0, 0); items.len()];
    for (rank, &i) in order.iter().enumerate() {
        let hh = rank as i64 + 1;
        out[i] = Frame::new(items[i].a, -hh, items[i].b, hh);
    }
    Ok(out)
}

/// Maps every shape crossing the vertical line `x = line_x` to the interval
/// `[x - line_x, depth]`.
pub fn grounded_to_overlap(items: &[GroundedLShape], line_x: i64) -> Result<Vec<Interval>> {
    items
        .iter()
        .enumerate()
        .map(|(i, l)| {
            if l.x < line_x && line_x < l.end() {
                Ok(Interval::new(l.x - line_x, l.depth))
            } else {
                Err(Error::NotCrossingLine { index: i })
            }
        })
        .collect()
}

/// [`grounded_to_overlap`] for the line `x = line2 / 2`, in doubled
/// coordinates.
pub(crate) fn grounded_to_overlap_doubled(items: &[GroundedLShape], line2: i64) -> Result<Vec<Interval>> {
    items
        .iter()
        .enumerate()
        .map(|(i, l)| {
            if 2 * l.x < line2 && line2 < 2 * l.end() {
                Ok(Interval::new(2 * l.x - line2, 2 * l.depth))
            } else {
                Err(Error::NotCrossingLine { index: i })
            }
        })
        .collect()
}

const MAX_REPORTED: usize = 1000;

struct Reporter {
    violations: Vec<(usize, usize, String)>,
    total: usize,
}

impl Reporter {
    fn push(&mut self, a: usize, b: usize, reason: impl Into<String>) {
        self.total += 1;
        if self.violations.len() < MAX_REPORTED {
            self.violations.push((a.min(b), a.max(b), reason.into()));
        }
    }

    fn shared(&mut self, mut keys: Vec<(i64, usize)>, reason: &str) {
        keys.sort_unstable();
        for group in keys.chunk_by(|a, b| a.0 == b.0) {
            for (x, p) in group.iter().enumerate() {
                for q in &group[x + 1..] {
                    if p.1 != q.1 {
                        self.push(p.1, q.1, reason);
                    }
                }
            }
        }
    }
}

/// Lists every coordinate tie or degenerate contact the predicates would
/// reject.
pub fn check_general_position(instance: &Instance) -> GeneralPositionReport {
    let mut r = Reporter { violations: Vec::new(), total: 0 };
    match instance {
        Instance::Intervals(v) => {
            for (i, it) in v.iter().enumerate() {
                if let Err(e) = validate_interval(it, i) {
                    r.push(i, i, e.to_string());
                }
            }
            r.shared(v.iter().enumerate().flat_map(|(i, it)| [(it.a, i), (it.b, i)]).collect(), "shared endpoint");
        }
        Instance::GroundedLShapes(v) => {
            for (i, l) in v.iter().enumerate() {
                if let Err(e) = validate_grounded(l, i) {
                    r.push(i, i, e.to_string());
                }
            }
            r.shared(v.iter().enumerate().map(|(i, l)| (l.x, i)).collect(), "equal basepoints");
            r.shared(v.iter().enumerate().map(|(i, l)| (l.depth, i)).collect(), "equal depths");
            let mut keys: Vec<(i64, usize)> = v.iter().enumerate().map(|(i, l)| (l.x, i)).collect();
            keys.sort_unstable();
            for (j, l) in v.iter().enumerate() {
                let lo = keys.partition_point(|k| k.0 < l.end());
                for k in keys[lo..].iter().take_while(|k| k.0 == l.end()) {
                    r.push(j, k.1, "basepoint at the end of a horizontal part");
                }
            }
        }
        Instance::CornerLShapes(v) => {
            for (i, l) in v.iter().enumerate() {
                if let Err(e) = validate_corner(l, i) {
                    r.push(i, i, e.to_string());
                }
            }
            r.shared(v.iter().enumerate().flat_map(|(i, l)| [(l.x, i), (l.x + l.width, i)]).collect(), "shared x-coordinate");
            r.shared(v.iter().enumerate().flat_map(|(i, l)| [(l.y, i), (l.y + l.height, i)]).collect(), "shared y-coordinate");
        }
        Instance::Frames(v) => {
            for (i, f) in v.iter().enumerate() {
                if let Err(e) = validate_frame(f, i) {
                    r.push(i, i, e.to_string());
                }
            }
            r.shared(v.iter().enumerate().flat_map(|(i, f)| [(f.x1, i), (f.x2, i)]).collect(), "shared x-coordinate");
            r.shared(v.iter().enumerate().flat_map(|(i, f)| [(f.y1, i), (f.y2, i)]).collect(), "shared y-coordinate");
        }
        Instance::Strings(v) => {
            let mut valid = true;
            for (i, p) in v.iter().enumerate() {
                if let Err(e) = p.validate(i) {
                    r.push(i, i, e.to_string());
                    valid = false;
                }
            }
            if valid {
                let boxes: Vec<BBox> = v.iter().map(Polyline::bbox).collect();
                for (i, j) in bbox_pairs(&boxes) {
                    if let Err(e) = polyline_crossings(&v[i], &v[j]) {
                        r.push(i, j, e.to_string());
                    }
                }
            }
        }
        Instance::Hypergraph(_) => {}
    }
    GeneralPositionReport { ok: r.total == 0, violations: r.violations }
}

/// Removes coordinate ties by a deterministic symbolic perturbation.
///
/// Inputs already in general position are returned unchanged. Otherwise
/// every coordinate `v` becomes `v * 2n + j`, where `j` orders the tied
/// coordinates. For intervals, grounded L-shapes and frames the order is
/// chosen so that the new graph equals the graph of the closed input shapes
/// (touching counts as meeting). Corner L-shapes and strings are shifted by
/// their input rank instead.
pub fn normalize(instance: &Instance) -> Instance {
    if check_general_position(instance).ok {
        return instance.clone();
    }
    match instance {
        Instance::Intervals(v) => Instance::Intervals(normalize_intervals(v)),
        Instance::GroundedLShapes(v) => Instance::GroundedLShapes(normalize_grounded(v)),
        Instance::Frames(v) => Instance::Frames(normalize_frames(v)),
        Instance::CornerLShapes(v) => {
            let s = 2 * v.len() as i64;
            Instance::CornerLShapes(
                v.iter()
                    .enumerate()
                    .map(|(i, l)| CornerLShape::new(l.x * s + i as i64, l.y * s + i as i64, l.height * s, l.width * s))
                    .collect(),
            )
        }
        Instance::Strings(v) => {
            let n = v.len() as i64;
            Instance::Strings(
                v.iter()
                    .enumerate()
                    .map(|(i, p)| {
                        let i = i as i64;
                        Polyline::new(p.points.iter().map(|q| Point::new(q.x * 2 * n + i, q.y * 2 * n + n - 1 - i)).collect())
                    })
                    .collect(),
            )
        }
        Instance::Hypergraph(h) => Instance::Hypergraph(h.clone()),
    }
}

/// Assigns `v * scale + j` to coordinates sorted by `cmp`, where `j` counts
/// earlier coordinates with the same value.
fn spread<K>(mut keys: Vec<(i64, K, usize)>, scale: i64, slots: usize, cmp: impl Fn(&K, &K) -> Ordering) -> Vec<i64> {
    keys.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| cmp(&a.1, &b.1)));
    let mut out = vec![0; slots];
    let mut j = 0;
    for (pos, k) in keys.iter().enumerate() {
        j = if pos > 0 && keys[pos - 1].0 == k.0 { j + 1 } else { 0 };
        out[k.2] = k.0 * scale + j;
    }
    out
}

fn normalize_intervals(v: &[Interval]) -> Vec<Interval> {
    let s = 2 * v.len() as i64;
    let keys = v
        .iter()
        .enumerate()
        .flat_map(|(i, it)| {
            let rank = i as i64;
            [(it.a, (0, -it.len(), rank), 2 * i), (it.b, (1, it.len(), -rank), 2 * i + 1)]
        })
        .collect();
    let c = spread(keys, s, 2 * v.len(), |a, b| a.cmp(b));
    (0..v.len()).map(|i| Interval::new(c[2 * i], c[2 * i + 1])).collect()
}

fn normalize_grounded(v: &[GroundedLShape]) -> Vec<GroundedLShape> {
    let s = 2 * v.len() as i64;
    let xkeys = v
        .iter()
        .enumerate()
        .flat_map(|(i, l)| [(l.x, (0, l.depth, i as i64), 2 * i), (l.end(), (1, 0, i as i64), 2 * i + 1)])
        .collect();
    let xs = spread(xkeys, s, 2 * v.len(), |a, b| a.cmp(b));
    let dkeys = v.iter().enumerate().map(|(i, l)| (l.depth, xs[2 * i], i)).collect();
    let ds = spread(dkeys, s, v.len(), |a, b| a.cmp(b));
    (0..v.len()).map(|i| GroundedLShape::new(xs[2 * i], ds[i], xs[2 * i + 1] - xs[2 * i])).collect()
}

fn normalize_frames(v: &[Frame]) -> Vec<Frame> {
    let s = 2 * v.len() as i64;
    let axis = |lo: &dyn Fn(&Frame) -> i64, hi: &dyn Fn(&Frame) -> i64, other_extent: &dyn Fn(&Frame) -> i64| {
        let keys = v
            .iter()
            .enumerate()
            .flat_map(|(i, f)| {
                let e = other_extent(f);
                [(lo(f), (0, e, i as i64), 2 * i), (hi(f), (1, -e, i as i64), 2 * i + 1)]
            })
            .collect();
        spread(keys, s, 2 * v.len(), |a, b| a.cmp(b))
    };
    let xs = axis(&|f| f.x1, &|f| f.x2, &|f| f.y2 - f.y1);
    let ys = axis(&|f| f.y1, &|f| f.y2, &|f| f.x2 - f.x1);
    (0..v.len()).map(|i| Frame::new(xs[2 * i], ys[2 * i], xs[2 * i + 1], ys[2 * i + 1])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(a: i64, b: i64) -> Interval {
        Interval::new(a, b)
    }

    fn gl(x: i64, d: i64, w: i64) -> GroundedLShape {
        GroundedLShape::new(x, d, w)
    }

    fn square(lo: i64, hi: i64) -> Frame {
        Frame::new(lo, lo, hi, hi)
    }

    fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
        (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect()
    }

    #[test]
    fn interval_predicate_examples() {
        assert!(intervals_overlap(&iv(0, 2), &iv(1, 3)).unwrap());
        assert!(!intervals_overlap(&iv(0, 4), &iv(1, 2)).unwrap());
        assert!(!intervals_overlap(&iv(0, 1), &iv(2, 3)).unwrap());
        assert!(intervals_overlap(&iv(0, 2), &iv(2, 3)).is_err());
    }

    #[test]
    fn overlap_graph_examples() {
        let g = overlap_graph(&[iv(0, 3), iv(2, 5), iv(4, 7)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(overlap_graph(&[iv(0, 9), iv(1, 8), iv(2, 7)]).unwrap().num_edges(), 0);
        let g = overlap_graph(&[iv(0, 4), iv(1, 5), iv(3, 6)]).unwrap();
        assert_eq!(g.num_edges(), 3);
        assert!(matches!(overlap_graph(&[iv(0, 2), iv(0, 3)]), Err(Error::GeneralPosition { a: 0, b: 1, .. })));
    }

    #[test]
    fn grounded_predicate_examples() {
        assert!(grounded_lshapes_intersect(&gl(0, 1, 5), &gl(2, 3, 1)).unwrap());
        assert!(!grounded_lshapes_intersect(&gl(0, 3, 5), &gl(2, 1, 9)).unwrap());
        assert!(!grounded_lshapes_intersect(&gl(0, 1, 1), &gl(5, 2, 1)).unwrap());
        assert!(grounded_lshapes_intersect(&gl(0, 1, 1), &gl(0, 2, 1)).is_err());
        assert!(grounded_lshapes_intersect(&gl(0, 1, 2), &gl(2, 2, 1)).is_err());
    }

    #[test]
    fn frame_predicate_examples() {
        assert!(frames_intersect(&square(0, 4), &square(2, 6)).unwrap());
        assert!(!frames_intersect(&square(0, 6), &square(2, 4)).unwrap());
        assert!(!frames_intersect(&square(0, 1), &square(2, 3)).unwrap());
        assert!(frames_intersect(&square(0, 4), &square(0, 6)).is_err());
    }

    #[test]
    fn corner_predicate_examples() {
        let a = CornerLShape::new(0, 0, 4, 4);
        let b = CornerLShape::new(2, -2, 4, 4);
        assert!(corner_lshapes_intersect(&a, &b).unwrap());
        assert!(!corner_lshapes_intersect(&a, &CornerLShape::new(10, 10, 1, 1)).unwrap());
        assert!(!corner_lshapes_intersect(&CornerLShape::new(0, 0, 1, 1), &CornerLShape::new(0, 5, 1, 1)).unwrap());
        assert!(corner_lshapes_intersect(&CornerLShape::new(0, 0, 3, 1), &CornerLShape::new(0, 2, 1, 1)).is_err());
        assert!(corner_lshapes_intersect(&a, &CornerLShape::new(4, -1, 3, 1)).is_err());
    }

    #[test]
    fn intersection_graphs_lift_predicates() {
        let g = grounded_intersection_graph(&[gl(0, 1, 5), gl(2, 3, 1), gl(20, 1, 1)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let g = frames_intersection_graph(&[square(0, 4), square(2, 6), square(10, 11)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let g = corner_intersection_graph(&[CornerLShape::new(0, 0, 4, 4), CornerLShape::new(2, -2, 4, 4)]).unwrap();
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn to_grounded_matches_figure() {
        let out = to_grounded_lshapes(&[iv(0, 3), iv(2, 8), iv(5, 7)]).unwrap();
        assert_eq!(out, vec![gl(0, 1, 3), gl(2, 3, 6), gl(5, 2, 2)]);
        let w1 = out[0];
        let w3 = out[1];
        assert!(w1.x < w3.x && w3.x < w1.end() && w3.depth > w1.depth);
        assert_eq!(to_grounded_lshapes(&[iv(0, 1)]).unwrap(), vec![gl(0, 1, 1)]);
    }

    #[test]
    fn frames_examples() {
        assert_eq!(containment_heights(&[iv(0, 9), iv(1, 8)]).unwrap(), vec![2, 1]);
        let f = to_frames(&[iv(0, 9), iv(1, 8)]).unwrap();
        assert!(!frames_intersect(&f[0], &f[1]).unwrap());
        assert!(f[1].strictly_inside(&f[0]));
        assert_eq!(containment_heights(&[iv(0, 3), iv(2, 5)]).unwrap(), vec![1, 1]);
        let f = to_frames(&[iv(0, 3), iv(2, 5)]).unwrap();
        assert!(frames_intersect(&f[0], &f[1]).unwrap());
    }

    #[test]
    fn lio_examples() {
        assert_eq!(grounded_to_overlap(&[gl(2, 3, 5)], 4).unwrap(), vec![iv(-2, 3)]);
        assert!(grounded_to_overlap(&[], 0).unwrap().is_empty());
        assert!(matches!(grounded_to_overlap(&[gl(5, 1, 1)], 4), Err(Error::NotCrossingLine { index: 0 })));
    }

    #[test]
    fn crossing_examples() {
        let a = Polyline::new(vec![Point::new(0, 0), Point::new(2, 2)]);
        let b = Polyline::new(vec![Point::new(0, 2), Point::new(2, 0)]);
        let c = polyline_crossings(&a, &b).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].t1, Ratio::new(1, 2));
        assert_eq!(c[0].t2, Ratio::new(1, 2));
        let far = Polyline::new(vec![Point::new(10, 10), Point::new(12, 10)]);
        assert!(polyline_crossings(&a, &far).unwrap().is_empty());
        let zig = Polyline::new(vec![Point::new(0, 0), Point::new(1, 4), Point::new(2, 0), Point::new(3, 4)]);
        let line = Polyline::new(vec![Point::new(-1, 1), Point::new(5, 1)]);
        let c = polyline_crossings(&zig, &line).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.windows(2).all(|w| w[0].key1() < w[1].key1()));
        let touch = Polyline::new(vec![Point::new(1, 1), Point::new(5, 1)]);
        assert!(polyline_crossings(&a, &touch).is_err());
        let collinear = Polyline::new(vec![Point::new(1, 1), Point::new(3, 3)]);
        assert!(polyline_crossings(&a, &collinear).is_err());
    }

    #[test]
    fn normalize_examples() {
        let inst = Instance::Intervals(vec![iv(0, 2), iv(0, 3)]);
        let Instance::Intervals(out) = normalize(&inst) else { panic!() };
        assert!(check_general_position(&Instance::Intervals(out.clone())).ok);
        assert!(out[1].a < out[0].a && out[0].b < out[1].b);
        let gp = Instance::Intervals(vec![iv(0, 3), iv(2, 5)]);
        assert_eq!(normalize(&gp), gp);
        assert!(!check_general_position(&inst).ok);
    }

    fn closed_interval_overlap(i: &Interval, j: &Interval) -> bool {
        let meet = i.a <= j.b && j.a <= i.b;
        let nested = (i.a <= j.a && j.b <= i.b) || (j.a <= i.a && i.b <= j.b);
        meet && !nested
    }

    fn closed_seg_meet(p: (i64, i64, i64, i64), q: (i64, i64, i64, i64)) -> bool {
        p.0.max(q.0) <= p.2.min(q.2) && p.1.max(q.1) <= p.3.min(q.3)
    }

    fn grounded_segments(l: &GroundedLShape) -> [(i64, i64, i64, i64); 2] {
        [(l.x, -l.depth, l.x, 0), (l.x, -l.depth, l.end(), -l.depth)]
    }

    fn frame_segments(f: &Frame) -> [(i64, i64, i64, i64); 4] {
        [(f.x1, f.y1, f.x1, f.y2), (f.x1, f.y1, f.x2, f.y1), (f.x2, f.y1, f.x2, f.y2), (f.x1, f.y2, f.x2, f.y2)]
    }

    fn closed_graph<T>(items: &[T], meet: impl Fn(&T, &T) -> bool) -> Vec<Vec<usize>> {
        (0..items.len())
            .map(|i| (0..items.len()).filter(|&j| j != i && meet(&items[i], &items[j])).collect())
            .collect()
    }

    fn intervals_strategy(max_n: usize, span: i64) -> impl Strategy<Value = Vec<Interval>> {
        prop::collection::vec((0..span, 1..span), 0..max_n)
            .prop_map(|v| v.into_iter().map(|(a, l)| iv(a, a + l)).collect())
    }

    fn distinct_intervals(max_n: usize) -> impl Strategy<Value = Vec<Interval>> {
        (0..max_n).prop_flat_map(|n| {
            Just((0..2 * n as i64).collect::<Vec<_>>()).prop_shuffle().prop_map(|p| {
                p.chunks(2).map(|c| iv(c[0].min(c[1]), c[0].max(c[1]))).collect()
            })
        })
    }

    fn distinct_grounded(max_n: usize) -> impl Strategy<Value = Vec<GroundedLShape>> {
        (0..max_n)
            .prop_flat_map(|n| {
                (
                    Just((0..n as i64).collect::<Vec<_>>()).prop_shuffle(),
                    Just((1..=n as i64).collect::<Vec<_>>()).prop_shuffle(),
                    prop::collection::vec(0..n as i64, n),
                )
            })
            .prop_map(|(xs, ds, ws)| {
                xs.iter().zip(&ds).zip(&ws).map(|((&x, &d), &w)| gl(4 * x, d, 4 * w + 2)).collect()
            })
    }

    proptest! {
        #[test]
        fn predicates_are_symmetric(a in 0i64..20, b in 1i64..20, c in 0i64..20, d in 1i64..20, e in 1i64..20, f in 1i64..20) {
            let (i, j) = (iv(a, a + b), iv(c, c + d));
            prop_assert_eq!(intervals_overlap(&i, &j), intervals_overlap(&j, &i));
            let (l1, l2) = (gl(a, b, e), gl(c, d, f));
            prop_assert_eq!(grounded_lshapes_intersect(&l1, &l2).is_ok(), grounded_lshapes_intersect(&l2, &l1).is_ok());
            if let (Ok(x), Ok(y)) = (grounded_lshapes_intersect(&l1, &l2), grounded_lshapes_intersect(&l2, &l1)) {
                prop_assert_eq!(x, y);
            }
            let (f1, f2) = (Frame::new(a, c, a + b, c + e), Frame::new(c, a, c + d, a + f));
            prop_assert_eq!(frames_intersect(&f1, &f2), frames_intersect(&f2, &f1));
        }

        #[test]
        fn transforms_preserve_adjacency(items in distinct_intervals(60)) {
            let g = adjacency(&overlap_graph(&items).unwrap());
            let ls = to_grounded_lshapes(&items).unwrap();
            prop_assert_eq!(&adjacency(&grounded_intersection_graph(&ls).unwrap()), &g);
            let fs = to_frames(&items).unwrap();
            prop_assert_eq!(&adjacency(&frames_intersection_graph(&fs).unwrap()), &g);
        }

        #[test]
        fn lio_preserves_adjacency(items in distinct_grounded(60), line in 0i64..240) {
            let line = 4 * line + 1;
            let crossing: Vec<GroundedLShape> = items.into_iter().filter(|l| l.x < line && line < l.end()).collect();
            let ivs = grounded_to_overlap(&crossing, line).unwrap();
            prop_assert_eq!(
                adjacency(&overlap_graph(&ivs).unwrap()),
                adjacency(&grounded_intersection_graph(&crossing).unwrap())
            );
        }

        #[test]
        fn crossings_are_symmetric(
            p in prop::collection::vec((0i64..40, 0i64..40), 2..6),
            q in prop::collection::vec((0i64..40, 0i64..40), 2..6),
        ) {
            let p = Polyline::new(p.into_iter().map(|(x, y)| Point::new(2 * x, 2 * y)).collect());
            let q = Polyline::new(q.into_iter().map(|(x, y)| Point::new(2 * x + 1, 2 * y + 1)).collect());
            prop_assume!(p.validate(0).is_ok() && q.validate(1).is_ok());
            if let (Ok(a), Ok(b)) = (polyline_crossings(&p, &q), polyline_crossings(&q, &p)) {
                let mut a: Vec<_> = a.into_iter().map(|c| (c.key1(), c.key2())).collect();
                let mut b: Vec<_> = b.into_iter().map(|c| (c.key2(), c.key1())).collect();
                a.sort();
                b.sort();
                prop_assert_eq!(a, b);
            }
        }

        #[test]
        fn normalized_intervals_keep_closed_overlaps(items in intervals_strategy(25, 8)) {
            let Instance::Intervals(out) = normalize(&Instance::Intervals(items.clone())) else { unreachable!() };
            prop_assert!(check_general_position(&Instance::Intervals(out.clone())).ok);
            prop_assert_eq!(adjacency(&overlap_graph(&out).unwrap()), closed_graph(&items, closed_interval_overlap));
        }

        #[test]
        fn normalized_grounded_keep_closed_contacts(
            v in prop::collection::vec((0i64..8, 1i64..6, 1i64..6), 0..20)
        ) {
            let items: Vec<GroundedLShape> = v.into_iter().map(|(x, d, w)| gl(x, d, w)).collect();
            let Instance::GroundedLShapes(out) = normalize(&Instance::GroundedLShapes(items.clone())) else { unreachable!() };
            prop_assert!(check_general_position(&Instance::GroundedLShapes(out.clone())).ok);
            let expected = closed_graph(&items, |a, b| {
                grounded_segments(a).iter().any(|p| grounded_segments(b).iter().any(|q| closed_seg_meet(*p, *q)))
            });
            prop_assert_eq!(adjacency(&grounded_intersection_graph(&out).unwrap()), expected);
        }

        #[test]
        fn normalized_frames_keep_closed_contacts(
            v in prop::collection::vec((0i64..6, 0i64..6, 1i64..5, 1i64..5), 0..14)
        ) {
            let items: Vec<Frame> = v.into_iter().map(|(x, y, w, h)| Frame::new(x, y, x + w, y + h)).collect();
            let Instance::Frames(out) = normalize(&Instance::Frames(items.clone())) else { unreachable!() };
            prop_assert!(check_general_position(&Instance::Frames(out.clone())).ok);
            let expected = closed_graph(&items, |a, b| {
                frame_segments(a).iter().any(|p| frame_segments(b).iter().any(|q| closed_seg_meet(*p, *q)))
            });
            prop_assert_eq!(adjacency(&frames_intersection_graph(&out).unwrap()), expected);
        }

        #[test]
        fn normalized_corners_are_in_general_position(
            v in prop::collection::vec((0i64..6, 0i64..6, 1i64..5, 1i64..5), 0..14)
        ) {
            let items: Vec<CornerLShape> = v.into_iter().map(|(x, y, h, w)| CornerLShape::new(x, y, h, w)).collect();
            let out = normalize(&Instance::CornerLShapes(items));
            prop_assert!(check_general_position(&out).ok);
            prop_assert!(out.graph().is_ok());
        }
    }
}
