//! Hypergraphs, graphs, colorings and the verifiers every algorithm is
//! checked against.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A hypergraph on vertices `0..n` with explicitly stored hyperedges.
///
/// Every hyperedge is non-empty and strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting empty, unsorted or out-of-range edges.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        for (index, e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::EmptyHyperedge { index });
            }
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::UnsortedHyperedge { index });
            }
            if let Some(&v) = e.last() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
        }
        Ok(Hypergraph { n, edges })
    }

    /// Builds a hypergraph from arbitrary vertex lists, sorting and
    /// deduplicating each one. Empty lists are still rejected.
    pub fn from_sets(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let edges = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e.dedup();
                e
            })
            .collect();
        Hypergraph::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Largest number of hyperedges containing a single vertex.
    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Restricts every hyperedge to `keep`, dropping edges that become empty.
    ///
    /// Vertex `keep[i]` becomes vertex `i` of the result; the returned vector
    /// is `keep` itself, i.e. the map from new ids back to old ids.
    pub fn induced(&self, keep: &[usize]) -> Result<(Hypergraph, Vec<usize>)> {
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            if new_id[v] != usize::MAX {
                return Err(Error::InvalidParameter(format!("vertex {v} kept twice")));
            }
            new_id[v] = i;
        }
        let monotone = keep.windows(2).all(|w| w[0] < w[1]);
        let mut edges = Vec::new();
        for e in &self.edges {
            let mut r: Vec<usize> = e
                .iter()
                .filter_map(|&v| (new_id[v] != usize::MAX).then_some(new_id[v]))
                .collect();
            if r.is_empty() {
                continue;
            }
            if !monotone {
                r.sort_unstable();
            }
            edges.push(r);
        }
        Ok((Hypergraph { n: keep.len(), edges }, keep.to_vec()))
    }
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list; duplicate edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_proper(&self, colors: &[usize]) -> bool {
        colors.len() == self.n() && self.edges().all(|(u, v)| colors[u] != colors[v])
    }
}

/// A total assignment of color ids to vertices; every id is below
/// `palette_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
    palette_size: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, palette_size: usize) -> Result<Self> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= palette_size) {
            return Err(Error::ColorOutOfPalette { vertex, color, palette: palette_size });
        }
        Ok(Coloring { colors, palette_size })
    }

    /// Palette is one more than the largest color id.
    pub fn from_colors(colors: Vec<usize>) -> Self {
        let palette_size = colors.iter().max().map_or(0, |&c| c + 1);
        Coloring { colors, palette_size }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn into_colors(self) -> Vec<usize> {
        self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn distinct_colors(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }

    /// Relabels the used colors densely, keeping their relative order.
    pub fn compacted(&self) -> Coloring {
        let used: Vec<usize> = self.colors.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let colors = self
            .colors
            .iter()
            .map(|c| used.binary_search(c).expect("color is in the used set"))
            .collect();
        Coloring { colors, palette_size: used.len() }
    }
}

/// One hyperedge `N_G(v)` per vertex with a non-empty neighborhood.
pub fn neighborhood_hypergraph(g: &Graph) -> Hypergraph {
    neighborhood_hypergraph_with_owners(g).0
}

/// Like [`neighborhood_hypergraph`], also returning the vertex whose
/// neighborhood each hyperedge is.
pub fn neighborhood_hypergraph_with_owners(g: &Graph) -> (Hypergraph, Vec<usize>) {
    let mut edges = Vec::new();
    let mut owners = Vec::new();
    for v in 0..g.n() {
        if !g.neighbors(v).is_empty() {
            edges.push(g.neighbors(v).to_vec());
            owners.push(v);
        }
    }
    (Hypergraph { n: g.n(), edges }, owners)
}

fn check_len(h: &Hypergraph, c: &Coloring) -> Result<()> {
    if c.len() != h.n() {
        return Err(Error::LengthMismatch { expected: h.n(), got: c.len() });
    }
    Ok(())
}

/// Index of the first hyperedge in which no color appears between 1 and
/// `k` times.
pub fn first_k_cf_violation(h: &Hypergraph, c: &Coloring, k: usize) -> Result<Option<usize>> {
    check_len(h, c)?;
    let colors = c.colors();
    let mut count = vec![0usize; colors.iter().max().map_or(0, |&m| m + 1)];
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            count[colors[v]] += 1;
        }
        let ok = e.iter().any(|&v| (1..=k).contains(&count[colors[v]]));
        for &v in e {
            count[colors[v]] = 0;
        }
        if !ok {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// True iff every hyperedge has a color of multiplicity in `[1, k]`.
pub fn verify_k_cf(h: &Hypergraph, c: &Coloring, k: usize) -> Result<bool> {
    Ok(first_k_cf_violation(h, c, k)?.is_none())
}

/// Index of the first monochromatic hyperedge of size at least `k`.
pub fn first_k_weak_violation(h: &Hypergraph, c: &Coloring, k: usize) -> Result<Option<usize>> {
    check_len(h, c)?;
    let colors = c.colors();
    Ok(h.edges().iter().position(|e| {
        e.len() >= k && e.iter().all(|&v| colors[v] == colors[e[0]])
    }))
}

/// True iff no hyperedge of size at least `k` is monochromatic.
pub fn verify_k_weak(h: &Hypergraph, c: &Coloring, k: usize) -> Result<bool> {
    Ok(first_k_weak_violation(h, c, k)?.is_none())
}

/// A min-degree removal order and the largest degree seen at removal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrder {
    pub order: Vec<usize>,
    pub degeneracy: usize,
}

/// Repeatedly removes a vertex of minimum remaining degree, ties to the
/// smallest id.
pub fn degeneracy_order(g: &Graph) -> DegeneracyOrder {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    while let Some((d, v)) = queue.pop_first() {
        degeneracy = degeneracy.max(d);
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                queue.remove(&(deg[u], u));
                deg[u] -= 1;
                queue.insert((deg[u], u));
            }
        }
    }
    DegeneracyOrder { order, degeneracy }
}

/// Greedy coloring in reverse degeneracy order; uses at most
/// `degeneracy + 1` colors.
pub fn degeneracy_color(g: &Graph) -> Coloring {
    degeneracy_color_with_order(g).0
}

pub fn degeneracy_color_with_order(g: &Graph) -> (Coloring, DegeneracyOrder) {
    let ord = degeneracy_order(g);
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    let mut seen = vec![usize::MAX; n + 1];
    for (step, &v) in ord.order.iter().rev().enumerate() {
        for &u in g.neighbors(v) {
            if colors[u] != usize::MAX {
                seen[colors[u]] = step;
            }
        }
        colors[v] = (0..).find(|&c| seen[c] != step).expect("a free color exists");
    }
    (Coloring::from_colors(colors), ord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn naive_k_cf(h: &Hypergraph, c: &[usize], k: usize) -> bool {
        h.edges().iter().all(|e| {
            e.iter().any(|&v| {
                let mult = e.iter().filter(|&&u| c[u] == c[v]).count();
                mult >= 1 && mult <= k
            })
        })
    }

    #[test]
    fn neighborhoods() {
        let h = neighborhood_hypergraph(&path3());
        assert_eq!(h.edges(), &[vec![1], vec![0, 2], vec![1]]);
        assert_eq!(neighborhood_hypergraph(&Graph::empty(4)).m(), 0);
        let h = neighborhood_hypergraph(&complete(3));
        assert_eq!(h.edges(), &[vec![1, 2], vec![0, 2], vec![0, 1]]);
    }

    #[test]
    fn induced_examples() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        let (sub, ids) = h.induced(&[0, 2]).unwrap();
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.edges(), &[vec![0, 1]]);
        assert_eq!(ids, vec![0, 2]);
        let (all, _) = h.induced(&[0, 1, 2]).unwrap();
        assert_eq!(all, h);
        let h = Hypergraph::new(3, vec![vec![0, 1]]).unwrap();
        assert_eq!(h.induced(&[2]).unwrap().0.m(), 0);
        assert!(matches!(h.induced(&[3]), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Hypergraph::new(3, vec![vec![]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![1, 0]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![0, 3]]).is_err());
        assert!(Graph::from_edges(2, [(1, 1)]).is_err());
    }

    #[test]
    fn verify_examples() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let c = Coloring::from_colors(vec![1, 1, 2]);
        assert!(!verify_k_cf(&h, &c, 1).unwrap());
        let single = Hypergraph::new(3, vec![vec![2]]).unwrap();
        for k in 1..4 {
            assert!(verify_k_cf(&single, &c, k).unwrap());
        }
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(verify_k_cf(&h, &c, 2).unwrap());
        let short = Coloring::from_colors(vec![0]);
        assert!(matches!(verify_k_cf(&h, &short, 1), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn weak_examples() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(!verify_k_weak(&h, &Coloring::from_colors(vec![1, 1, 1]), 3).unwrap());
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        assert!(verify_k_weak(&h, &Coloring::from_colors(vec![1, 1]), 3).unwrap());
        assert!(verify_k_weak(&h, &Coloring::from_colors(vec![1, 2]), 2).unwrap());
    }

    #[test]
    fn max_degree_examples() {
        let fano = Hypergraph::new(
            7,
            vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        )
        .unwrap();
        assert_eq!(fano.max_degree(), 3);
        assert_eq!(Hypergraph::new(3, vec![vec![0, 1], vec![0, 2]]).unwrap().max_degree(), 2);
        assert_eq!(Hypergraph::new(3, vec![]).unwrap().max_degree(), 0);
    }

    #[test]
    fn degeneracy_examples() {
        let tree = Graph::from_edges(8, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6), (5, 7)]).unwrap();
        let c = degeneracy_color(&tree);
        assert!(tree.is_proper(c.colors()));
        assert!(c.palette_size() <= 2);
        let k4 = complete(4);
        let c = degeneracy_color(&k4);
        assert!(k4.is_proper(c.colors()));
        assert_eq!(c.palette_size(), 4);
        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let c = degeneracy_color(&c5);
        assert!(c5.is_proper(c.colors()));
        assert!(c.palette_size() <= 3);
    }

    #[test]
    fn degeneracy_ties_go_to_smallest_id() {
        let ord = degeneracy_order(&complete(3));
        assert_eq!(ord.order, vec![0, 1, 2]);
        assert_eq!(ord.degeneracy, 2);
    }

    #[test]
    fn compaction_keeps_order() {
        let c = Coloring::from_colors(vec![7, 3, 7, 9]).compacted();
        assert_eq!(c.colors(), &[1, 0, 1, 2]);
        assert_eq!(c.palette_size(), 3);
    }

    fn hypergraph_and_coloring() -> impl Strategy<Value = (Hypergraph, Vec<usize>, usize)> {
        (1usize..=30).prop_flat_map(|n| {
            (
                prop::collection::vec(prop::collection::btree_set(0..n, 1..=n.min(8)), 0..12),
                prop::collection::vec(0usize..4, n),
                1usize..4,
            )
                .prop_map(move |(edges, colors, k)| {
                    let edges = edges.into_iter().map(|e| e.into_iter().collect()).collect();
                    (Hypergraph::new(n, edges).unwrap(), colors, k)
                })
        })
    }

    fn random_graph() -> impl Strategy<Value = Graph> {
        (1usize..25).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..60).prop_map(move |pairs| {
                Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn verifier_matches_naive((h, colors, k) in hypergraph_and_coloring()) {
            let c = Coloring::from_colors(colors.clone());
            prop_assert_eq!(verify_k_cf(&h, &c, k).unwrap(), naive_k_cf(&h, &colors, k));
        }

        #[test]
        fn cf_implies_k_cf((h, colors, k) in hypergraph_and_coloring()) {
            let c = Coloring::from_colors(colors);
            if verify_k_cf(&h, &c, 1).unwrap() {
                prop_assert!(verify_k_cf(&h, &c, k).unwrap());
            }
        }

        #[test]
        fn weak2_is_proper((h, colors, _k) in hypergraph_and_coloring()) {
            let c = Coloring::from_colors(colors.clone());
            let proper = h.edges().iter().all(|e| e.len() < 2 || e.iter().any(|&v| colors[v] != colors[e[0]]));
            prop_assert_eq!(verify_k_weak(&h, &c, 2).unwrap(), proper);
        }

        #[test]
        fn degeneracy_coloring_is_proper(g in random_graph()) {
            let (c, ord) = degeneracy_color_with_order(&g);
            prop_assert!(g.is_proper(c.colors()));
            prop_assert!(c.palette_size() <= ord.degeneracy + 1);
        }
    }
}
