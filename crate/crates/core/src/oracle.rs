//! Exact k-CF chromatic numbers of small hypergraphs by backtracking.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactResult {
    Value(usize),
    ExceedsLimit,
}

impl ExactResult {
    pub fn value(self) -> Option<usize> {
        match self {
            ExactResult::Value(c) => Some(c),
            ExactResult::ExceedsLimit => None,
        }
    }
}

pub const DEFAULT_NODE_CAP: u64 = 1 << 32;

pub fn exact_k_cf_chromatic(h: &Hypergraph, k: usize, limit: Option<usize>) -> Result<ExactResult> {
    exact_k_cf_chromatic_capped(h, k, limit, DEFAULT_NODE_CAP)
}

/// Smallest palette admitting a k-CF coloring, or `ExceedsLimit` if none
/// with at most `limit` colors exists. Fails once `cap` search nodes have
/// been visited.
pub fn exact_k_cf_chromatic_capped(h: &Hypergraph, k: usize, limit: Option<usize>, cap: u64) -> Result<ExactResult> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let n = h.n();
    if n == 0 {
        return Ok(ExactResult::Value(0));
    }
    let deg = h.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut closing = vec![Vec::new(); n];
    for e in h.edges() {
        let last = e.iter().map(|&v| pos[v]).max().expect("non-empty edge");
        closing[last].push(e.clone());
    }
    let mut search = Search { order, closing, k, colors: vec![usize::MAX; n], count: Vec::new(), nodes: 0, cap };
    let max = limit.unwrap_or(n).min(n);
    for c in 1..=max {
        search.count = vec![0; c];
        if search.feasible(0, 0, c)? {
            return Ok(ExactResult::Value(c));
        }
    }
    Ok(ExactResult::ExceedsLimit)
}

struct Search {
    order: Vec<usize>,
    closing: Vec<Vec<Vec<usize>>>,
    k: usize,
    colors: Vec<usize>,
    count: Vec<usize>,
    nodes: u64,
    cap: u64,
}

impl Search {
    fn edge_ok(&mut self, e: &[usize]) -> bool {
        for &v in e {
            self.count[self.colors[v]] += 1;
        }
        let ok = e.iter().any(|&v| (1..=self.k).contains(&self.count[self.colors[v]]));
        for &v in e {
            self.count[self.colors[v]] = 0;
        }
        ok
    }

    fn feasible(&mut self, i: usize, used: usize, c: usize) -> Result<bool> {
        if i == self.order.len() {
            return Ok(true);
        }
        let v = self.order[i];
        for col in 0..c.min(used + 1) {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::SearchCap { cap: self.cap });
            }
            self.colors[v] = col;
            let closing = std::mem::take(&mut self.closing[i]);
            let ok = closing.iter().all(|e| self.edge_ok(e));
            self.closing[i] = closing;
            if ok && self.feasible(i + 1, used.max(col + 1), c)? {
                return Ok(true);
            }
        }
        self.colors[v] = usize::MAX;
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{verify_k_cf, Coloring};
    use crate::instances::{gen_frames_clique_gadget, random_hypergraph};
    use crate::geometry::frames_intersection_graph;
    use crate::hypergraph::neighborhood_hypergraph;
    use proptest::prelude::*;

    fn ranges(n: usize) -> Hypergraph {
        Hypergraph::new(n, (0..n).flat_map(|i| (i..n).map(move |j| (i..=j).collect())).collect()).unwrap()
    }

    /// Tries every coloring with `c` colors, smallest `c` first.
    fn naive(h: &Hypergraph, k: usize) -> usize {
        let n = h.n();
        if n == 0 {
            return 0;
        }
        for c in 1..=n {
            let total = c.pow(n as u32);
            for code in 0..total {
                let mut x = code;
                let colors: Vec<usize> = (0..n)
                    .map(|_| {
                        let d = x % c;
                        x /= c;
                        d
                    })
                    .collect();
                if verify_k_cf(h, &Coloring::new(colors, c).unwrap(), k).unwrap() {
                    return c;
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn discrete_interval_seven() {
        assert_eq!(exact_k_cf_chromatic(&ranges(7), 1, None).unwrap(), ExactResult::Value(3));
    }

    #[test]
    fn single_pair_needs_two() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(exact_k_cf_chromatic(&h, 1, None).unwrap(), ExactResult::Value(2));
        assert_eq!(exact_k_cf_chromatic(&h, 2, None).unwrap(), ExactResult::Value(1));
        assert_eq!(exact_k_cf_chromatic(&h, 1, Some(1)).unwrap(), ExactResult::ExceedsLimit);
    }

    #[test]
    fn frames_gadget_three() {
        let f = gen_frames_clique_gadget(3).unwrap();
        let h = neighborhood_hypergraph(&frames_intersection_graph(&f).unwrap());
        assert_eq!(exact_k_cf_chromatic(&h, 1, None).unwrap(), ExactResult::Value(3));
        assert_eq!(naive(&h, 1), 3);
    }

    #[test]
    fn node_cap_reported() {
        assert_eq!(exact_k_cf_chromatic_capped(&ranges(7), 1, None, 5), Err(Error::SearchCap { cap: 5 }));
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(exact_k_cf_chromatic(&Hypergraph::new(0, vec![]).unwrap(), 1, None).unwrap(), ExactResult::Value(0));
        assert_eq!(exact_k_cf_chromatic(&Hypergraph::new(3, vec![]).unwrap(), 1, None).unwrap(), ExactResult::Value(1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn agrees_with_naive(n in 1usize..7, m in 0usize..8, seed: u64) {
            let h = random_hypergraph(n, m, 4, 6, seed);
            let exact: Vec<usize> = (1..4).map(|k| exact_k_cf_chromatic(&h, k, None).unwrap().value().unwrap()).collect();
            for k in 1..4 {
                prop_assert_eq!(exact[k - 1], naive(&h, k));
            }
            prop_assert!(exact.windows(2).all(|w| w[1] <= w[0]));
        }
    }
}
