//! Reduction from (k+1)-weak colorings to k-CF colorings.
//!
//! Each round asks a weak colorer for a coloring of the surviving vertices,
//! gives the largest class the round index as its final color and removes
//! it. In every hyperedge the largest final color then appears at most `k`
//! times.

use crate::error::{Error, Result};
use crate::hypergraph::{first_k_weak_violation, Coloring, Hypergraph};

/// Produces a (k+1)-weak coloring of an induced subhypergraph.
///
/// `ids[v]` is the id in the original hypergraph of vertex `v` of `sub`.
pub trait WeakColorer {
    fn color(&mut self, sub: &Hypergraph, ids: &[usize]) -> Result<Coloring>;
}

impl<F> WeakColorer for F
where
    F: FnMut(&Hypergraph, &[usize]) -> Result<Coloring>,
{
    fn color(&mut self, sub: &Hypergraph, ids: &[usize]) -> Result<Coloring> {
        self(sub, ids)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrameworkReport {
    /// Number of distinct colors the weak colorer used in each round.
    pub aux_palettes: Vec<usize>,
}

impl FrameworkReport {
    pub fn rounds(&self) -> usize {
        self.aux_palettes.len()
    }

    pub fn max_aux_palette(&self) -> usize {
        self.aux_palettes.iter().copied().max().unwrap_or(0)
    }
}

/// k-CF-colors `h` using `w`; colors are round indices starting at 0.
pub fn k_cf_color_via_weak<W>(h: &Hypergraph, w: &mut W, k: usize) -> Result<(Coloring, FrameworkReport)>
where
    W: WeakColorer + ?Sized,
{
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let n = h.n();
    let mut colors = vec![usize::MAX; n];
    let mut report = FrameworkReport::default();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut cur = h.clone();
    let mut round = 0;
    while !alive.is_empty() {
        if cur.edges().iter().all(|e| e.len() <= k) {
            for &v in &alive {
                colors[v] = round;
            }
            report.aux_palettes.push(1);
            round += 1;
            break;
        }
        let chi = w.color(&cur, &alive)?;
        if chi.len() != alive.len() {
            return Err(Error::LengthMismatch { expected: alive.len(), got: chi.len() });
        }
        if first_k_weak_violation(&cur, &chi, k + 1)?.is_some() {
            return Err(Error::NotWeak { round, required: k + 1 });
        }
        let mut count = vec![0usize; chi.colors().iter().max().map_or(0, |&c| c + 1)];
        for &c in chi.colors() {
            count[c] += 1;
        }
        let best = (0..count.len()).max_by_key(|&c| (count[c], std::cmp::Reverse(c))).expect("non-empty round");
        report.aux_palettes.push(count.iter().filter(|&&c| c > 0).count());
        let mut keep = Vec::with_capacity(alive.len());
        for (local, &v) in alive.iter().enumerate() {
            if chi.color(local) == best {
                colors[v] = round;
            } else {
                keep.push(local);
            }
        }
        let (next, _) = cur.induced(&keep)?;
        alive = keep.iter().map(|&l| alive[l]).collect();
        cur = next;
        round += 1;
    }
    Ok((Coloring::new(colors, round)?, report))
}
