//! Randomized (k+1)-weak colorings with resampling, and the general k-CF
//! bound obtained by peeling high-degree vertices.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::framework::k_cf_color_via_weak;
use crate::hypergraph::{Coloring, Hypergraph};

pub const LLL_CONSTANT: u128 = 13;

/// Smallest `M >= 1` with `M >= 13 * delta^(1/k)`, i.e. `M^k >= 13^k * delta`.
pub fn lll_palette(delta: usize, k: usize) -> usize {
    let target = LLL_CONSTANT.saturating_pow(k as u32).saturating_mul(delta as u128);
    let pow = |m: u128| (0..k).try_fold(1u128, |acc, _| acc.checked_mul(m)).unwrap_or(u128::MAX);
    let (mut lo, mut hi) = (1u128, 1u128);
    while pow(hi) < target {
        hi *= 2;
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if pow(mid) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo as usize
}

/// Keeps the first `k+1` vertices of every edge of size at least `k+1` and
/// drops the rest.
pub fn reduce_edges(h: &Hypergraph, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = h.edges().iter().filter(|e| e.len() > k).map(|e| e[..=k].to_vec()).collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LllReport {
    pub palette: usize,
    pub reduced_edges: usize,
    pub resamples: u64,
}

/// A (k+1)-weak coloring with `lll_palette(max_degree, k)` colors.
pub fn lll_weak_coloring(h: &Hypergraph, k: usize, seed: u64) -> Result<(Coloring, LllReport)> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2".into()));
    }
    let n = h.n();
    let palette = lll_palette(h.max_degree(), k);
    let edges = reduce_edges(h, k);
    let mut incident = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colors: Vec<usize> = (0..n).map(|_| rng.gen_range(0..palette)).collect();
    let mono = |colors: &[usize], e: &[usize]| e.iter().all(|&v| colors[v] == colors[e[0]]);
    let mut bad: BTreeSet<usize> = (0..edges.len()).filter(|&i| mono(&colors, &edges[i])).collect();
    let budget = 1000 * (n as u64 + h.m() as u64);
    let mut resamples = 0u64;
    while let Some(i) = bad.pop_first() {
        if resamples == budget {
            return Err(Error::ResampleBudget { budget });
        }
        resamples += 1;
        for &v in &edges[i] {
            colors[v] = rng.gen_range(0..palette);
        }
        for &v in &edges[i] {
            for &j in &incident[v] {
                if mono(&colors, &edges[j]) {
                    bad.insert(j);
                } else {
                    bad.remove(&j);
                }
            }
        }
    }
    let report = LllReport { palette, reduced_edges: edges.len(), resamples };
    Ok((Coloring::new(colors, palette)?, report))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneralReport {
    pub delta_star: usize,
    pub peeled: usize,
    pub rounds: usize,
    pub max_lll_palette: usize,
    pub resamples: u64,
}

/// `ceil((m / max(log2 n, 1))^(k/(k+1)))`, at least 1.
pub fn peel_threshold(n: usize, m: usize, k: usize) -> usize {
    let log = (n.max(1) as f64).log2().max(1.0);
    let e = k as f64 / (k as f64 + 1.0);
    ((m as f64 / log).powf(e).ceil() as usize).max(1)
}

/// k-CF coloring of an arbitrary hypergraph: vertices of degree above the
/// peel threshold get private colors (highest degree first, ties to the
/// smaller id), the rest is colored by the framework over resampled weak
/// colorings.
pub fn k_cf_color_general(h: &Hypergraph, k: usize, seed: u64) -> Result<(Coloring, GeneralReport)> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2".into()));
    }
    let (n, m) = (h.n(), h.m());
    let delta_star = peel_threshold(n, m, k);
    let mut report = GeneralReport { delta_star, ..GeneralReport::default() };
    let mut edge_alive = vec![true; m];
    let mut incident = vec![Vec::new(); n];
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let mut deg: Vec<usize> = incident.iter().map(Vec::len).collect();
    let mut peeled = Vec::new();
    let mut is_peeled = vec![false; n];
    loop {
        let best = (0..n).filter(|&v| !is_peeled[v]).max_by_key(|&v| (deg[v], std::cmp::Reverse(v)));
        let Some(v) = best.filter(|&v| deg[v] > delta_star) else { break };
        is_peeled[v] = true;
        peeled.push(v);
        for &i in &incident[v] {
            if std::mem::replace(&mut edge_alive[i], false) {
                for &u in &h.edges()[i] {
                    deg[u] -= 1;
                }
            }
        }
    }
    if peeled.len() > m / delta_star + 1 {
        return Err(Error::Invariant(format!("peeled {} vertices with m = {m}", peeled.len())));
    }
    let residual: Vec<Vec<usize>> = (0..m).filter(|&i| edge_alive[i]).map(|i| h.edges()[i].clone()).collect();
    let keep: Vec<usize> = (0..n).filter(|&v| !is_peeled[v]).collect();
    let (sub, _) = Hypergraph::new(n, residual)?.induced(&keep)?;
    let mut colors = vec![0; n];
    let mut framework_palette = 0;
    if !keep.is_empty() {
        let mut round = 0u64;
        let mut resamples = 0;
        let mut max_pal = 0;
        let mut lll = |s: &Hypergraph, _: &[usize]| {
            let (c, r) = lll_weak_coloring(s, k, seed ^ round.wrapping_mul(0x9e37_79b9_7f4a_7c15))?;
            round += 1;
            resamples += r.resamples;
            max_pal = max_pal.max(r.palette);
            Ok(c)
        };
        let (c, fr) = k_cf_color_via_weak(&sub, &mut lll, k)?;
        for (i, &v) in keep.iter().enumerate() {
            colors[v] = c.color(i);
        }
        framework_palette = c.palette_size();
        report.rounds = fr.rounds();
        report.resamples = resamples;
        report.max_lll_palette = max_pal;
    }
    for (i, &v) in peeled.iter().enumerate() {
        colors[v] = framework_palette + i;
    }
    report.peeled = peeled.len();
    let palette = (framework_palette + peeled.len()).max(1);
    Ok((Coloring::new(colors, palette)?, report))
}
