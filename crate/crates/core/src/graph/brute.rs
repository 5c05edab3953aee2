use std::cmp::Reverse;
use std::collections::HashMap;

use super::coloured::ColouredGraph;
use super::pair::GraphPair;
use crate::error::{Error, Result};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoResult {
    /// `mapping[v]` is the image of `v`.
    Iso(Vec<usize>),
    NonIso,
}

impl IsoResult {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoResult::Iso(_))
    }
}

pub fn brute_force_isomorphic(g: &ColouredGraph, h: &ColouredGraph) -> Result<IsoResult> {
    brute_force_isomorphic_capped(g, h, DEFAULT_BRUTE_FORCE_CAP)
}

/// Exhaustive search over colour-respecting bijections, extending partial
/// maps only while they stay local isomorphisms.
pub fn brute_force_isomorphic_capped(g: &ColouredGraph, h: &ColouredGraph, cap: usize) -> Result<IsoResult> {
    if g.num_vertices() > cap {
        return Err(Error::BudgetExceeded(format!("{} vertices exceed the brute-force cap {cap}", g.num_vertices())));
    }
    if g.num_vertices() != h.num_vertices() || g.num_edges() != h.num_edges() {
        return Ok(IsoResult::NonIso);
    }
    let pair = GraphPair::new(g, h);
    let n = g.num_vertices();
    // small colour classes first, then the vertex with most placed
    // neighbours, so every new vertex is constrained early
    let mut class_size: HashMap<&str, usize> = HashMap::new();
    for v in 0..n {
        *class_size.entry(g.colour(v)).or_default() += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut placed_nbrs = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n).filter(|&v| !placed[v]).min_by_key(|&v| (class_size[g.colour(v)], Reverse(placed_nbrs[v]), v)).expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
        for u in g.neighbours(v) {
            placed_nbrs[u] += 1;
        }
    }
    let mut partial: Vec<(usize, usize)> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if search(&pair, &order, &mut partial, &mut used) {
        let mut f = vec![0; n];
        for &(v, w) in &partial {
            f[v] = w;
        }
        if !pair.is_isomorphism(&f) {
            return Err(Error::Internal("brute-force mapping failed verification".into()));
        }
        Ok(IsoResult::Iso(f))
    } else {
        Ok(IsoResult::NonIso)
    }
}

fn search(pair: &GraphPair, order: &[usize], partial: &mut Vec<(usize, usize)>, used: &mut [bool]) -> bool {
    let i = partial.len();
    if i == order.len() {
        return true;
    }
    let v = order[i];
    for w in 0..used.len() {
        if used[w] || !pair.extends(partial, (v, w)) {
            continue;
        }
        used[w] = true;
        partial.push((v, w));
        if search(pair, order, partial, used) {
            return true;
        }
        partial.pop();
        used[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_disconnected() {
        let mut g = ColouredGraph::with_vertices(6);
        for (a, b) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
            g.add_edge(a, b, None).unwrap();
        }
        let mut c6 = ColouredGraph::with_vertices(6);
        for i in 0..6 {
            c6.add_edge(i, (i + 1) % 6, None).unwrap();
        }
        assert!(brute_force_isomorphic(&g, &g).unwrap().is_iso());
        assert_eq!(brute_force_isomorphic(&g, &c6).unwrap(), IsoResult::NonIso);
        let big = ColouredGraph::with_vertices(13);
        assert!(matches!(brute_force_isomorphic(&big, &big), Err(Error::BudgetExceeded(_))));
    }
}
