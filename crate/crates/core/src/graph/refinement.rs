use std::collections::BTreeMap;

use super::coloured::ColouredGraph;
use super::pair::GraphPair;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefinementResult {
    Distinguished,
    /// The stable colouring of `G` and of `H`, over a shared palette.
    Equivalent {
        g: Vec<u32>,
        h: Vec<u32>,
    },
}

impl RefinementResult {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, RefinementResult::Equivalent { .. })
    }
}

/// Joint colour refinement on `G ⊎ H`: a vertex's next colour is its current
/// colour together with the multiset of (edge colour, neighbour colour).
pub fn colour_refinement(g: &ColouredGraph, h: &ColouredGraph) -> RefinementResult {
    let pair = GraphPair::new(g, h);
    let (ng, nh) = (pair.n_g(), pair.n_h());
    let mut colour: Vec<u32> = (0..ng).map(|v| pair.colour_g(v)).chain((0..nh).map(|w| pair.colour_h(w))).collect();
    let nbrs = |x: usize| -> Vec<(usize, u32)> {
        if x < ng {
            g.neighbours(x).map(|y| (y, pair.code_g(x, y))).collect()
        } else {
            let w = x - ng;
            h.neighbours(w).map(|y| (ng + y, pair.code_h(w, y))).collect()
        }
    };
    let adj: Vec<Vec<(usize, u32)>> = (0..ng + nh).map(nbrs).collect();
    let mut classes = count_classes(&colour);
    loop {
        let mut palette: BTreeMap<(u32, Vec<(u32, u32)>), u32> = BTreeMap::new();
        let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..ng + nh)
            .map(|x| {
                let mut m: Vec<(u32, u32)> = adj[x].iter().map(|&(y, c)| (c, colour[y])).collect();
                m.sort_unstable();
                (colour[x], m)
            })
            .collect();
        for s in &sigs {
            palette.entry(s.clone()).or_insert(0);
        }
        for (i, v) in palette.values_mut().enumerate() {
            *v = i as u32;
        }
        colour = sigs.iter().map(|s| palette[s]).collect();
        let next = count_classes(&colour);
        if next == classes {
            break;
        }
        classes = next;
    }
    let (cg, ch) = colour.split_at(ng);
    let hist = |c: &[u32]| {
        let mut m: BTreeMap<u32, usize> = BTreeMap::new();
        for &x in c {
            *m.entry(x).or_default() += 1;
        }
        m
    };
    if hist(cg) == hist(ch) {
        RefinementResult::Equivalent { g: cg.to_vec(), h: ch.to_vec() }
    } else {
        RefinementResult::Distinguished
    }
}

fn count_classes(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_graphs_are_not_separated() {
        let mut g = ColouredGraph::with_vertices(6);
        for (a, b) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
            g.add_edge(a, b, None).unwrap();
        }
        let mut h = ColouredGraph::with_vertices(6);
        for i in 0..6 {
            h.add_edge(i, (i + 1) % 6, None).unwrap();
        }
        assert!(colour_refinement(&g, &h).is_equivalent());
        assert!(colour_refinement(&g, &g).is_equivalent());
    }

    #[test]
    fn degree_sequences_separate() {
        let mut path = ColouredGraph::with_vertices(3);
        path.add_edge(0, 1, None).unwrap();
        path.add_edge(1, 2, None).unwrap();
        let mut tri = ColouredGraph::with_vertices(3);
        tri.add_edge(0, 1, None).unwrap();
        tri.add_edge(1, 2, None).unwrap();
        tri.add_edge(0, 2, None).unwrap();
        assert_eq!(colour_refinement(&path, &tri), RefinementResult::Distinguished);
    }
}
