use std::collections::BTreeMap;

use super::coloured::ColouredGraph;

/// Adjacency code: 0 for a non-edge, 1 for an uncoloured edge, `2 + id` for
/// an edge of colour `id`.
pub type EdgeCode = u32;

/// Two graphs over a shared colour registry with dense adjacency, the form
/// every local-isomorphism test runs on.
#[derive(Clone, Debug)]
pub struct GraphPair<'a> {
    pub g: &'a ColouredGraph,
    pub h: &'a ColouredGraph,
    vertex_colour: [Vec<u32>; 2],
    adj: [Vec<EdgeCode>; 2],
    n: [usize; 2],
    num_vertex_colours: usize,
}

impl<'a> GraphPair<'a> {
    pub fn new(g: &'a ColouredGraph, h: &'a ColouredGraph) -> Self {
        let mut vreg: BTreeMap<&str, u32> = BTreeMap::new();
        let mut ereg: BTreeMap<&str, u32> = BTreeMap::new();
        for graph in [g, h] {
            for v in 0..graph.num_vertices() {
                vreg.entry(graph.colour(v)).or_insert(0);
            }
            for (_, _, c) in graph.edges() {
                if let Some(c) = c {
                    ereg.entry(c).or_insert(0);
                }
            }
        }
        for (i, v) in vreg.values_mut().enumerate() {
            *v = i as u32;
        }
        for (i, v) in ereg.values_mut().enumerate() {
            *v = i as u32;
        }
        let vc = |graph: &ColouredGraph| (0..graph.num_vertices()).map(|v| vreg[graph.colour(v)]).collect::<Vec<_>>();
        let am = |graph: &ColouredGraph| {
            let n = graph.num_vertices();
            let mut a = vec![0; n * n];
            for (u, v, c) in graph.edges() {
                let code = c.map_or(1, |c| 2 + ereg[c]);
                a[u * n + v] = code;
                a[v * n + u] = code;
            }
            a
        };
        GraphPair { g, h, vertex_colour: [vc(g), vc(h)], adj: [am(g), am(h)], n: [g.num_vertices(), h.num_vertices()], num_vertex_colours: vreg.len() }
    }

    pub fn n_g(&self) -> usize {
        self.n[0]
    }

    pub fn n_h(&self) -> usize {
        self.n[1]
    }

    pub fn num_vertex_colours(&self) -> usize {
        self.num_vertex_colours
    }

    pub fn colour_g(&self, v: usize) -> u32 {
        self.vertex_colour[0][v]
    }

    pub fn colour_h(&self, w: usize) -> u32 {
        self.vertex_colour[1][w]
    }

    pub fn code_g(&self, u: usize, v: usize) -> EdgeCode {
        self.adj[0][u * self.n[0] + v]
    }

    pub fn code_h(&self, u: usize, v: usize) -> EdgeCode {
        self.adj[1][u * self.n[1] + v]
    }

    /// Whether `{(v, w)}` is a local isomorphism.
    pub fn compatible(&self, v: usize, w: usize) -> bool {
        self.colour_g(v) == self.colour_h(w)
    }

    /// Whether two pairs are jointly consistent: equal-or-distinct on both
    /// sides and with matching adjacency codes.
    pub fn consistent(&self, (v, w): (usize, usize), (v2, w2): (usize, usize)) -> bool {
        if (v == v2) != (w == w2) {
            return false;
        }
        v == v2 || self.code_g(v, v2) == self.code_h(w, w2)
    }

    /// Whether the set of pairs is an injective partial map preserving
    /// vertex colours, adjacency, non-adjacency and edge colours.
    pub fn is_local_iso(&self, pairs: &[(usize, usize)]) -> bool {
        for (i, &p) in pairs.iter().enumerate() {
            if !self.compatible(p.0, p.1) {
                return false;
            }
            for &q in &pairs[..i] {
                if !self.consistent(p, q) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `pairs ∪ {p}` is a local isomorphism, given that `pairs` is one.
    pub fn extends(&self, pairs: &[(usize, usize)], p: (usize, usize)) -> bool {
        self.compatible(p.0, p.1) && pairs.iter().all(|&q| self.consistent(p, q))
    }

    /// Checks a total bijection `f: V(G) → V(H)` is an isomorphism.
    pub fn is_isomorphism(&self, f: &[usize]) -> bool {
        if f.len() != self.n[0] || self.n[0] != self.n[1] {
            return false;
        }
        let mut seen = vec![false; self.n[1]];
        for &w in f {
            if w >= self.n[1] || std::mem::replace(&mut seen[w], true) {
                return false;
            }
        }
        (0..self.n[0]).all(|v| self.compatible(v, f[v]) && (0..v).all(|u| self.code_g(u, v) == self.code_h(f[u], f[v])))
    }
}

/// Free-standing local-isomorphism test.
pub fn is_local_isomorphism(pairs: &[(usize, usize)], g: &ColouredGraph, h: &ColouredGraph) -> bool {
    GraphPair::new(g, h).is_local_iso(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> ColouredGraph {
        let mut g = ColouredGraph::with_vertices(3);
        g.add_edge(0, 1, None).unwrap();
        g.add_edge(1, 2, None).unwrap();
        g
    }

    #[test]
    fn local_iso_cases() {
        let g = path3();
        let pair = GraphPair::new(&g, &g);
        assert!(pair.is_local_iso(&[]));
        assert!(!pair.is_local_iso(&[(0, 0), (0, 1)]));
        assert!(!pair.is_local_iso(&[(0, 1), (2, 1)]));
        assert!(!pair.is_local_iso(&[(0, 0), (1, 2)]));
        assert!(pair.is_local_iso(&[(0, 2), (1, 1)]));
        assert!(pair.is_isomorphism(&[2, 1, 0]));
        assert!(!pair.is_isomorphism(&[1, 0, 2]));
    }

    #[test]
    fn colours_matter() {
        let g = path3();
        let mut h = path3();
        h.set_colour(0, "red");
        let pair = GraphPair::new(&g, &h);
        assert!(!pair.is_local_iso(&[(0, 0)]));
        assert!(pair.is_local_iso(&[(2, 2)]));
        let mut e = ColouredGraph::with_vertices(2);
        e.add_edge(0, 1, Some("m")).unwrap();
        let mut f = ColouredGraph::with_vertices(2);
        f.add_edge(0, 1, None).unwrap();
        assert!(!is_local_isomorphism(&[(0, 0), (1, 1)], &e, &f));
    }
}
