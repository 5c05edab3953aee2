use crate::algebra::{CoefficientDomain, Monomial, Polynomial, VariableId, VariableRegistry};
use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, GraphPair};

/// Variables `x(v,w)` for `v ∈ V(G)`, `w ∈ V(H)`. With pruning, pairs whose
/// singleton is not a local isomorphism get no variable (they are 0).
#[derive(Clone, Debug)]
pub struct PairVariableSpace {
    n_g: usize,
    n_h: usize,
    registry: VariableRegistry,
    var_of: Vec<Option<VariableId>>,
    pair_of: Vec<(usize, usize)>,
    pruned: bool,
}

impl PairVariableSpace {
    pub fn new(g: &ColouredGraph, h: &ColouredGraph, prune: bool) -> Self {
        let pair = GraphPair::new(g, h);
        let (n_g, n_h) = (g.num_vertices(), h.num_vertices());
        let mut registry = VariableRegistry::new();
        let mut var_of = vec![None; n_g * n_h];
        let mut pair_of = Vec::new();
        for v in 0..n_g {
            for w in 0..n_h {
                if prune && !pair.compatible(v, w) {
                    continue;
                }
                let id = registry.intern(&format!("x({},{})", g.vertex_id(v), h.vertex_id(w)));
                var_of[v * n_h + w] = Some(id);
                pair_of.push((v, w));
            }
        }
        PairVariableSpace { n_g, n_h, registry, var_of, pair_of, pruned: prune }
    }

    pub fn var(&self, v: usize, w: usize) -> Option<VariableId> {
        self.var_of[v * self.n_h + w]
    }

    pub fn pair(&self, x: VariableId) -> (usize, usize) {
        self.pair_of[x.index()]
    }

    pub fn live_vars(&self) -> Vec<VariableId> {
        self.registry.ids().collect()
    }

    pub fn num_vars(&self) -> usize {
        self.pair_of.len()
    }

    pub fn registry(&self) -> &VariableRegistry {
        &self.registry
    }

    pub fn is_pruned(&self) -> bool {
        self.pruned
    }

    pub fn n_g(&self) -> usize {
        self.n_g
    }

    pub fn n_h(&self) -> usize {
        self.n_h
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AxiomKind {
    /// `Σ_v x(v,w) − 1` for a vertex `w` of `H`.
    RowSum(usize),
    /// `Σ_w x(v,w) − 1` for a vertex `v` of `G`.
    ColumnSum(usize),
    /// `x(p)·x(q)` for a pair set that is not a local isomorphism.
    Conflict((usize, usize), (usize, usize)),
}

/// The isomorphism equations. The Boolean axioms `x² − x` are implicit.
#[derive(Clone, Debug)]
pub struct IsoSystem {
    pub space: PairVariableSpace,
    pub domain: CoefficientDomain,
    pub axioms: Vec<Polynomial>,
    pub kinds: Vec<AxiomKind>,
}

impl IsoSystem {
    pub fn num_row_sums(&self) -> usize {
        self.kinds.iter().filter(|k| matches!(k, AxiomKind::RowSum(_))).count()
    }

    pub fn num_column_sums(&self) -> usize {
        self.kinds.iter().filter(|k| matches!(k, AxiomKind::ColumnSum(_))).count()
    }

    pub fn conflicts(&self) -> impl Iterator<Item = &AxiomKind> {
        self.kinds.iter().filter(|k| matches!(k, AxiomKind::Conflict(..)))
    }

    pub fn max_degree(&self) -> i64 {
        self.axioms.iter().map(|p| p.degree()).max().unwrap_or(-1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoOptions {
    pub prune: bool,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions { prune: true }
    }
}

impl IsoOptions {
    /// Options for a degree-`r` run. Pruning stands in for the degree-2
    /// singleton conflicts `x_vw²`, so it is switched off below degree 2.
    pub fn for_degree(self, r: usize) -> Self {
        IsoOptions { prune: self.prune && r >= 2 }
    }
}

fn check_nondegenerate(g: &ColouredGraph, h: &ColouredGraph) -> Result<()> {
    if g.num_vertices() < 2 && h.num_vertices() < 2 {
        return Err(Error::Precondition("one of the graphs needs at least two vertices".into()));
    }
    Ok(())
}

fn sum_minus_one(d: CoefficientDomain, vars: impl Iterator<Item = VariableId>) -> Polynomial {
    let mut p = Polynomial::constant(d, d.from_i64(-1));
    for x in vars {
        p.add_term(Monomial::var(x), d.one());
    }
    p
}

pub fn build_iso_system(g: &ColouredGraph, h: &ColouredGraph, domain: CoefficientDomain, opts: IsoOptions) -> Result<IsoSystem> {
    check_nondegenerate(g, h)?;
    let space = PairVariableSpace::new(g, h, opts.prune);
    let pair = GraphPair::new(g, h);
    let (ng, nh) = (g.num_vertices(), h.num_vertices());
    let mut axioms = Vec::new();
    let mut kinds = Vec::new();
    for w in 0..nh {
        axioms.push(sum_minus_one(domain, (0..ng).filter_map(|v| space.var(v, w))));
        kinds.push(AxiomKind::RowSum(w));
    }
    for v in 0..ng {
        axioms.push(sum_minus_one(domain, (0..nh).filter_map(|w| space.var(v, w))));
        kinds.push(AxiomKind::ColumnSum(v));
    }
    let vars = space.live_vars();
    for (i, &a) in vars.iter().enumerate() {
        let p = space.pair(a);
        for &b in &vars[..=i] {
            let q = space.pair(b);
            let ok = if a == b { pair.compatible(p.0, p.1) } else { pair.is_local_iso(&[p, q]) };
            if !ok {
                axioms.push(Polynomial::monomial(domain, Monomial::var(a).mul_var(b), domain.one()));
                kinds.push(AxiomKind::Conflict(q, p));
            }
        }
    }
    Ok(IsoSystem { space, domain, axioms, kinds })
}

/// The `AX = XB` polynomials `Σ_{v'∈N(v)} x(v',w) − Σ_{w'∈N(w)} x(v,w')`,
/// one per pair `(v, w)`, followed by the row and column sums.
pub fn build_axb_system(g: &ColouredGraph, h: &ColouredGraph, space: &PairVariableSpace, domain: CoefficientDomain) -> Vec<Polynomial> {
    let (ng, nh) = (g.num_vertices(), h.num_vertices());
    let mut out = Vec::with_capacity(ng * nh + ng + nh);
    for v in 0..ng {
        for w in 0..nh {
            let mut p = Polynomial::zero(domain);
            for v2 in g.neighbours(v) {
                if let Some(x) = space.var(v2, w) {
                    p.add_term(Monomial::var(x), domain.one());
                }
            }
            for w2 in h.neighbours(w) {
                if let Some(x) = space.var(v, w2) {
                    p.add_term(Monomial::var(x), domain.from_i64(-1));
                }
            }
            out.push(p);
        }
    }
    for w in 0..nh {
        out.push(sum_minus_one(domain, (0..ng).filter_map(|v| space.var(v, w))));
    }
    for v in 0..ng {
        out.push(sum_minus_one(domain, (0..nh).filter_map(|w| space.var(v, w))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{three_triangles_colourings, three_triangles_pair, two_triangles_vs_hexagon};

    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    #[test]
    fn pruning_needs_degree_two() {
        let on = IsoOptions::default();
        assert!(!on.for_degree(1).prune);
        assert!(on.for_degree(2).prune);
        assert!(!IsoOptions { prune: false }.for_degree(3).prune);
    }

    #[test]
    fn counts_for_fixed_pairs() {
        let (g, h) = two_triangles_vs_hexagon();
        let s = build_iso_system(&g, &h, Q, IsoOptions::default()).unwrap();
        assert_eq!(s.space.num_vars(), 12);
        assert_eq!((s.num_row_sums(), s.num_column_sums()), (6, 6));
        let (g, h) = three_triangles_pair();
        let (c3, _) = three_triangles_colourings();
        let (g3, h3) = c3.apply(&g, &h).unwrap();
        let s = build_iso_system(&g3, &h3, Q, IsoOptions::default()).unwrap();
        assert_eq!(s.space.num_vars(), 27);
    }

    #[test]
    fn unpruned_has_singleton_conflicts() {
        let (g, h) = two_triangles_vs_hexagon();
        let s = build_iso_system(&g, &h, Q, IsoOptions { prune: false }).unwrap();
        assert_eq!(s.space.num_vars(), 36);
        let singles = s.conflicts().filter(|k| matches!(k, AxiomKind::Conflict(p, q) if p == q)).count();
        assert_eq!(singles, 36 - 12);
        assert_eq!(s.max_degree(), 2);
    }

    #[test]
    fn degenerate_pairs_rejected() {
        let g = ColouredGraph::with_vertices(1);
        assert!(matches!(build_iso_system(&g, &g, Q, IsoOptions::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn edgeless_axb_rows_vanish() {
        let g = ColouredGraph::with_vertices(3);
        let space = PairVariableSpace::new(&g, &g, true);
        let rows = build_axb_system(&g, &g, &space, Q);
        assert!(rows[..9].iter().all(|p| p.is_zero()));
    }
}
