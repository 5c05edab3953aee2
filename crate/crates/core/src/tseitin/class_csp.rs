use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, GraphPair};

use super::group::{Constraint, FiniteGroup, GroupCsp};

/// An `S_ℓ`-CSP whose solutions are the isomorphisms of a coloured pair:
/// variable `i` permutes colour class `i`.
#[derive(Clone, Debug)]
pub struct ClassCsp {
    pub csp: GroupCsp,
    pub ell: usize,
    /// `(C_i(G), C_i(H))` in vertex order.
    pub classes: Vec<(Vec<usize>, Vec<usize>)>,
}

/// Builds the unary constraints `P_i` (points beyond the class size fixed)
/// and binary constraints `R_ii'` (for `i ≤ i'`) restricted to `P_i × P_i'`.
/// A pair of classes with no edge-compatible bijection is reported as a
/// precondition failure, like unequal class sizes.
pub fn graphs_to_group_csp(g: &ColouredGraph, h: &ColouredGraph) -> Result<ClassCsp> {
    let mut by_colour: BTreeMap<&str, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for v in 0..g.num_vertices() {
        by_colour.entry(g.colour(v)).or_default().0.push(v);
    }
    for w in 0..h.num_vertices() {
        by_colour.entry(h.colour(w)).or_default().1.push(w);
    }
    if let Some((c, (a, b))) = by_colour.iter().find(|(_, (a, b))| a.len() != b.len()) {
        return Err(Error::Precondition(format!("colour {c} has {} vertices in G and {} in H", a.len(), b.len())));
    }
    let classes: Vec<(Vec<usize>, Vec<usize>)> = by_colour.into_values().collect();
    let ell = classes.iter().map(|c| c.0.len()).max().unwrap_or(1).max(1);
    let group = FiniteGroup::symmetric(ell)?;
    let perms: Vec<Vec<usize>> = (0..group.order()).map(|a| group.permutation(a)).collect();
    let fixes_tail = |a: usize, size: usize| perms[a][size..].iter().enumerate().all(|(j, &p)| p == size + j);
    let p_i: Vec<Vec<usize>> = classes.iter().map(|c| (0..group.order()).filter(|&a| fixes_tail(a, c.0.len())).collect()).collect();

    let mut constraints = Vec::new();
    for (i, pi) in p_i.iter().enumerate() {
        constraints.push(Constraint { vars: vec![i], coset: pi.iter().map(|&a| vec![a]).collect() });
    }
    for i in 0..classes.len() {
        for i2 in i..classes.len() {
            let (gi, hi) = &classes[i];
            let (gi2, hi2) = &classes[i2];
            let mut rel = Vec::new();
            for &a in &p_i[i] {
                for &b in &p_i[i2] {
                    if i == i2 && a != b {
                        continue;
                    }
                    let ok = (0..gi.len()).all(|j| (0..gi2.len()).all(|j2| g.edge_colour(gi[j], gi2[j2]) == h.edge_colour(hi[perms[a][j]], hi2[perms[b][j2]])));
                    if ok {
                        rel.push(vec![a, b]);
                    }
                }
            }
            if rel.is_empty() {
                return Err(Error::Precondition(format!("colour classes {i} and {i2} admit no compatible bijection")));
            }
            constraints.push(Constraint { vars: vec![i, i2], coset: rel });
        }
    }
    let names = (0..classes.len()).map(|i| format!("x{i}")).collect();
    Ok(ClassCsp { csp: GroupCsp::new(group, names, constraints)?, ell, classes })
}

impl ClassCsp {
    /// `g(v_ij) = w_{iγ_i(j)}`, verified.
    pub fn solution_to_isomorphism(&self, g: &ColouredGraph, h: &ColouredGraph, phi: &[usize]) -> Result<Vec<usize>> {
        if !self.csp.is_solution(phi) {
            return Err(Error::invalid("assignment is not a solution"));
        }
        let mut f = vec![usize::MAX; g.num_vertices()];
        for ((gc, hc), &a) in self.classes.iter().zip(phi) {
            let p = self.csp.group.permutation(a);
            for (j, &v) in gc.iter().enumerate() {
                f[v] = hc[p[j]];
            }
        }
        if !GraphPair::new(g, h).is_isomorphism(&f) {
            return Err(Error::Internal("class permutations do not form an isomorphism".into()));
        }
        Ok(f)
    }

    /// Reads the class permutations off an isomorphism.
    pub fn isomorphism_to_solution(&self, g: &ColouredGraph, h: &ColouredGraph, f: &[usize]) -> Result<Vec<usize>> {
        if !GraphPair::new(g, h).is_isomorphism(f) {
            return Err(Error::invalid("map is not an isomorphism"));
        }
        let grp = &self.csp.group;
        let phi: Vec<usize> = self
            .classes
            .iter()
            .map(|(gc, hc)| {
                let mut p: Vec<usize> = (0..self.ell).collect();
                for (j, &v) in gc.iter().enumerate() {
                    p[j] = hc.iter().position(|&w| w == f[v]).expect("colour preserving");
                }
                (0..grp.order()).find(|&a| grp.permutation(a) == p).expect("a permutation")
            })
            .collect();
        if !self.csp.is_solution(&phi) {
            return Err(Error::Internal("isomorphism gives no solution".into()));
        }
        Ok(phi)
    }
}
