use std::collections::HashMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, GraphPair};

use super::group::GroupCsp;

/// Where a gadget vertex comes from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GadgetVertex {
    /// `γ^(x)`
    Variable { var: usize, element: usize },
    /// `β^(C)`
    Constraint { constraint: usize, tuple: Vec<usize> },
}

/// `G(C)` and `G̃(C) = G(C̃)` with the constraint colours identified.
#[derive(Clone, Debug)]
pub struct GadgetGraphPair {
    pub csp: GroupCsp,
    pub homogenised: GroupCsp,
    pub g: ColouredGraph,
    pub g_tilde: ColouredGraph,
    pub provenance: Vec<GadgetVertex>,
    pub provenance_tilde: Vec<GadgetVertex>,
    index: HashMap<GadgetVertex, usize>,
    index_tilde: HashMap<GadgetVertex, usize>,
}

fn provenance_json(csp: &GroupCsp, p: &GadgetVertex) -> Value {
    match p {
        GadgetVertex::Variable { var, element } => json!({"variable": csp.var_names[*var], "element": csp.group.label(*element)}),
        GadgetVertex::Constraint { constraint, tuple } => {
            json!({"constraint": constraint, "tuple": tuple.iter().map(|&a| csp.group.label(a)).collect::<Vec<_>>()})
        }
    }
}

fn build_one(csp: &GroupCsp, tag: &str) -> Result<(ColouredGraph, Vec<GadgetVertex>, HashMap<GadgetVertex, usize>)> {
    let grp = &csp.group;
    let mut g = ColouredGraph::new();
    let mut prov = Vec::new();
    let mut index = HashMap::new();
    let mut push = |g: &mut ColouredGraph, id: String, colour: String, p: GadgetVertex| -> Result<usize> {
        let v = g.add_vertex(&id, &colour)?;
        index.insert(p.clone(), v);
        prov.push(p);
        Ok(v)
    };
    let mut var_vertex = vec![Vec::new(); csp.num_vars()];
    for (x, name) in csp.var_names.iter().enumerate() {
        for a in 0..grp.order() {
            let v = push(&mut g, format!("{name}^{}", grp.label(a)), format!("L(x:{name})"), GadgetVertex::Variable { var: x, element: a })?;
            var_vertex[x].push(v);
        }
    }
    for (ci, c) in csp.constraints.iter().enumerate() {
        for beta in &c.coset {
            let label: Vec<&str> = beta.iter().map(|&a| grp.label(a)).collect();
            let p = GadgetVertex::Constraint { constraint: ci, tuple: beta.clone() };
            let v = push(&mut g, format!("C{ci}^({})", label.join(",")), format!("L(C:{ci})"), p)?;
            for (i, (&x, &b)) in c.vars.iter().zip(beta).enumerate() {
                g.add_edge(v, var_vertex[x][b], Some(&format!("M{}", i + 1)))?;
            }
        }
    }
    let meta: Vec<Value> = prov.iter().map(|p| provenance_json(csp, p)).collect();
    g.meta = Some(json!({"gadget": tag, "group": grp.name(), "provenance": meta}));
    Ok((g, prov, index))
}

impl GadgetGraphPair {
    pub fn vertex(&self, p: &GadgetVertex) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn vertex_tilde(&self, p: &GadgetVertex) -> Option<usize> {
        self.index_tilde.get(p).copied()
    }

    pub fn verify_isomorphism(&self, f: &[usize]) -> bool {
        GraphPair::new(&self.g, &self.g_tilde).is_isomorphism(f)
    }
}

/// Builds both gadget graphs. Vertex ids and colours are shared, so the
/// colours `L(C)` of `C` and `C̃` coincide.
pub fn build_gadget_graphs(csp: &GroupCsp) -> Result<GadgetGraphPair> {
    let homogenised = csp.homogenised();
    let (g, provenance, index) = build_one(csp, "original")?;
    let (g_tilde, provenance_tilde, index_tilde) = build_one(&homogenised, "homogenised")?;
    Ok(GadgetGraphPair { csp: csp.clone(), homogenised, g, g_tilde, provenance, provenance_tilde, index, index_tilde })
}

/// The map `γ^(x) ↦ (γ·φ(x)⁻¹)^(x)`, `β^(C) ↦ (β_i·φ(x_i)⁻¹)_i^(C)`,
/// verified as an isomorphism before return.
pub fn csp_solution_to_isomorphism(pair: &GadgetGraphPair, phi: &[usize]) -> Result<Vec<usize>> {
    let csp = &pair.csp;
    if !csp.is_solution(phi) {
        return Err(Error::invalid("assignment is not a solution"));
    }
    let grp = &csp.group;
    let f: Vec<usize> = pair
        .provenance
        .iter()
        .map(|p| {
            let image = match p {
                GadgetVertex::Variable { var, element } => GadgetVertex::Variable { var: *var, element: grp.mul(*element, grp.inv(phi[*var])) },
                GadgetVertex::Constraint { constraint, tuple } => {
                    let c = &csp.constraints[*constraint];
                    let shifted = tuple.iter().zip(&c.vars).map(|(&b, &x)| grp.mul(b, grp.inv(phi[x]))).collect();
                    GadgetVertex::Constraint { constraint: *constraint, tuple: shifted }
                }
            };
            pair.vertex_tilde(&image).ok_or_else(|| Error::Internal("translated tuple left the subgroup".into()))
        })
        .collect::<Result<_>>()?;
    if !pair.verify_isomorphism(&f) {
        return Err(Error::Internal("translated map is not an isomorphism".into()));
    }
    Ok(f)
}

/// Reads `φ(x)` off `f⁻¹(1^(x))` and checks it against every constraint.
pub fn isomorphism_to_csp_solution(pair: &GadgetGraphPair, f: &[usize]) -> Result<Vec<usize>> {
    if !pair.verify_isomorphism(f) {
        return Err(Error::invalid("map is not an isomorphism of the gadget graphs"));
    }
    let mut inverse = vec![usize::MAX; f.len()];
    for (v, &w) in f.iter().enumerate() {
        inverse[w] = v;
    }
    let csp = &pair.csp;
    let phi: Vec<usize> = (0..csp.num_vars())
        .map(|x| {
            let unit = pair.vertex_tilde(&GadgetVertex::Variable { var: x, element: csp.group.identity() }).expect("unit vertex");
            match &pair.provenance[inverse[unit]] {
                GadgetVertex::Variable { var, element } if *var == x => Ok(*element),
                _ => Err(Error::Internal("isomorphism moves a variable class".into())),
            }
        })
        .collect::<Result<_>>()?;
    if !csp.is_solution(&phi) {
        return Err(Error::Internal("read-off assignment violates a constraint".into()));
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::complete;
    use crate::graph::{brute_force_isomorphic_capped, IsoResult};
    use crate::tseitin::group::FiniteGroup;
    use crate::tseitin::instance::{solve_parity_csp, tseitin_csp, TseitinInstance};

    fn k4_pair(charged: &[usize]) -> GadgetGraphPair {
        let inst = TseitinInstance::new(complete(4).unwrap(), charged.iter().copied()).unwrap();
        build_gadget_graphs(&tseitin_csp(&inst).unwrap()).unwrap()
    }

    #[test]
    fn k4_sizes() {
        let pair = k4_pair(&[0]);
        for g in [&pair.g, &pair.g_tilde] {
            assert_eq!(g.num_vertices(), 6 * 2 + 4 * 4);
            assert_eq!(g.num_edges(), 4 * 4 * 3);
        }
    }

    #[test]
    fn path_solution_translates_both_ways() {
        let pair = k4_pair(&[0, 2]);
        let phi = solve_parity_csp(&pair.csp).unwrap().unwrap();
        let f = csp_solution_to_isomorphism(&pair, &phi).unwrap();
        let back = isomorphism_to_csp_solution(&pair, &f).unwrap();
        assert!(pair.csp.is_solution(&back));
        assert_eq!(back, phi);
    }

    #[test]
    fn odd_charge_pair_is_not_isomorphic() {
        let pair = k4_pair(&[0]);
        assert_eq!(brute_force_isomorphic_capped(&pair.g, &pair.g_tilde, 32).unwrap(), IsoResult::NonIso);
        let identity: Vec<usize> = (0..pair.g.num_vertices()).collect();
        assert!(isomorphism_to_csp_solution(&pair, &identity).is_err());
    }

    #[test]
    fn lone_variable() {
        let csp = GroupCsp::new(FiniteGroup::z2(), vec!["x".into()], vec![]).unwrap();
        let pair = build_gadget_graphs(&csp).unwrap();
        assert_eq!((pair.g.num_vertices(), pair.g.num_edges()), (2, 0));
        assert_eq!(pair.g.colour(0), pair.g.colour(1));
        assert!(csp_solution_to_isomorphism(&pair, &[1]).is_ok());
    }
}
