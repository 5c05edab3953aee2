use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::algebra::{solve_linear_system_field, CoefficientDomain, FieldSolution, LinearSystem, Scalar, SetVariable, VariableId};
use crate::error::{Error, Result};
use crate::graph::ColouredGraph;

use super::group::{Constraint, FiniteGroup, GroupCsp};

/// A base graph with a charge set. Edge `i` is the `i`-th entry of
/// [`ColouredGraph::edges`]; each vertex lists its edges in increasing id order,
/// and the first of them carries the twist of a charged vertex.
#[derive(Clone, Debug)]
pub struct TseitinInstance {
    pub base: ColouredGraph,
    pub charged: BTreeSet<usize>,
    pub edges: Vec<(usize, usize)>,
    pub incident: Vec<Vec<usize>>,
}

impl TseitinInstance {
    pub fn new(base: ColouredGraph, charged: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = base.num_vertices();
        let charged: BTreeSet<usize> = charged.into_iter().collect();
        if let Some(&t) = charged.iter().find(|&&t| t >= n) {
            return Err(Error::invalid(format!("charged vertex {t} out of range")));
        }
        let edges: Vec<(usize, usize)> = base.edges().into_iter().map(|(u, v, _)| (u, v)).collect();
        let mut incident = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        if let Some(v) = (0..n).find(|&v| incident[v].is_empty()) {
            return Err(Error::InvalidGraph(format!("vertex {} is isolated", base.vertex_id(v))));
        }
        Ok(TseitinInstance { base, charged, edges, incident })
    }

    pub fn is_charged(&self, t: usize) -> bool {
        self.charged.contains(&t)
    }

    pub fn odd(&self) -> bool {
        self.charged.len() % 2 == 1
    }

    /// `ε_t`: −1 on charged vertices, 1 elsewhere.
    pub fn epsilon(&self, t: usize) -> i64 {
        if self.is_charged(t) {
            -1
        } else {
            1
        }
    }

    pub fn edge_name(&self, e: usize) -> String {
        let (u, v) = self.edges[e];
        format!("z({},{})", self.base.vertex_id(u), self.base.vertex_id(v))
    }

    /// Common degree, if the base graph is regular.
    pub fn regularity(&self) -> Option<usize> {
        let k = self.incident.first()?.len();
        self.incident.iter().all(|i| i.len() == k).then_some(k)
    }

    pub fn to_json_value(&self) -> Value {
        let order: serde_json::Map<String, Value> =
            (0..self.base.num_vertices()).map(|v| (self.base.vertex_id(v).to_string(), json!(self.incident[v]))).collect();
        json!({
            "graph": self.base.to_json_value(),
            "charged": self.charged.iter().map(|&t| self.base.vertex_id(t)).collect::<Vec<_>>(),
            "edge_order": order,
        })
    }
}

/// The parity CSP over `Z₂`: one variable per edge, and per vertex the tuples
/// over its edges whose number of `−1` entries is congruent to its charge.
pub fn tseitin_csp(inst: &TseitinInstance) -> Result<GroupCsp> {
    let names = (0..inst.edges.len()).map(|e| inst.edge_name(e)).collect();
    let mut constraints = Vec::new();
    for (t, edges) in inst.incident.iter().enumerate() {
        let k = edges.len();
        let charge = inst.is_charged(t) as u32;
        let coset = (0u64..1 << k).filter(|m| m.count_ones() % 2 == charge).map(|m| (0..k).map(|i| (m >> (k - 1 - i) & 1) as usize).collect()).collect();
        constraints.push(Constraint { vars: edges.clone(), coset });
    }
    GroupCsp::new(FiniteGroup::z2(), names, constraints)
}

/// Parity equations `a·x = a·γ` cutting out the coset `Δγ ⊆ Z₂^k`.
fn coset_equations(c: &Constraint) -> Vec<(u64, bool)> {
    let k = c.arity();
    let bits = |t: &[usize]| t.iter().enumerate().fold(0u64, |m, (i, &a)| m | ((a as u64) << i));
    let gamma = bits(&c.coset[0]);
    // row-reduce a spanning set of Δ
    let mut rows: Vec<u64> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for t in &c.coset {
        let mut v = bits(t) ^ gamma;
        for (r, &p) in rows.iter().zip(&pivots) {
            if v >> p & 1 == 1 {
                v ^= r;
            }
        }
        if v != 0 {
            let p = v.trailing_zeros() as usize;
            for r in rows.iter_mut() {
                if *r >> p & 1 == 1 {
                    *r ^= v;
                }
            }
            rows.push(v);
            pivots.push(p);
        }
    }
    (0..k)
        .filter(|f| !pivots.contains(f))
        .map(|f| {
            let mut a = 1u64 << f;
            for (r, &p) in rows.iter().zip(&pivots) {
                if r >> f & 1 == 1 {
                    a |= 1 << p;
                }
            }
            (a, (a & gamma).count_ones() % 2 == 1)
        })
        .collect()
}

/// Solves a `Z₂`-CSP by elimination over the two-element field; solutions are
/// checked against every constraint.
pub fn solve_parity_csp(csp: &GroupCsp) -> Result<Option<Vec<usize>>> {
    if !csp.group.is_z2() {
        return Err(Error::invalid(format!("parity solver needs Z2, got {}", csp.group.name())));
    }
    if csp.constraints.iter().any(|c| c.arity() > 64) {
        return Err(Error::invalid("constraint arity above 64"));
    }
    let f2 = CoefficientDomain::prime_field(2)?;
    let columns: Vec<SetVariable> = (0..csp.num_vars() as u32).map(|x| SetVariable::singleton(VariableId(x))).collect();
    let mut system = LinearSystem::new(f2, columns)?;
    for (i, c) in csp.constraints.iter().enumerate() {
        for (a, rhs) in coset_equations(c) {
            let mut coeffs: Vec<(u32, Scalar)> = (0..c.arity()).filter(|j| a >> j & 1 == 1).map(|j| (c.vars[j] as u32, f2.one())).collect();
            coeffs.sort_by_key(|e| e.0);
            // repeated variables cancel in pairs
            let mut merged: Vec<(u32, Scalar)> = Vec::new();
            for (col, s) in coeffs {
                match merged.last() {
                    Some((last, _)) if *last == col => {
                        merged.pop();
                    }
                    _ => merged.push((col, s)),
                }
            }
            system.push_row(merged, if rhs { f2.one() } else { f2.zero() }, i)?;
        }
    }
    match solve_linear_system_field(&system)? {
        FieldSolution::Unsolvable(_) => Ok(None),
        FieldSolution::Solvable(x) => {
            let phi: Vec<usize> = x.iter().map(|s| usize::from(!s.is_zero())).collect();
            if !csp.is_solution(&phi) {
                return Err(Error::Internal("parity solution violates a constraint".into()));
            }
            Ok(Some(phi))
        }
    }
}
