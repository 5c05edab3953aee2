use crate::algebra::{CoefficientDomain, Monomial, Polynomial, Scalar, VariableId, VariableRegistry};
use crate::error::{Error, Result};

use super::instance::TseitinInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TseitinRow {
    /// `z_e² − 1`
    Square(usize),
    /// `1 − ε_t·Πz` for a vertex `t`
    Vertex(usize),
}

/// The Tseitin system: one `±1`-valued variable `z_e` per edge.
#[derive(Clone, Debug)]
pub struct TseitinSystem {
    pub domain: CoefficientDomain,
    pub registry: VariableRegistry,
    /// `VariableId(e)` is the variable of edge `e`.
    pub axioms: Vec<Polynomial>,
    pub kinds: Vec<TseitinRow>,
}

impl TseitinSystem {
    pub fn var(&self, e: usize) -> VariableId {
        VariableId(e as u32)
    }

    pub fn vars(&self) -> Vec<VariableId> {
        self.registry.ids().collect()
    }
}

/// `z_e² − 1` per edge, then `1 + Πz` per charged and `1 − Πz` per uncharged
/// vertex, products in the recorded edge order.
pub fn tseitin_polynomials(inst: &TseitinInstance, domain: CoefficientDomain) -> TseitinSystem {
    let mut registry = VariableRegistry::new();
    for e in 0..inst.edges.len() {
        registry.intern(&inst.edge_name(e));
    }
    let mut axioms = Vec::new();
    let mut kinds = Vec::new();
    for e in 0..inst.edges.len() {
        let z = Monomial::var(VariableId(e as u32));
        axioms.push(Polynomial::from_int_terms(domain, [(z.mul(&z), 1), (Monomial::one(), -1)]));
        kinds.push(TseitinRow::Square(e));
    }
    for (t, edges) in inst.incident.iter().enumerate() {
        let prod = Monomial::from_vars(edges.iter().map(|&e| VariableId(e as u32)));
        axioms.push(Polynomial::from_int_terms(domain, [(Monomial::one(), 1), (prod, -inst.epsilon(t))]));
        kinds.push(TseitinRow::Vertex(t));
    }
    TseitinSystem { domain, registry, axioms, kinds }
}

/// The Fourier correspondence on values: `0 ↦ 1`, `1 ↦ −1`.
pub fn fourier_point(domain: CoefficientDomain, phi: &[usize]) -> Result<Vec<Scalar>> {
    if domain.characteristic() == 2 {
        return Err(Error::invalid("the correspondence needs characteristic other than 2"));
    }
    Ok(phi.iter().map(|&a| domain.from_i64(if a == 0 { 1 } else { -1 })).collect())
}

/// Inverse of [`fourier_point`]; `None` unless every value is `±1`.
pub fn fourier_inverse(domain: CoefficientDomain, z: &[Scalar]) -> Option<Vec<usize>> {
    let (one, minus) = (domain.one(), domain.from_i64(-1));
    z.iter()
        .map(|s| {
            if *s == one {
                Some(0)
            } else if *s == minus {
                Some(1)
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, cycle};
    use crate::tseitin::instance::tseitin_csp;

    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    fn satisfies(sys: &TseitinSystem, point: &[Scalar]) -> bool {
        sys.axioms.iter().all(|p| p.evaluate(&|x| point[x.index()].clone()).is_zero())
    }

    #[test]
    fn k4_row_counts() {
        let inst = TseitinInstance::new(complete(4).unwrap(), [0]).unwrap();
        let sys = tseitin_polynomials(&inst, Q);
        assert_eq!(sys.axioms.iter().filter(|p| p.degree() == 2).count(), 6);
        assert_eq!(sys.axioms.iter().filter(|p| p.degree() == 3).count(), 4);
    }

    #[test]
    fn solutions_correspond_on_a_cycle() {
        // every ±1 point of C4 with charges {0,1} against every CSP assignment
        let inst = TseitinInstance::new(cycle(4).unwrap(), [0, 1]).unwrap();
        let sys = tseitin_polynomials(&inst, Q);
        let csp = tseitin_csp(&inst).unwrap();
        let mut count = 0;
        for m in 0..16usize {
            let phi: Vec<usize> = (0..4).map(|i| m >> i & 1).collect();
            let point = fourier_point(Q, &phi).unwrap();
            assert_eq!(satisfies(&sys, &point), csp.is_solution(&phi));
            assert_eq!(fourier_inverse(Q, &point).as_ref(), Some(&phi));
            count += usize::from(csp.is_solution(&phi));
        }
        assert_eq!(count, 2);
        let uncharged = TseitinInstance::new(cycle(4).unwrap(), []).unwrap();
        assert!(satisfies(&tseitin_polynomials(&uncharged, Q), &[Q.one(), Q.one(), Q.one(), Q.one()]));
    }
}
