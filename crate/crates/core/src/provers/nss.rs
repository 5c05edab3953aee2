use std::collections::BTreeMap;

use crate::algebra::{solve_linear_system_field, CoefficientDomain, FieldSolution, Monomial, Polynomial, VariableId};
use crate::error::{Error, Result};
use crate::iso::{lift_within_degree, multilinearise, verify_assignment, MlinAssignment};

use super::verdict::{Evidence, Outcome, ProverKind, ProverVerdict, Witness};

/// Static refutation `Σ f_p·p + Σ g_x·(x² − x) = 1`.
#[derive(Clone, Debug)]
pub struct NssCertificate {
    pub domain: CoefficientDomain,
    pub degree: usize,
    /// `(axiom index, f_p)`, nonzero entries only.
    pub f: Vec<(usize, Polynomial)>,
    /// `(variable, g_x)`, nonzero entries only.
    pub g: Vec<(VariableId, Polynomial)>,
}

impl NssCertificate {
    /// Expands the certificate against `axioms` and checks it is exactly 1
    /// with `deg(f_p·p) ≤ degree`.
    pub fn verify(&self, axioms: &[Polynomial]) -> Result<()> {
        let d = self.domain;
        let mut total = Polynomial::zero(d);
        for (i, f) in &self.f {
            let p = axioms.get(*i).ok_or_else(|| Error::verification(format!("unknown axiom {i}")))?;
            let fp = f.mul(p)?;
            if fp.degree() > self.degree as i64 {
                return Err(Error::verification(format!("deg(f_p·p) = {} exceeds {} for axiom {i}", fp.degree(), self.degree)));
            }
            total = total.add(&fp)?;
        }
        for (x, g) in &self.g {
            let xv = Polynomial::var(d, *x);
            let boolean = xv.mul(&xv)?.sub(&xv)?;
            total = total.add(&g.mul(&boolean)?)?;
        }
        if !total.is_one() {
            return Err(Error::verification(format!("certificate expands to a polynomial with {} terms, not 1", total.num_terms())));
        }
        Ok(())
    }
}

/// Writes `p = ML(p) + Σ g_x·(x² − x)` and returns `(ML(p), g)`.
pub(crate) fn boolean_split(p: &Polynomial) -> (Polynomial, BTreeMap<VariableId, Polynomial>) {
    let d = p.domain();
    let mut g: BTreeMap<VariableId, Polynomial> = BTreeMap::new();
    let mut ml = Polynomial::zero(d);
    for (m, c) in p.terms() {
        let mut cur = m.clone();
        // x^e·rest = x^(e-1)·rest + x^(e-2)·rest·(x² − x)
        while let Some(&(x, e)) = cur.exponents().iter().find(|&&(_, e)| e >= 2) {
            let rest = cur.div(&Monomial::from_exponents([(x, e)])).expect("divides");
            let lower = rest.mul(&Monomial::from_exponents([(x, e - 2)]));
            g.entry(x).or_insert_with(|| Polynomial::zero(d)).add_term(lower, c.clone());
            cur = rest.mul(&Monomial::from_exponents([(x, e - 1)]));
        }
        ml.add_term(cur, c.clone());
    }
    g.retain(|_, q| !q.is_zero());
    (ml, g)
}

pub(crate) fn check_degree(axioms: &[Polynomial], r: usize) -> Result<()> {
    let min = axioms.iter().filter(|p| !p.is_zero()).map(|p| p.degree()).min().unwrap_or(0).max(0) as usize;
    if r == 0 || (min > r) {
        return Err(Error::DegreeTooSmall { degree: r, required: min.max(1) });
    }
    Ok(())
}

/// Decides whether `axioms` have a degree-`r` Nullstellensatz refutation over
/// a field, by solving the multilinearised lifted system.
///
/// Axioms of degree above `r` cannot occur in such a refutation and are
/// ignored; `r` must reach at least one axiom.
pub fn nss_decide(axioms: &[Polynomial], vars: &[VariableId], r: usize, domain: CoefficientDomain) -> Result<ProverVerdict> {
    domain.require_field()?;
    for p in axioms {
        domain.check_same(&p.domain())?;
    }
    check_degree(axioms, r)?;
    let lifted = lift_within_degree(axioms, vars, r);
    let system = multilinearise(&lifted.polys, domain)?;
    let outcome = match solve_linear_system_field(&system)? {
        FieldSolution::Solvable(x) => {
            let alpha = MlinAssignment::from_solution(&system, &x);
            if !verify_assignment(&alpha, &system, false)?.is_ok() {
                return Err(Error::Internal("NSS solution failed re-verification".into()));
            }
            Outcome::NotRefuted(Witness::Mlin(alpha))
        }
        FieldSolution::Unsolvable(y) => {
            // Σ y_i·MLIN(m_i p_i) reads 0 = 1, so Σ −y_i·m_i·p_i ≡ 1 modulo x² − x.
            let mut f: BTreeMap<usize, Polynomial> = BTreeMap::new();
            for (row, w) in &y {
                let lp = system.rows()[*row].origin;
                let (axiom, m) = &lifted.origins[lp];
                f.entry(*axiom).or_insert_with(|| Polynomial::zero(domain)).add_term(m.clone(), domain.neg(w));
            }
            f.retain(|_, q| !q.is_zero());
            let mut sum = Polynomial::zero(domain);
            for (i, fp) in &f {
                sum = sum.add(&fp.mul(&axioms[*i])?)?;
            }
            let (ml, g) = boolean_split(&sum);
            if !ml.is_one() {
                return Err(Error::Internal("Farkas combination does not multilinearise to 1".into()));
            }
            let cert = NssCertificate { domain, degree: r, f: f.into_iter().collect(), g: g.into_iter().map(|(x, q)| (x, q.neg())).collect() };
            cert.verify(axioms)?;
            Outcome::Refuted(Evidence::Nss(cert))
        }
    };
    Ok(ProverVerdict { kind: ProverKind::Nss, degree: r, domain, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    fn x(i: u32) -> Polynomial {
        Polynomial::var(Q, VariableId(i))
    }

    #[test]
    fn boolean_split_identity() {
        let p = x(0).pow(3).mul(&x(1).pow(2)).unwrap().add(&x(1)).unwrap();
        let (ml, g) = boolean_split(&p);
        assert_eq!(ml, x(0).mul(&x(1)).unwrap().add(&x(1)).unwrap());
        let mut back = ml.clone();
        for (v, q) in &g {
            let xv = Polynomial::var(Q, *v);
            back = back.add(&q.mul(&xv.mul(&xv).unwrap().sub(&xv).unwrap()).unwrap()).unwrap();
        }
        assert_eq!(back, p);
    }

    #[test]
    fn contradictory_unit_clauses() {
        // x = 0 and x = 1
        let axioms = vec![x(0), x(0).sub(&Polynomial::one(Q)).unwrap()];
        let v = nss_decide(&axioms, &[VariableId(0)], 1, Q).unwrap();
        match v.outcome {
            Outcome::Refuted(Evidence::Nss(c)) => c.verify(&axioms).unwrap(),
            _ => panic!("expected refutation"),
        }
        let sat = vec![x(0)];
        assert!(!nss_decide(&sat, &[VariableId(0)], 2, Q).unwrap().refuted());
    }

    #[test]
    fn needs_degree_two_for_xy() {
        // x = 1, y = 1, xy = 0: degree 2 refutes (xy − y·(x−1) − (y−1) = 1)
        let one = Polynomial::one(Q);
        let axioms = vec![x(0).sub(&one).unwrap(), x(1).sub(&one).unwrap(), x(0).mul(&x(1)).unwrap()];
        let vars = [VariableId(0), VariableId(1)];
        assert!(nss_decide(&axioms, &vars, 2, Q).unwrap().refuted());
        assert!(!nss_decide(&axioms, &vars, 1, Q).unwrap().refuted());
        assert!(matches!(nss_decide(&axioms, &vars, 0, Q), Err(Error::DegreeTooSmall { .. })));
        assert!(nss_decide(&axioms, &vars, 2, CoefficientDomain::Integers).is_err());
    }
}
