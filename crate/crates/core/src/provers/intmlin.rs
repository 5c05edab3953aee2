use crate::algebra::{solve_linear_system_integers, CoefficientDomain, IntegerSolution, Polynomial, VariableId};
use crate::error::{Error, Result};
use crate::iso::{lift_within_degree, multilinearise, verify_assignment, MlinAssignment};

use super::nss::check_degree;
use super::verdict::{Evidence, Outcome, ProverKind, ProverVerdict, Witness};

/// Decides integer solvability of the multilinearised degree-`r` lift.
/// `axioms` must have integer coefficients.
pub fn integer_mlin_decide(axioms: &[Polynomial], vars: &[VariableId], r: usize) -> Result<ProverVerdict> {
    let domain = CoefficientDomain::Integers;
    for p in axioms {
        domain.check_same(&p.domain())?;
    }
    check_degree(axioms, r)?;
    let lifted = lift_within_degree(axioms, vars, r);
    let system = multilinearise(&lifted.polys, domain)?;
    let outcome = match solve_linear_system_integers(&system)? {
        IntegerSolution::Solvable(x) => {
            let alpha = MlinAssignment::from_solution(&system, &x);
            if !verify_assignment(&alpha, &system, false)?.is_ok() {
                return Err(Error::Internal("integer solution failed re-verification".into()));
            }
            Outcome::NotRefuted(Witness::Mlin(alpha))
        }
        IntegerSolution::Unsolvable(cert) => Outcome::Refuted(Evidence::Integer(cert)),
    };
    Ok(ProverVerdict { kind: ProverKind::IntegerMlin, degree: r, domain, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoefficientDomain = CoefficientDomain::Integers;

    #[test]
    fn parity_is_integer_infeasible() {
        // 2x0 = 1 has a rational but no integer solution
        let p = Polynomial::from_int_terms(Z, [(crate::algebra::Monomial::var(VariableId(0)), 2), (crate::algebra::Monomial::one(), -1)]);
        assert!(integer_mlin_decide(std::slice::from_ref(&p), &[VariableId(0)], 1).unwrap().refuted());
        let q = Polynomial::from_int_terms(Z, [(crate::algebra::Monomial::var(VariableId(0)), 1), (crate::algebra::Monomial::one(), -1)]);
        assert!(!integer_mlin_decide(&[q], &[VariableId(0)], 1).unwrap().refuted());
        let rational = p.to_domain(CoefficientDomain::Rationals).unwrap();
        assert!(integer_mlin_decide(&[rational], &[VariableId(0)], 1).is_err());
    }
}
