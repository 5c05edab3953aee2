use crate::algebra::{CoefficientDomain, LinearSystem, Rational};
use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, Side, TypePartition};
use crate::iso::{build_iso_system, lift_within_degree, multilinearise, verify_assignment, AssignmentCheck, IsoOptions, MlinAssignment};

/// A solution built from pebble-game types, with the system it solves.
#[derive(Clone, Debug)]
pub struct WlSolution {
    pub assignment: MlinAssignment,
    /// `MLIN(P_iso^k)` over the rationals.
    pub system: LinearSystem,
}

/// For a pair Duplicator wins with `k` pebbles, sets `α(X_π) = 1/t(v̄)` when
/// the `G`- and `H`-tuples of `π` share a type and 0 otherwise. The result is
/// checked against every row and the downward-zero property.
pub fn wl_solution(g: &ColouredGraph, h: &ColouredGraph, k: usize, opts: IsoOptions, budget: usize) -> Result<WlSolution> {
    let q = CoefficientDomain::Rationals;
    let types = TypePartition::build(g, h, k, budget)?;
    if !types.same_type((Side::G, &[]), (Side::H, &[])) {
        return Err(Error::Precondition(format!("Spoiler wins the {k}-pebble game")));
    }
    let iso = build_iso_system(g, h, q, opts.for_degree(k))?;
    let lifted = lift_within_degree(&iso.axioms, &iso.space.live_vars(), k);
    let system = multilinearise(&lifted.polys, q)?;
    let mut alpha = MlinAssignment::new(q);
    for col in system.columns() {
        let (vs, ws): (Vec<usize>, Vec<usize>) = col.vars().iter().map(|&x| iso.space.pair(x)).unzip();
        let value = if types.same_type((Side::G, &vs), (Side::H, &ws)) { Rational::new(1, types.t(Side::G, &vs) as i64) } else { Rational::zero() };
        alpha.set(col.clone(), q.from_rational(&value)?)?;
    }
    match verify_assignment(&alpha, &system, true)? {
        AssignmentCheck::Ok => Ok(WlSolution { assignment: alpha, system }),
        bad => Err(Error::Internal(format!("type assignment fails: {bad:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SetVariable;
    use crate::graph::families::{cycle, two_triangles_vs_hexagon};

    #[test]
    fn example_pair_and_cycle() {
        let (g, h) = two_triangles_vs_hexagon();
        let sol = wl_solution(&g, &h, 2, IsoOptions::default(), 1_000_000).unwrap();
        assert!(verify_assignment(&sol.assignment, &sol.system, true).unwrap().is_ok());
        assert!(wl_solution(&g, &h, 3, IsoOptions::default(), 1_000_000).is_err());

        // every vertex of C5 has 5 type-mates, so singletons get 1/5
        let c5 = cycle(5).unwrap();
        let sol = wl_solution(&c5, &c5, 2, IsoOptions::default(), 1_000_000).unwrap();
        let q = CoefficientDomain::Rationals;
        let one_fifth = q.from_rational(&Rational::new(1, 5)).unwrap();
        for (s, v) in sol.assignment.iter() {
            if s.len() == 1 {
                assert_eq!(v, &one_fifth);
            }
        }
        assert_eq!(sol.assignment.get(&SetVariable::empty()), Some(&q.one()));
    }
}
