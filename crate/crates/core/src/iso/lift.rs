use std::collections::BTreeSet;

use crate::algebra::{enumerate_set_variables, CoefficientDomain, LinearSystem, Monomial, Polynomial, SetVariable, VariableId};
use crate::error::{Error, Result};

/// `P^r` together with the provenance of every product.
#[derive(Clone, Debug)]
pub struct LiftedSystem {
    pub polys: Vec<Polynomial>,
    /// `(axiom index, multiplier)` for each entry of `polys`.
    pub origins: Vec<(usize, Monomial)>,
}

/// All products `m·p` with `m` multilinear over `vars` and `deg(m·p) ≤ r`.
/// Requires `r` to be at least the largest axiom degree.
pub fn lift_system(p: &[Polynomial], vars: &[VariableId], r: usize) -> Result<LiftedSystem> {
    let max = p.iter().map(|q| q.degree()).max().unwrap_or(0).max(0) as usize;
    if r < max {
        return Err(Error::DegreeTooSmall { degree: r, required: max });
    }
    Ok(lift_within_degree(p, vars, r))
}

/// Like [`lift_system`], but axioms of degree above `r` are skipped instead
/// of rejected: they have no product of degree at most `r`.
pub fn lift_within_degree(p: &[Polynomial], vars: &[VariableId], r: usize) -> LiftedSystem {
    let mut polys = Vec::new();
    let mut origins = Vec::new();
    let mut cache: Vec<Vec<SetVariable>> = Vec::new();
    for (i, q) in p.iter().enumerate() {
        if q.is_zero() || q.degree() as usize > r {
            continue;
        }
        let room = r - q.degree() as usize;
        while cache.len() <= room {
            cache.push(enumerate_set_variables(vars, cache.len()));
        }
        for s in &cache[room] {
            let m = s.to_monomial();
            polys.push(q.mul_monomial(&m));
            origins.push((i, m));
        }
    }
    LiftedSystem { polys, origins }
}

/// Replaces every monomial by the set-variable of its support. Columns are
/// the supports that occur, in set-variable order; `0 = 0` rows are dropped.
/// Row origins index into `p`.
pub fn multilinearise(p: &[Polynomial], domain: CoefficientDomain) -> Result<LinearSystem> {
    let images: Vec<_> = p.iter().map(|q| q.multilinear_terms()).collect();
    let columns: BTreeSet<SetVariable> = images.iter().flat_map(|m| m.keys().filter(|s| !s.is_empty()).cloned()).collect();
    multilinearise_onto(images, columns.into_iter().collect(), domain)
}

/// Multilinearises onto a fixed column universe (which must contain every support).
pub fn multilinearise_with_columns(p: &[Polynomial], columns: Vec<SetVariable>, domain: CoefficientDomain) -> Result<LinearSystem> {
    multilinearise_onto(p.iter().map(|q| q.multilinear_terms()).collect(), columns, domain)
}

fn multilinearise_onto(
    images: Vec<std::collections::BTreeMap<SetVariable, crate::algebra::Scalar>>,
    columns: Vec<SetVariable>,
    domain: CoefficientDomain,
) -> Result<LinearSystem> {
    let mut s = LinearSystem::new(domain, columns)?;
    for (i, m) in images.into_iter().enumerate() {
        s.push_set_row(m, i)?;
    }
    Ok(s)
}
