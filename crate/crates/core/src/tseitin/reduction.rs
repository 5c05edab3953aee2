use crate::algebra::{CoefficientDomain, Monomial, Polynomial, Rational, VariableId};
use crate::error::{Error, Result};
use crate::iso::{build_iso_system, AxiomKind, IsoOptions, IsoSystem};

use super::gadget::{build_gadget_graphs, GadgetGraphPair, GadgetVertex};
use super::instance::{tseitin_csp, TseitinInstance};

/// `Π ½(1 − s·z_e)` over the listed `(edge, sign)` factors; `None` is 0.
pub type FactorList = Option<Vec<(usize, i64)>>;

/// The substitution `x ↦ f_x` from the isomorphism variables of the
/// gadget pair into the edge variables `z_e = VariableId(e)`.
#[derive(Clone, Debug)]
pub struct ReductionMap {
    pub k: usize,
    pub domain: CoefficientDomain,
    pub pair: GadgetGraphPair,
    pub iso: IsoSystem,
    /// Indexed by isomorphism variable.
    pub factors: Vec<FactorList>,
    pub f: Vec<Polynomial>,
}

fn sign(element: usize) -> i64 {
    if element == 0 {
        1
    } else {
        -1
    }
}

fn half(domain: CoefficientDomain, n: i64, pow: u32) -> Result<crate::algebra::Scalar> {
    domain.from_rational(&Rational::new(n, 1i64 << pow))
}

fn z(domain: CoefficientDomain, e: usize) -> Polynomial {
    Polynomial::var(domain, VariableId(e as u32))
}

/// `½(1 − s·z_e)`
fn factor(domain: CoefficientDomain, e: usize, s: i64) -> Result<Polynomial> {
    Ok(Polynomial::from_terms(domain, [(Monomial::one(), half(domain, 1, 1)?), (Monomial::var(VariableId(e as u32)), half(domain, -s, 1)?)]))
}

fn expand(domain: CoefficientDomain, factors: &[(usize, i64)]) -> Result<Polynomial> {
    let mut p = Polynomial::one(domain);
    for &(e, s) in factors {
        p = p.mul(&factor(domain, e, s)?)?;
    }
    Ok(p)
}

/// Builds the gadget pair of the instance and the maps `f_x`: edge pairs go to
/// `½(1 − ζη·z_e)`, constraint pairs of the same vertex to the product of
/// those factors over its edges, everything else to 0.
pub fn reduction_polynomials(inst: &TseitinInstance, domain: CoefficientDomain) -> Result<ReductionMap> {
    if domain.characteristic() == 2 {
        return Err(Error::invalid("the reduction needs characteristic other than 2"));
    }
    let k = inst.regularity().ok_or_else(|| Error::Precondition("base graph is not regular".into()))?;
    if k % 2 == 1 {
        return Err(Error::Precondition(format!("base graph is {k}-regular; the reduction needs even degree")));
    }
    let csp = tseitin_csp(inst)?;
    let pair = build_gadget_graphs(&csp)?;
    let iso = build_iso_system(&pair.g, &pair.g_tilde, domain, IsoOptions::default())?;
    let mut factors = Vec::with_capacity(iso.space.num_vars());
    for x in iso.space.live_vars() {
        let (v, w) = iso.space.pair(x);
        let fl = match (&pair.provenance[v], &pair.provenance_tilde[w]) {
            (GadgetVertex::Variable { var: a, element: zeta }, GadgetVertex::Variable { var: b, element: eta }) if a == b => {
                Some(vec![(*a, sign(*zeta) * sign(*eta))])
            }
            (GadgetVertex::Constraint { constraint: a, tuple: zs }, GadgetVertex::Constraint { constraint: b, tuple: es }) if a == b => {
                let edges = &csp.constraints[*a].vars;
                Some(edges.iter().zip(zs.iter().zip(es)).map(|(&e, (&zi, &ei))| (e, sign(zi) * sign(ei))).collect())
            }
            _ => None,
        };
        factors.push(fl);
    }
    let f = factors
        .iter()
        .map(|fl| match fl {
            Some(list) => expand(domain, list),
            None => Ok(Polynomial::zero(domain)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReductionMap { k, domain, pair, iso, factors, f })
}

impl ReductionMap {
    /// Every axiom of `P_iso(G, G̃)` with `x ↦ f_x` substituted.
    pub fn substituted_axioms(&self) -> Result<Vec<Polynomial>> {
        self.iso.axioms.iter().map(|p| p.substitute(&|x| Some(self.f[x.index()].clone()))).collect()
    }
}

/// Counts of identities checked per family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionReport {
    pub edge_factors: usize,
    pub sign_sums: usize,
    pub sums: usize,
    pub conflicts: usize,
}

/// The identity `Σ_{Πη = ε} Π(1 − η_i z_i) = 2^(ℓ−1)(1 + (−1)^ℓ ε Πz)` in
/// fresh variables `z_0..z_{ℓ−1}`.
pub fn check_sign_sum(domain: CoefficientDomain, ell: usize, eps: i64) -> Result<bool> {
    let mut lhs = Polynomial::zero(domain);
    for m in 0u32..1 << ell {
        let eta: Vec<i64> = (0..ell).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect();
        if eta.iter().product::<i64>() != eps {
            continue;
        }
        let mut p = Polynomial::one(domain);
        for (i, &s) in eta.iter().enumerate() {
            p = p.mul(&Polynomial::from_int_terms(domain, [(Monomial::one(), 1), (Monomial::var(VariableId(i as u32)), -s)]))?;
        }
        lhs = lhs.add(&p)?;
    }
    let sgn = if ell % 2 == 0 { eps } else { -eps };
    let prod = Monomial::from_vars((0..ell as u32).map(VariableId));
    let rhs = Polynomial::from_int_terms(domain, [(Monomial::one(), 1), (prod, sgn)]).scale(&domain.from_i64(1 << (ell - 1)));
    Ok(lhs == rhs)
}

/// Checks, as exact polynomial identities:
/// (a) `f² − f = ¼(z² − 1)` for every edge factor;
/// (b) the signed product-sum identity for `ℓ ≤ 6`;
/// (c) every row and column sum minus 1 equals `−½(1 − ε_t Πz)` on constraint
///     vertices and 0 on edge vertices;
/// (d) every nonzero conflict product equals `−¼·rest·(z_e² − 1)`.
pub fn verify_reduction_identities(map: &ReductionMap, inst: &TseitinInstance) -> Result<ReductionReport> {
    let d = map.domain;
    let fail = |family: &str, what: String| Error::verification(format!("reduction identity ({family}) fails: {what}"));
    let mut report = ReductionReport::default();

    for e in 0..inst.edges.len() {
        for s in [1, -1] {
            let f = factor(d, e, s)?;
            let lhs = f.mul(&f)?.sub(&f)?;
            let rhs = z(d, e).mul(&z(d, e))?.sub(&Polynomial::one(d))?.scale(&half(d, 1, 2)?);
            if lhs != rhs {
                return Err(fail("a", format!("edge {e}, sign {s}")));
            }
            report.edge_factors += 1;
        }
    }

    for ell in 1..=6 {
        for eps in [1, -1] {
            if !check_sign_sum(d, ell, eps)? {
                return Err(fail("b", format!("ℓ = {ell}, ε = {eps}")));
            }
            report.sign_sums += 1;
        }
    }

    let space = &map.iso.space;
    let (n, n_tilde) = (map.pair.g.num_vertices(), map.pair.g_tilde.num_vertices());
    let expected = |p: &GadgetVertex| -> Result<Polynomial> {
        match p {
            GadgetVertex::Variable { .. } => Ok(Polynomial::zero(d)),
            GadgetVertex::Constraint { constraint: t, .. } => {
                let prod = Monomial::from_vars(inst.incident[*t].iter().map(|&e| VariableId(e as u32)));
                Ok(Polynomial::from_int_terms(d, [(Monomial::one(), 1), (prod, -inst.epsilon(*t))]).scale(&half(d, -1, 1)?))
            }
        }
    };
    for v in 0..n {
        let mut sum = Polynomial::constant(d, d.from_i64(-1));
        for w in 0..n_tilde {
            if let Some(x) = space.var(v, w) {
                sum = sum.add(&map.f[x.index()])?;
            }
        }
        if sum != expected(&map.pair.provenance[v])? {
            return Err(fail("c", format!("row sum at {}", map.pair.g.vertex_id(v))));
        }
        report.sums += 1;
    }
    for w in 0..n_tilde {
        let mut sum = Polynomial::constant(d, d.from_i64(-1));
        for v in 0..n {
            if let Some(x) = space.var(v, w) {
                sum = sum.add(&map.f[x.index()])?;
            }
        }
        if sum != expected(&map.pair.provenance_tilde[w])? {
            return Err(fail("c", format!("column sum at {}", map.pair.g_tilde.vertex_id(w))));
        }
        report.sums += 1;
    }

    for (axiom, kind) in map.iso.axioms.iter().zip(&map.iso.kinds) {
        if !matches!(kind, AxiomKind::Conflict(..)) {
            continue;
        }
        let vars: Vec<VariableId> = axiom.variables();
        let lists: Vec<&FactorList> = match vars.as_slice() {
            [x] => vec![&map.factors[x.index()], &map.factors[x.index()]],
            [x, y] => vec![&map.factors[x.index()], &map.factors[y.index()]],
            _ => return Err(Error::Internal("conflict axiom is not quadratic".into())),
        };
        let (Some(a), Some(b)) = (lists[0], lists[1]) else { continue };
        let all: Vec<(usize, i64)> = a.iter().chain(b).copied().collect();
        let clash = all.iter().enumerate().find_map(|(i, &(e, s))| all[i + 1..].iter().position(|&(e2, s2)| e2 == e && s2 == -s).map(|j| (i, i + 1 + j)));
        let Some((i, j)) = clash else {
            return Err(fail("d", format!("conflict {kind:?} has no opposite factor pair")));
        };
        let rest: Vec<(usize, i64)> = all.iter().enumerate().filter(|&(m, _)| m != i && m != j).map(|(_, &p)| p).collect();
        let e = all[i].0;
        let rhs = expand(d, &rest)?.mul(&z(d, e).mul(&z(d, e))?.sub(&Polynomial::one(d))?)?.scale(&half(d, -1, 2)?);
        let lhs = expand(d, a)?.mul(&expand(d, b)?)?;
        if lhs != rhs {
            return Err(fail("d", format!("conflict {kind:?}")));
        }
        report.conflicts += 1;
    }
    Ok(report)
}
