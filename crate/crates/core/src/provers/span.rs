use std::collections::HashMap;

use crate::algebra::linear::sparse_from_unsorted;
use crate::algebra::{enumerate_set_variables, CoefficientDomain, EchelonBasis, Monomial, Polynomial, Scalar, SetVariable, SparseVec, SquareRule, VariableId};
use crate::error::{Error, Result};
use crate::iso::lift_within_degree;

use super::verdict::{Evidence, Outcome, ProverKind, ProverVerdict, Witness};

/// One derivation step. Every line holds a multilinear polynomial: the
/// square rule is applied after each multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Axiom {
        axiom: usize,
    },
    /// `m·p` for an axiom `p`, with `deg m + deg p ≤ d`.
    AxiomProduct {
        axiom: usize,
        multiplier: Monomial,
    },
    /// `x·f` for an earlier line `f` of degree below `d`.
    MulVar {
        line: usize,
        var: VariableId,
    },
    LinComb {
        terms: Vec<(usize, Scalar)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogLine {
    pub rule: Rule,
    pub value: Polynomial,
}

/// A replayable refutation; its last line is the constant 1.
#[derive(Clone, Debug)]
pub struct DerivationLog {
    pub domain: CoefficientDomain,
    pub degree: usize,
    /// Only monomials and axiom products may be multiplied.
    pub monomial_only: bool,
    pub square_rule: SquareRule,
    pub lines: Vec<LogLine>,
}

impl DerivationLog {
    /// Recomputes every line from its rule with plain polynomial arithmetic,
    /// checks the degree side conditions, and requires the last line to be 1.
    pub fn replay(&self, axioms: &[Polynomial]) -> Result<()> {
        match self.replay_lines(axioms)?.last() {
            Some(v) if v.is_one() => Ok(()),
            _ => Err(Error::verification("derivation does not end in 1")),
        }
    }

    /// As [`DerivationLog::replay`] without the condition on the last line.
    pub fn replay_lines(&self, axioms: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let d = self.domain;
        let fail = |i: usize, msg: &str| Error::verification(format!("line {i}: {msg}"));
        let axiom = |i: usize, a: usize| axioms.get(a).ok_or_else(|| fail(i, "unknown axiom"));
        let mut values: Vec<Polynomial> = Vec::with_capacity(self.lines.len());
        for (i, line) in self.lines.iter().enumerate() {
            let earlier = |j: usize| if j < i { Ok(&values[j]) } else { Err(fail(i, "forward reference")) };
            let got = match &line.rule {
                Rule::Axiom { axiom: a } => {
                    let p = axiom(i, *a)?;
                    if p.degree() > self.degree as i64 {
                        return Err(fail(i, "axiom above the degree bound"));
                    }
                    p.clone()
                }
                Rule::AxiomProduct { axiom: a, multiplier } => {
                    let p = axiom(i, *a)?;
                    if p.degree() + multiplier.degree() as i64 > self.degree as i64 {
                        return Err(fail(i, "product above the degree bound"));
                    }
                    p.mul_monomial(multiplier)
                }
                Rule::MulVar { line: j, var } => {
                    let f = earlier(*j)?;
                    if f.degree() >= self.degree as i64 {
                        return Err(fail(i, "multiplied line has full degree"));
                    }
                    let from_axiom = matches!(self.lines[*j].rule, Rule::Axiom { .. } | Rule::AxiomProduct { .. });
                    if self.monomial_only && f.num_terms() > 1 && !from_axiom {
                        return Err(fail(i, "multiplied line is not a monomial"));
                    }
                    f.mul_monomial(&Monomial::var(*var))
                }
                Rule::LinComb { terms } => {
                    let mut acc = Polynomial::zero(d);
                    for (j, c) in terms {
                        acc = acc.add(&earlier(*j)?.scale(c))?;
                    }
                    acc
                }
            };
            let got = got.reduce_squares(self.square_rule);
            if got != line.value {
                return Err(fail(i, "stored value does not match the rule"));
            }
            values.push(got);
        }
        Ok(values)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SpanOptions {
    pub square_rule: SquareRule,
    /// Stop once 1 enters the span.
    pub stop_on_refutation: bool,
    /// Upper bound on the basis dimension.
    pub max_basis: usize,
}

impl Default for SpanOptions {
    fn default() -> Self {
        SpanOptions { square_rule: SquareRule::Boolean, stop_on_refutation: true, max_basis: 2_000_000 }
    }
}

/// The degree-`d` span closed under the multiplication rule of PC or
/// monomial-PC. Columns are the multilinear monomials of degree at most `d`
/// in set-variable order, so a row's pivot is its leading term.
pub struct SpanFixpoint {
    domain: CoefficientDomain,
    degree: usize,
    opts: SpanOptions,
    vars: Vec<VariableId>,
    columns: Vec<SetVariable>,
    index: HashMap<SetVariable, u32>,
    basis: EchelonBasis,
    row_line: Vec<usize>,
    lines: Option<Vec<LogLine>>,
}

impl SpanFixpoint {
    fn new(domain: CoefficientDomain, vars: &[VariableId], degree: usize, opts: SpanOptions, track: bool) -> Result<Self> {
        let columns = enumerate_set_variables(vars, degree);
        let index = columns.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let mut vars = vars.to_vec();
        vars.sort();
        vars.dedup();
        Ok(SpanFixpoint { domain, degree, opts, vars, columns, index, basis: EchelonBasis::new(domain)?, row_line: Vec::new(), lines: track.then(Vec::new) })
    }

    fn to_vec(&self, p: &Polynomial) -> Result<Option<SparseVec>> {
        let p = p.reduce_squares(self.opts.square_rule);
        let mut out = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            match self.index.get(&m.support()) {
                Some(&i) => out.push((i, c.clone())),
                None if m.degree() as usize > self.degree => return Ok(None),
                None => return Err(Error::invalid(format!("monomial over unknown variables: {m:?}"))),
            }
        }
        Ok(Some(sparse_from_unsorted(self.domain, out)))
    }

    fn to_poly(&self, v: &[(u32, Scalar)]) -> Polynomial {
        Polynomial::from_terms(self.domain, v.iter().map(|(i, c)| (self.columns[*i as usize].to_monomial(), c.clone())))
    }

    fn mul_var(&self, v: &[(u32, Scalar)], x: VariableId) -> SparseVec {
        let entries = v.iter().map(|(i, c)| {
            let s = &self.columns[*i as usize];
            let t = if !s.contains(x) {
                s.with(x)
            } else {
                match self.opts.square_rule {
                    SquareRule::Boolean => s.clone(),
                    SquareRule::Sign => SetVariable::new(s.vars().iter().copied().filter(|&y| y != x)),
                }
            };
            (self.index[&t], c.clone())
        });
        sparse_from_unsorted(self.domain, entries.collect::<Vec<_>>())
    }

    fn log(&mut self, rule: Rule, value: Polynomial) -> usize {
        let lines = self.lines.as_mut().expect("tracking");
        lines.push(LogLine { rule, value });
        lines.len() - 1
    }

    /// Adds a derived vector; returns whether the span grew.
    fn add(&mut self, v: SparseVec, rule: impl FnOnce() -> Rule) -> Result<bool> {
        let d = self.domain;
        if self.lines.is_none() {
            let rem = self.basis.reduce(&v);
            if rem.is_empty() {
                return Ok(false);
            }
            self.basis.push_reduced(rem);
        } else {
            let red = self.basis.reduce_tracked(&v);
            if red.remainder.is_empty() {
                return Ok(false);
            }
            let line = self.log(rule(), self.to_poly(&v));
            let inv = d.inv(&red.remainder.last().expect("nonzero").1)?;
            let mut terms = vec![(line, inv.clone())];
            terms.extend(red.combination.iter().map(|(r, c)| (self.row_line[*r], d.neg(&d.mul(c, &inv)))));
            let row = self.basis.push_reduced(red.remainder);
            let value = self.to_poly(self.basis.row(row));
            let lc = self.log(Rule::LinComb { terms }, value);
            self.row_line.push(lc);
        }
        if self.basis.len() > self.opts.max_basis {
            return Err(Error::BudgetExceeded(format!("span dimension above {}", self.opts.max_basis)));
        }
        Ok(true)
    }

    /// Whether the constant 1 lies in the span.
    pub fn refutes(&self) -> bool {
        self.basis.row_with_pivot(0).is_some()
    }

    fn done(&self) -> bool {
        self.opts.stop_on_refutation && self.refutes()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Membership of an arbitrary polynomial, after the square rule.
    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        self.domain.check_same(&p.domain())?;
        Ok(match self.to_vec(p)? {
            Some(v) => self.basis.contains(&v),
            None => false,
        })
    }

    fn run_pc(&mut self, axioms: &[Polynomial]) -> Result<()> {
        for (i, p) in axioms.iter().enumerate() {
            if p.is_zero() || p.degree() as usize > self.degree {
                continue;
            }
            let v = self.to_vec(p)?.expect("degree checked");
            self.add(v, || Rule::Axiom { axiom: i })?;
            if self.done() {
                return Ok(());
            }
        }
        let mut next = 0;
        while next < self.basis.len() {
            let r = next;
            next += 1;
            if self.columns[self.basis.pivot(r) as usize].len() >= self.degree {
                continue;
            }
            let row = self.basis.row(r).clone();
            for x in self.vars.clone() {
                let v = self.mul_var(&row, x);
                let line = self.row_line.get(r).copied().unwrap_or(0);
                self.add(v, || Rule::MulVar { line, var: x })?;
                if self.done() {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    fn run_monomial_pc(&mut self, axioms: &[Polynomial]) -> Result<()> {
        let lifted = lift_within_degree(axioms, &self.vars, self.degree);
        for (p, (i, m)) in lifted.polys.iter().zip(&lifted.origins) {
            let v = self.to_vec(p)?.expect("degree checked");
            self.add(v, || Rule::AxiomProduct { axiom: *i, multiplier: m.clone() })?;
            if self.done() {
                return Ok(());
            }
        }
        let low: Vec<u32> = (0..self.columns.len() as u32).filter(|&c| self.columns[c as usize].len() < self.degree).collect();
        let mut expanded = vec![false; low.len()];
        loop {
            let mut grew = false;
            for (k, &c) in low.iter().enumerate() {
                if expanded[k] {
                    continue;
                }
                let unit = vec![(c, self.domain.one())];
                let red = self.basis.reduce_tracked(&unit);
                if !red.remainder.is_empty() {
                    continue;
                }
                expanded[k] = true;
                let line = if self.lines.is_some() {
                    let terms = red.combination.iter().map(|(r, a)| (self.row_line[*r], a.clone())).collect();
                    self.log(Rule::LinComb { terms }, self.to_poly(&unit))
                } else {
                    0
                };
                for x in self.vars.clone() {
                    let v = self.mul_var(&unit, x);
                    grew |= self.add(v, || Rule::MulVar { line, var: x })?;
                    if self.done() {
                        return Ok(());
                    }
                }
            }
            if !grew {
                return Ok(());
            }
        }
    }

    /// The log restricted to the lines the final row depends on.
    fn refutation_log(&self, monomial_only: bool) -> Option<DerivationLog> {
        let lines = self.lines.as_ref()?;
        let last = self.row_line[self.basis.row_with_pivot(0)?];
        let mut keep = vec![false; last + 1];
        keep[last] = true;
        for i in (0..=last).rev() {
            if !keep[i] {
                continue;
            }
            match &lines[i].rule {
                Rule::MulVar { line, .. } => keep[*line] = true,
                Rule::LinComb { terms } => terms.iter().for_each(|(j, _)| keep[*j] = true),
                _ => {}
            }
        }
        let mut renumber = vec![usize::MAX; last + 1];
        let mut out = Vec::new();
        for i in 0..=last {
            if !keep[i] {
                continue;
            }
            renumber[i] = out.len();
            let rule = match &lines[i].rule {
                Rule::MulVar { line, var } => Rule::MulVar { line: renumber[*line], var: *var },
                Rule::LinComb { terms } => Rule::LinComb { terms: terms.iter().map(|(j, c)| (renumber[*j], c.clone())).collect() },
                r => r.clone(),
            };
            out.push(LogLine { rule, value: lines[i].value.clone() });
        }
        Some(DerivationLog { domain: self.domain, degree: self.degree, monomial_only, square_rule: self.opts.square_rule, lines: out })
    }
}

fn check_inputs(axioms: &[Polynomial], d: usize, domain: CoefficientDomain) -> Result<()> {
    domain.require_field()?;
    for p in axioms {
        domain.check_same(&p.domain())?;
    }
    let min = axioms.iter().filter(|p| !p.is_zero()).map(|p| p.degree()).min().unwrap_or(0).max(0) as usize;
    if d == 0 || min > d {
        return Err(Error::DegreeTooSmall { degree: d, required: min.max(1) });
    }
    Ok(())
}

/// Computes the closed span without deciding anything.
pub fn pc_span(
    axioms: &[Polynomial],
    vars: &[VariableId],
    d: usize,
    domain: CoefficientDomain,
    opts: SpanOptions,
    monomial_only: bool,
) -> Result<SpanFixpoint> {
    check_inputs(axioms, d, domain)?;
    let mut span = SpanFixpoint::new(domain, vars, d, opts, false)?;
    if monomial_only {
        span.run_monomial_pc(axioms)?;
    } else {
        span.run_pc(axioms)?;
    }
    Ok(span)
}

fn decide(axioms: &[Polynomial], vars: &[VariableId], d: usize, domain: CoefficientDomain, opts: SpanOptions, monomial_only: bool) -> Result<ProverVerdict> {
    let opts = SpanOptions { stop_on_refutation: true, ..opts };
    let kind = if monomial_only { ProverKind::MonomialPc } else { ProverKind::Pc };
    let span = pc_span(axioms, vars, d, domain, opts, monomial_only)?;
    let outcome = if !span.refutes() {
        Outcome::NotRefuted(Witness::Fixpoint { basis_size: span.dimension() })
    } else {
        // rerun with provenance only when a log is needed
        let mut tracked = SpanFixpoint::new(domain, vars, d, opts, true)?;
        if monomial_only {
            tracked.run_monomial_pc(axioms)?;
        } else {
            tracked.run_pc(axioms)?;
        }
        let log = tracked.refutation_log(monomial_only).ok_or_else(|| Error::Internal("tracked rerun did not reach 1".into()))?;
        log.replay(axioms)?;
        Outcome::Refuted(Evidence::Derivation(log))
    };
    Ok(ProverVerdict { kind, degree: d, domain, outcome })
}

/// Degree-`d` polynomial calculus over a field. Axioms above degree `d` are
/// unusable and ignored.
pub fn pc_decide(axioms: &[Polynomial], vars: &[VariableId], d: usize, domain: CoefficientDomain) -> Result<ProverVerdict> {
    decide(axioms, vars, d, domain, SpanOptions::default(), false)
}

pub fn pc_decide_with(axioms: &[Polynomial], vars: &[VariableId], d: usize, domain: CoefficientDomain, opts: SpanOptions) -> Result<ProverVerdict> {
    decide(axioms, vars, d, domain, opts, false)
}

/// Degree-`d` monomial-PC: only monomials and axiom products are multiplied.
pub fn monomial_pc_decide(axioms: &[Polynomial], vars: &[VariableId], d: usize, domain: CoefficientDomain) -> Result<ProverVerdict> {
    decide(axioms, vars, d, domain, SpanOptions::default(), true)
}

pub fn monomial_pc_decide_with(axioms: &[Polynomial], vars: &[VariableId], d: usize, domain: CoefficientDomain, opts: SpanOptions) -> Result<ProverVerdict> {
    decide(axioms, vars, d, domain, opts, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    fn x(i: u32) -> Polynomial {
        Polynomial::var(Q, VariableId(i))
    }

    fn one() -> Polynomial {
        Polynomial::one(Q)
    }

    fn log_of(v: &ProverVerdict) -> &DerivationLog {
        match &v.outcome {
            Outcome::Refuted(Evidence::Derivation(l)) => l,
            _ => panic!("expected a derivation"),
        }
    }

    #[test]
    fn pigeonhole_two_into_one() {
        // x0 = 1, x1 = 1, x0·x1 = 0
        let axioms = vec![x(0).sub(&one()).unwrap(), x(1).sub(&one()).unwrap(), x(0).mul(&x(1)).unwrap()];
        let vars = [VariableId(0), VariableId(1)];
        for monomial_only in [false, true] {
            let v = decide(&axioms, &vars, 2, Q, SpanOptions::default(), monomial_only).unwrap();
            log_of(&v).replay(&axioms).unwrap();
        }
        assert!(!pc_decide(&axioms, &vars, 1, Q).unwrap().refuted());
    }

    #[test]
    fn linear_contradiction_at_degree_one() {
        // x0 + x1 = 1, x0 = 0, x1 = 0
        let vars: Vec<_> = (0..2).map(VariableId).collect();
        let axioms = vec![x(0).add(&x(1)).unwrap().sub(&one()).unwrap(), x(0), x(1)];
        let pc = pc_decide(&axioms, &vars, 1, Q).unwrap();
        assert!(pc.refuted());
        log_of(&pc).replay(&axioms).unwrap();
    }

    #[test]
    fn tampered_log_is_rejected() {
        let axioms = vec![x(0).sub(&one()).unwrap(), x(0)];
        let v = pc_decide(&axioms, &[VariableId(0)], 1, Q).unwrap();
        let mut log = log_of(&v).clone();
        log.replay(&axioms).unwrap();
        log.lines[0].value = x(0);
        assert!(log.replay(&axioms).is_err());
    }

    #[test]
    fn sign_rule_collapses_squares() {
        // z = 1 and z = −1 under z² = 1
        let z = x(0);
        let axioms = vec![z.sub(&one()).unwrap(), z.add(&one()).unwrap()];
        let opts = SpanOptions { square_rule: SquareRule::Sign, ..SpanOptions::default() };
        let v = pc_decide_with(&axioms, &[VariableId(0)], 2, Q, opts).unwrap();
        assert_eq!(log_of(&v).square_rule, SquareRule::Sign);
        log_of(&v).replay(&axioms).unwrap();
    }

    #[test]
    fn span_membership() {
        let axioms = vec![x(0).sub(&x(1)).unwrap()];
        let vars = [VariableId(0), VariableId(1)];
        let span = pc_span(&axioms, &vars, 2, Q, SpanOptions::default(), false).unwrap();
        // x0·(x0 − x1) = x0 − x0x1 after x² = x
        assert!(span.contains(&x(0).sub(&x(0).mul(&x(1)).unwrap()).unwrap()).unwrap());
        assert!(!span.contains(&x(0)).unwrap());
        assert!(!span.refutes());
    }
}
