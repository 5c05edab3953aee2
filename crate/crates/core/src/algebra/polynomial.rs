use std::collections::BTreeMap;

use super::domain::{CoefficientDomain, Scalar};
use super::monomial::{Monomial, SetVariable, VariableId, VariableRegistry};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are kept in a map keyed by monomial (graded-lex ordered); zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    domain: CoefficientDomain,
    terms: BTreeMap<Monomial, Scalar>,
}

/// How squares collapse when a polynomial is reduced to multilinear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareRule {
    /// `x² = x` (0/1 variables)
    Boolean,
    /// `x² = 1` (±1 variables)
    Sign,
}

impl Polynomial {
    pub fn zero(domain: CoefficientDomain) -> Self {
        Polynomial { domain, terms: BTreeMap::new() }
    }

    pub fn constant(domain: CoefficientDomain, c: Scalar) -> Self {
        let mut p = Self::zero(domain);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(domain: CoefficientDomain) -> Self {
        Self::constant(domain, domain.one())
    }

    pub fn var(domain: CoefficientDomain, v: VariableId) -> Self {
        Self::monomial(domain, Monomial::var(v), domain.one())
    }

    pub fn monomial(domain: CoefficientDomain, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(domain);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(domain: CoefficientDomain, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(domain);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_int_terms(domain: CoefficientDomain, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        Self::from_terms(domain, terms.into_iter().map(|(m, c)| (m, domain.from_i64(c))))
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.domain.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| self.domain.is_one(c))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().next_back().map_or(-1, |m| m.degree() as i64)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn variables(&self) -> Vec<VariableId> {
        let mut v: Vec<VariableId> = self.terms.keys().flat_map(|m| m.vars()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = self.domain.add(old, &c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.domain.check_same(&other.domain)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { domain: self.domain, terms: self.terms.iter().map(|(m, c)| (m.clone(), self.domain.neg(c))).collect() }
    }

    pub fn scale(&self, a: &Scalar) -> Polynomial {
        if a.is_zero() {
            return Polynomial::zero(self.domain);
        }
        let mut out = Polynomial::zero(self.domain);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), self.domain.mul(c, a));
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { domain: self.domain, terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.domain.check_same(&other.domain)?;
        let mut out = Polynomial::zero(self.domain);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.domain.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::one(self.domain);
        for _ in 0..e {
            r = r.mul(self).expect("same domain");
        }
        r
    }

    /// Reinterprets the integer-valued coefficients in another domain.
    pub fn to_domain(&self, target: CoefficientDomain) -> Result<Polynomial> {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let c = match c {
                Scalar::Q(r) => target.from_rational(r)?,
                Scalar::Fp(v) => {
                    if target == self.domain {
                        Scalar::Fp(*v)
                    } else {
                        return Err(Error::DomainMismatch(self.domain, target));
                    }
                }
            };
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    /// Collapses every exponent according to `rule`; the result is multilinear.
    pub fn reduce_squares(&self, rule: SquareRule) -> Polynomial {
        let mut out = Polynomial::zero(self.domain);
        for (m, c) in &self.terms {
            let reduced = match rule {
                SquareRule::Boolean => m.support().to_monomial(),
                SquareRule::Sign => Monomial::from_exponents(m.exponents().iter().filter(|&&(_, e)| e % 2 == 1).map(|&(v, _)| (v, 1))),
            };
            out.add_term(reduced, c.clone());
        }
        out
    }

    /// The multilinear image: monomial ↦ set-variable of its support.
    pub fn multilinear_terms(&self) -> BTreeMap<SetVariable, Scalar> {
        let mut out: BTreeMap<SetVariable, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.support();
            let entry = out.entry(key).or_insert_with(|| self.domain.zero());
            *entry = self.domain.add(entry, c);
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Substitutes polynomials for variables; unmapped variables stay put.
    pub fn substitute(&self, map: &dyn Fn(VariableId) -> Option<Polynomial>) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.domain);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(self.domain, c.clone());
            for &(v, e) in m.exponents() {
                let base = match map(v) {
                    Some(p) => p,
                    None => Polynomial::var(self.domain, v),
                };
                term = term.mul(&base.pow(e))?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Evaluates at a point given as a slice indexed by variable id.
    pub fn evaluate(&self, point: &dyn Fn(VariableId) -> Scalar) -> Scalar {
        let d = self.domain;
        let mut acc = d.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.exponents() {
                t = d.mul(&t, &d.pow(&point(v), e));
            }
            acc = d.add(&acc, &t);
        }
        acc
    }

    pub fn display(&self, reg: &VariableRegistry) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if m.is_one() {
                    self.domain.format_scalar(c)
                } else if self.domain.is_one(c) {
                    m.display(reg)
                } else {
                    format!("{}*{}", self.domain.format_scalar(c), m.display(reg))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// An arithmetic expression over polynomials, evaluated by [`poly_combine`].
#[derive(Clone, Debug)]
pub enum PolyExpr {
    Lit(Polynomial),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Scale(Scalar, Box<PolyExpr>),
    MulMonomial(Monomial, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
}

impl PolyExpr {
    pub fn lit(p: Polynomial) -> Self {
        PolyExpr::Lit(p)
    }

    pub fn add(a: PolyExpr, b: PolyExpr) -> Self {
        PolyExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn scale(a: Scalar, p: PolyExpr) -> Self {
        PolyExpr::Scale(a, Box::new(p))
    }

    pub fn mul_monomial(m: Monomial, p: PolyExpr) -> Self {
        PolyExpr::MulMonomial(m, Box::new(p))
    }

    pub fn mul(a: PolyExpr, b: PolyExpr) -> Self {
        PolyExpr::Mul(Box::new(a), Box::new(b))
    }
}

/// Evaluates a combination of polynomial operations exactly.
pub fn poly_combine(expr: &PolyExpr) -> Result<Polynomial> {
    match expr {
        PolyExpr::Lit(p) => Ok(p.clone()),
        PolyExpr::Add(a, b) => poly_combine(a)?.add(&poly_combine(b)?),
        PolyExpr::Scale(a, p) => {
            let p = poly_combine(p)?;
            if !p.domain().contains(a) {
                return Err(Error::invalid(format!("scalar {a} is not an element of {}", p.domain())));
            }
            Ok(p.scale(a))
        }
        PolyExpr::MulMonomial(m, p) => Ok(poly_combine(p)?.mul_monomial(m)),
        PolyExpr::Mul(a, b) => poly_combine(a)?.mul(&poly_combine(b)?),
    }
}
