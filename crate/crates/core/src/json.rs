//! File formats for polynomial systems, certificates, derivation logs and
//! linearised solutions. Every file carries a `schema` tag; keys are written
//! in sorted order.

use serde::{Deserialize, Serialize};

use crate::algebra::{CoefficientDomain, Monomial, Polynomial, Rational, SetVariable, SquareRule, VariableId};
use crate::error::{Error, Result};
use crate::iso::MlinAssignment;
use crate::provers::{DerivationLog, LogLine, NssCertificate, Rule};

pub const SYSTEM_SCHEMA: &str = "algiso.system.v1";
pub const NSS_SCHEMA: &str = "algiso.nss-certificate.v1";
pub const PC_LOG_SCHEMA: &str = "algiso.pc-log.v1";
pub const MLIN_SCHEMA: &str = "algiso.mlin-solution.v1";
pub const INTEGER_SCHEMA: &str = "algiso.integer-infeasibility.v1";

/// Serialises through a `serde_json::Value`, whose maps keep keys sorted.
pub fn to_sorted_string<T: Serialize>(t: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(&serde_json::to_value(t)?)?)
}

/// A monomial lists each variable once per unit of exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub vars: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

fn monomial_vars(m: &Monomial) -> Vec<u32> {
    m.exponents().iter().flat_map(|&(v, e)| std::iter::repeat_n(v.0, e as usize)).collect()
}

impl PolyJson {
    pub fn from_polynomial(p: &Polynomial) -> Self {
        let d = p.domain();
        let terms = p.terms().map(|(m, c)| TermJson { vars: monomial_vars(m), coeff: d.format_scalar(c) }).collect();
        PolyJson { terms }
    }

    pub fn to_polynomial(&self, domain: CoefficientDomain) -> Result<Polynomial> {
        let mut p = Polynomial::zero(domain);
        for t in &self.terms {
            p.add_term(Monomial::from_vars(t.vars.iter().map(|&v| VariableId(v))), domain.parse_scalar(&t.coeff)?);
        }
        Ok(p)
    }
}

fn polys(ps: &[PolyJson], domain: CoefficientDomain) -> Result<Vec<Polynomial>> {
    ps.iter().map(|p| p.to_polynomial(domain)).collect()
}

/// Axioms by index; variable `i` is named `variables[i]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemFile {
    pub schema: String,
    pub domain: CoefficientDomain,
    pub variables: Vec<String>,
    pub axioms: Vec<PolyJson>,
}

impl SystemFile {
    pub fn new(domain: CoefficientDomain, variables: Vec<String>, axioms: &[Polynomial]) -> Self {
        SystemFile { schema: SYSTEM_SCHEMA.into(), domain, variables, axioms: axioms.iter().map(PolyJson::from_polynomial).collect() }
    }

    pub fn polynomials(&self) -> Result<Vec<Polynomial>> {
        check_schema(&self.schema, SYSTEM_SCHEMA)?;
        let ps = polys(&self.axioms, self.domain)?;
        let n = self.variables.len() as u32;
        if ps.iter().flat_map(|p| p.variables()).any(|v| v.0 >= n) {
            return Err(Error::invalid("axiom uses an undeclared variable"));
        }
        Ok(ps)
    }

    pub fn vars(&self) -> Vec<VariableId> {
        (0..self.variables.len() as u32).map(VariableId).collect()
    }
}

fn check_schema(got: &str, want: &str) -> Result<()> {
    if got != want {
        return Err(Error::invalid(format!("schema {got:?}, expected {want:?}")));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AxiomCoefficient {
    pub axiom: usize,
    pub poly: PolyJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VariableCoefficient {
    pub var: u32,
    pub poly: PolyJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NssFile {
    pub domain: CoefficientDomain,
    pub degree: usize,
    pub f: Vec<AxiomCoefficient>,
    pub g: Vec<VariableCoefficient>,
}

impl NssFile {
    pub fn from_certificate(c: &NssCertificate) -> Self {
        NssFile {
            domain: c.domain,
            degree: c.degree,
            f: c.f.iter().map(|(i, p)| AxiomCoefficient { axiom: *i, poly: PolyJson::from_polynomial(p) }).collect(),
            g: c.g.iter().map(|(x, p)| VariableCoefficient { var: x.0, poly: PolyJson::from_polynomial(p) }).collect(),
        }
    }

    pub fn to_certificate(&self) -> Result<NssCertificate> {
        let d = self.domain;
        Ok(NssCertificate {
            domain: d,
            degree: self.degree,
            f: self.f.iter().map(|e| Ok((e.axiom, e.poly.to_polynomial(d)?))).collect::<Result<_>>()?,
            g: self.g.iter().map(|e| Ok((VariableId(e.var), e.poly.to_polynomial(d)?))).collect::<Result<_>>()?,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CombTerm {
    pub line: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum RuleJson {
    Axiom { axiom: usize },
    AxiomProduct { axiom: usize, multiplier: Vec<u32> },
    MulVar { line: usize, var: u32 },
    LinComb { terms: Vec<CombTerm> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineJson {
    #[serde(flatten)]
    pub rule: RuleJson,
    pub value: PolyJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PcLogFile {
    pub domain: CoefficientDomain,
    pub degree: usize,
    pub monomial_only: bool,
    /// `boolean` (`x² = x`) or `sign` (`x² = 1`).
    pub square_rule: String,
    pub lines: Vec<LineJson>,
}

impl PcLogFile {
    pub fn from_log(log: &DerivationLog) -> Self {
        let d = log.domain;
        let lines = log
            .lines
            .iter()
            .map(|l| {
                let rule = match &l.rule {
                    Rule::Axiom { axiom } => RuleJson::Axiom { axiom: *axiom },
                    Rule::AxiomProduct { axiom, multiplier } => RuleJson::AxiomProduct { axiom: *axiom, multiplier: monomial_vars(multiplier) },
                    Rule::MulVar { line, var } => RuleJson::MulVar { line: *line, var: var.0 },
                    Rule::LinComb { terms } => {
                        RuleJson::LinComb { terms: terms.iter().map(|(j, c)| CombTerm { line: *j, coeff: d.format_scalar(c) }).collect() }
                    }
                };
                LineJson { rule, value: PolyJson::from_polynomial(&l.value) }
            })
            .collect();
        let square_rule = match log.square_rule {
            SquareRule::Boolean => "boolean",
            SquareRule::Sign => "sign",
        };
        PcLogFile { domain: d, degree: log.degree, monomial_only: log.monomial_only, square_rule: square_rule.into(), lines }
    }

    pub fn to_log(&self) -> Result<DerivationLog> {
        let d = self.domain;
        let square_rule = match self.square_rule.as_str() {
            "boolean" => SquareRule::Boolean,
            "sign" => SquareRule::Sign,
            s => return Err(Error::invalid(format!("unknown square rule {s:?}"))),
        };
        let lines = self
            .lines
            .iter()
            .map(|l| {
                let rule = match &l.rule {
                    RuleJson::Axiom { axiom } => Rule::Axiom { axiom: *axiom },
                    RuleJson::AxiomProduct { axiom, multiplier } => {
                        Rule::AxiomProduct { axiom: *axiom, multiplier: Monomial::from_vars(multiplier.iter().map(|&v| VariableId(v))) }
                    }
                    RuleJson::MulVar { line, var } => Rule::MulVar { line: *line, var: VariableId(*var) },
                    RuleJson::LinComb { terms } => {
                        Rule::LinComb { terms: terms.iter().map(|t| Ok((t.line, d.parse_scalar(&t.coeff)?))).collect::<Result<_>>()? }
                    }
                };
                Ok(LogLine { rule, value: l.value.to_polynomial(d)? })
            })
            .collect::<Result<_>>()?;
        Ok(DerivationLog { domain: d, degree: self.degree, monomial_only: self.monomial_only, square_rule, lines })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetValue {
    pub vars: Vec<u32>,
    pub value: String,
}

/// Values of the linearised variables `X_S`; unlisted sets are 0. With
/// `downward_zero`, a zero on `S` must force zeros on every superset.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MlinFile {
    pub domain: CoefficientDomain,
    pub degree: usize,
    pub downward_zero: bool,
    pub values: Vec<SetValue>,
}

impl MlinFile {
    pub fn from_assignment(a: &MlinAssignment, degree: usize, downward_zero: bool) -> Self {
        let values = a
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(s, v)| SetValue { vars: s.vars().iter().map(|x| x.0).collect(), value: a.domain.format_scalar(v) })
            .collect();
        MlinFile { domain: a.domain, degree, downward_zero, values }
    }

    pub fn to_assignment(&self) -> Result<MlinAssignment> {
        let mut a = MlinAssignment::new(self.domain);
        for sv in &self.values {
            a.set(SetVariable::new(sv.vars.iter().map(|&v| VariableId(v))), self.domain.parse_scalar(&sv.value)?)?;
        }
        Ok(a)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightJson {
    pub row: usize,
    pub weight: String,
}

/// Rows of the presolved integer system whose combination has integral
/// coefficients and a fractional right-hand side.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntegerFile {
    pub degree: usize,
    pub residual_rows: usize,
    pub y: Vec<WeightJson>,
}

impl IntegerFile {
    pub fn new(degree: usize, inf: &crate::algebra::IntegerInfeasibility) -> Self {
        IntegerFile { degree, residual_rows: inf.residual_rows, y: inf.y.iter().map(|(r, w)| WeightJson { row: *r, weight: w.to_string() }).collect() }
    }

    pub fn weights(&self) -> Result<Vec<(usize, Rational)>> {
        self.y.iter().map(|w| Ok((w.row, w.weight.parse().map_err(|_| Error::ScalarParse(w.weight.clone()))?))).collect()
    }
}

/// Any certificate or solution file, tagged by its schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "schema")]
pub enum Artifact {
    #[serde(rename = "algiso.nss-certificate.v1")]
    Nss(NssFile),
    #[serde(rename = "algiso.pc-log.v1")]
    PcLog(PcLogFile),
    #[serde(rename = "algiso.mlin-solution.v1")]
    Mlin(MlinFile),
    #[serde(rename = "algiso.integer-infeasibility.v1")]
    Integer(IntegerFile),
}

impl Artifact {
    pub fn from_json_str(s: &str) -> Result<Artifact> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> Result<String> {
        to_sorted_string(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    #[test]
    fn polynomial_round_trip_keeps_exponents() {
        let (x, y) = (VariableId(0), VariableId(3));
        let p = Polynomial::from_terms(Q, [(Monomial::from_exponents([(x, 2), (y, 1)]), Q.parse_scalar("-1/2").unwrap()), (Monomial::one(), Q.one())]);
        let j = PolyJson::from_polynomial(&p);
        assert!(j.terms.iter().any(|t| t.vars == vec![0, 0, 3] && t.coeff == "-1/2"));
        assert_eq!(j.to_polynomial(Q).unwrap(), p);
    }

    #[test]
    fn artifact_schema_tag() {
        let a = Artifact::Mlin(MlinFile { domain: Q, degree: 2, downward_zero: true, values: vec![SetValue { vars: vec![], value: "1".into() }] });
        let s = a.to_json_string().unwrap();
        assert!(s.contains(MLIN_SCHEMA));
        let keys: Vec<usize> = ["\"degree\"", "\"domain\"", "\"downward_zero\"", "\"schema\"", "\"values\""].iter().map(|k| s.find(k).unwrap()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(Artifact::from_json_str(&s).unwrap(), Artifact::Mlin(_)));
        assert!(Artifact::from_json_str(r#"{"schema":"nope"}"#).is_err());
    }
}
