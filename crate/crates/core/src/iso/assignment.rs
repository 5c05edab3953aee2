use std::collections::BTreeMap;

use crate::algebra::{CoefficientDomain, LinearSystem, Scalar, SetVariable};
use crate::error::{Error, Result};

use super::system::PairVariableSpace;

/// Values for set-variables; the empty set-variable is always 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MlinAssignment {
    pub domain: CoefficientDomain,
    values: BTreeMap<SetVariable, Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssignmentCheck {
    Ok,
    /// Index of the first violated row.
    ViolatedRow(usize),
    /// `α(π) = 0` but `α(ρ) ≠ 0` for `π ⊂ ρ`.
    ViolatedPair(SetVariable, SetVariable),
}

impl AssignmentCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, AssignmentCheck::Ok)
    }
}

impl MlinAssignment {
    pub fn new(domain: CoefficientDomain) -> Self {
        let mut values = BTreeMap::new();
        values.insert(SetVariable::empty(), domain.one());
        MlinAssignment { domain, values }
    }

    pub fn set(&mut self, s: SetVariable, v: Scalar) -> Result<()> {
        if s.is_empty() && !self.domain.is_one(&v) {
            return Err(Error::invalid("the empty set-variable must be 1"));
        }
        self.values.insert(s, v);
        Ok(())
    }

    pub fn get(&self, s: &SetVariable) -> Option<&Scalar> {
        self.values.get(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SetVariable, &Scalar)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Reads a column solution of `s`.
    pub fn from_solution(s: &LinearSystem, x: &[Scalar]) -> Self {
        let mut a = MlinAssignment::new(s.domain());
        for (c, v) in s.columns().iter().zip(x) {
            a.values.insert(c.clone(), v.clone());
        }
        a
    }

    /// The product assignment of a bijection `f`: `α(X_π) = 1` iff every
    /// pair of `π` lies on the graph of `f`.
    pub fn from_bijection(space: &PairVariableSpace, f: &[usize], columns: &[SetVariable], domain: CoefficientDomain) -> Self {
        let mut a = MlinAssignment::new(domain);
        for c in columns {
            let on = c.vars().iter().all(|&x| {
                let (v, w) = space.pair(x);
                f[v] == w
            });
            a.values.insert(c.clone(), if on { domain.one() } else { domain.zero() });
        }
        a
    }

    /// Column values for `s`, failing on any unassigned column.
    pub fn column_values(&self, s: &LinearSystem) -> Result<Vec<Scalar>> {
        s.columns().iter().map(|c| self.values.get(c).cloned().ok_or_else(|| Error::invalid(format!("no value for column {c:?}")))).collect()
    }

    /// Converts every value into another domain.
    pub fn to_domain(&self, d: CoefficientDomain) -> Result<MlinAssignment> {
        let mut out = MlinAssignment::new(d);
        for (k, v) in &self.values {
            let v = match v {
                Scalar::Q(r) => d.from_rational(r)?,
                Scalar::Fp(_) if d == self.domain => v.clone(),
                Scalar::Fp(_) => return Err(Error::DomainMismatch(self.domain, d)),
            };
            out.values.insert(k.clone(), v);
        }
        Ok(out)
    }
}

/// Checks every row of `s`, and optionally the downward-zero implication
/// over all comparable pairs of columns.
pub fn verify_assignment(alpha: &MlinAssignment, s: &LinearSystem, downward_zero: bool) -> Result<AssignmentCheck> {
    alpha.domain.check_same(&s.domain())?;
    let x = alpha.column_values(s)?;
    if let Some(i) = s.check_solution(&x)? {
        return Ok(AssignmentCheck::ViolatedRow(i));
    }
    if downward_zero {
        for (c, v) in s.columns().iter().zip(&x) {
            if v.is_zero() {
                continue;
            }
            let k = c.len();
            for mask in 1..(1u64 << k) - 1 {
                let sub = SetVariable::new(c.vars().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
                if let Some(j) = s.column_index(&sub) {
                    if x[j as usize].is_zero() {
                        return Ok(AssignmentCheck::ViolatedPair(sub, c.clone()));
                    }
                }
            }
        }
    }
    Ok(AssignmentCheck::Ok)
}
